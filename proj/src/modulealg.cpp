#include "stlat/modulealg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stlat {

void k_axpy(const FiniteField& K, KVec& y, FiniteField::Elem c, const KVec& x, std::size_t from) {
    if (c == 0) return;
    const std::size_t n = y.size();
    std::uint8_t* py = y.data();
    const std::uint8_t* px = x.data();
    if (K.characteristic() == 2) {
        if (c == 1) {
            for (std::size_t i = from; i < n; ++i) py[i] ^= px[i];
            return;
        }
        const FiniteField::Elem* mr = K.mul_row(c);
        for (std::size_t i = from; i < n; ++i)
            if (px[i]) py[i] ^= static_cast<std::uint8_t>(mr[px[i]]);
        return;
    }
    const FiniteField::Elem* mr = K.mul_row(c);
    for (std::size_t i = from; i < n; ++i)
        if (px[i]) py[i] = static_cast<std::uint8_t>(K.add(py[i], mr[px[i]]));
}

bool k_is_zero(const KVec& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

// ---------------------------------------------------------------- Subspace

KVec Subspace::reduce(KVec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (v[p]) k_axpy(*K_, v, K_->neg(v[p]), rows_[k], p);
    }
    return v;
}

bool Subspace::contains(const Subspace& other) const {
    for (const KVec& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

std::optional<std::size_t> Subspace::add(const KVec& v) {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::add: wrong length");
    KVec r = reduce(v);
    std::size_t p = 0;
    while (p < r.size() && r[p] == 0) ++p;
    if (p == r.size()) return std::nullopt;
    if (r[p] != 1) {
        const FiniteField::Elem* mr = K_->mul_row(K_->inv(r[p]));
        for (std::size_t i = p; i < r.size(); ++i) r[i] = static_cast<std::uint8_t>(mr[r[i]]);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return rows_.size() - 1;
}

Subspace Subspace::sum(const Subspace& other) const {
    Subspace s = *this;
    for (const KVec& r : other.rows_) s.add(r);
    return s;
}

std::vector<KVec> Subspace::rref() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<KVec> out;
    std::vector<std::size_t> piv;
    for (std::size_t k : order) {
        out.push_back(rows_[k]);
        piv.push_back(pivots_[k]);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j)
            if (j != i && out[j][piv[i]]) k_axpy(*K_, out[j], K_->neg(out[j][piv[i]]), out[i], piv[i]);
    return out;
}

SparseKMatrix reduce_mod_ell(const SparseIntMatrix& m, const FiniteField& K) {
    const long long ell = K.characteristic();
    SparseKMatrix r;
    r.dim = m.dim;
    r.cols.resize(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j)
        for (auto [row, c] : m.cols[j]) {
            long long v = ((c % ell) + ell) % ell;
            if (v) r.cols[j].emplace_back(row, static_cast<std::uint8_t>(v));
        }
    return r;
}

// ----------------------------------------------------------------- KModule

KModule::KModule(const FiniteField& K, std::size_t dim, std::vector<SparseKMatrix> gens, std::vector<Character> chars,
                 std::vector<KVec> eigen)
    : K_(&K), dim_(dim), gens_(std::move(gens)), chars_(std::move(chars)), eigen_(std::move(eigen)) {
    if (chars_.size() != eigen_.size()) throw std::invalid_argument("KModule: one eigenvector per character");
    for (const auto& g : gens_)
        if (g.dim != dim_) throw std::invalid_argument("KModule: generator of wrong size");
    for (const auto& v : eigen_)
        if (v.size() != dim_) throw std::invalid_argument("KModule: eigenvector of wrong size");
}

KVec KModule::apply(const SparseKMatrix& g, const KVec& v) const {
    KVec y(dim_, 0);
    const bool two = K_->characteristic() == 2;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (!v[j]) continue;
        const FiniteField::Elem* mr = K_->mul_row(v[j]);
        for (auto [r, a] : g.cols[j]) {
            auto t = static_cast<std::uint8_t>(mr[a]);
            y[r] = two ? static_cast<std::uint8_t>(y[r] ^ t) : static_cast<std::uint8_t>(K_->add(y[r], t));
        }
    }
    return y;
}

Subspace KModule::whole() const {
    Subspace W(*K_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        KVec v(dim_, 0);
        v[i] = 1;
        W.add(v);
    }
    return W;
}

Subspace KModule::span(const std::vector<KVec>& vs) const {
    Subspace W(*K_, dim_);
    for (const KVec& v : vs) W.add(v);
    return W;
}

Subspace KModule::spin(const std::vector<KVec>& seeds, const Subspace* base) const {
    Subspace W = base ? *base : zero();
    const std::size_t start = W.dim();
    for (const KVec& s : seeds) W.add(s);
    for (std::size_t next = start; next < W.dim() && W.dim() < dim_; ++next) {
        const KVec v = W.rows()[next];
        for (const auto& g : gens_) {
            W.add(apply(g, v));
            if (W.dim() == dim_) break;
        }
    }
    return W;
}

bool KModule::is_submodule(const Subspace& W) const {
    for (const KVec& r : W.rows())
        for (const auto& g : gens_)
            if (!W.contains(apply(g, r))) return false;
    return true;
}

std::optional<KVec> KModule::eigenvector(const Subspace& top, const Subspace& bottom, std::size_t k) const {
    const KVec& v = eigen_.at(k);
    if (top.contains(v) && !bottom.contains(v)) return v;
    return std::nullopt;
}

std::vector<std::size_t> KModule::present(const Subspace& top, const Subspace& bottom) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < eigen_.size(); ++k)
        if (eigenvector(top, bottom, k)) out.push_back(k);
    return out;
}

bool KModule::is_irreducible(const Subspace& top, const Subspace& bottom) const {
    if (top.dim() == bottom.dim()) throw std::invalid_argument("is_irreducible: zero module");
    auto ks = present(top, bottom);
    if (ks.empty()) return false;
    for (std::size_t k : ks)
        if (spin({eigen_[k]}, &bottom).dim() != top.dim()) return false;
    return true;
}

// ---------------------------------------------------------- SectionLattice

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

SectionLattice::SectionLattice(const KModule& M, const Subspace& top, const Subspace& bottom, unsigned threads)
    : M_(&M), top_(top), bottom_(bottom), chars_(M.present(top, bottom)) {
    const std::size_t k = chars_.size();
    std::vector<Subspace> spins(k, M.zero());
    parallel_for(k, threads, [&](std::size_t a) { spins[a] = M.spin({M.eigenvector_of(chars_[a])}, &bottom_); });
    reach_.assign(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) reach_[a][b] = a == b || spins[a].contains(M.eigenvector_of(chars_[b]));
    finalize();
}

SectionLattice::SectionLattice(const KModule& M, const Subspace& top, const Subspace& bottom,
                               std::vector<std::size_t> chars, std::vector<std::vector<bool>> reach)
    : M_(&M), top_(top), bottom_(bottom), chars_(std::move(chars)), reach_(std::move(reach)) {
    finalize();
}

void SectionLattice::finalize() {
    const std::size_t k = chars_.size();
    // reach_ is transitive (it comes from containments of submodules), so
    // classes are the mutual-reach blocks.
    class_of_.assign(k, -1);
    std::vector<std::vector<std::size_t>> cls;
    for (std::size_t a = 0; a < k; ++a) {
        if (class_of_[a] >= 0) continue;
        std::vector<std::size_t> c;
        for (std::size_t b = a; b < k; ++b)
            if (class_of_[b] < 0 && reach_[a][b] && reach_[b][a]) c.push_back(b);
        for (std::size_t b : c) class_of_[b] = static_cast<int>(cls.size());
        cls.push_back(std::move(c));
    }
    // Bottom-up: a class comes after every class it reaches. Sorting by the
    // number of characters reached gives a linear extension.
    std::vector<std::size_t> below(cls.size(), 0);
    for (std::size_t A = 0; A < cls.size(); ++A)
        for (std::size_t b = 0; b < k; ++b)
            if (reach_[cls[A][0]][b]) ++below[A];
    std::vector<std::size_t> order(cls.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });
    classes_.clear();
    for (std::size_t A : order) classes_.push_back(cls[A]);
    for (std::size_t A = 0; A < classes_.size(); ++A)
        for (std::size_t a : classes_[A]) class_of_[a] = static_cast<int>(A);
}

Subspace SectionLattice::generated(std::size_t a) const {
    return M_->spin({M_->eigenvector_of(chars_.at(a))}, &bottom_);
}

std::vector<std::size_t> SectionLattice::factor_dims() const {
    std::vector<std::size_t> out;
    Subspace W = bottom_;
    for (const auto& cls : classes_) {
        std::size_t before = W.dim();
        std::vector<KVec> seeds;
        for (std::size_t a : cls) seeds.push_back(M_->eigenvector_of(chars_[a]));
        W = M_->spin(seeds, &W);
        out.push_back(W.dim() - before);
    }
    return out;
}

bool SectionLattice::class_reaches(std::size_t A, std::size_t B) const {
    return reach_[classes_.at(A)[0]][classes_.at(B)[0]];
}

Subspace SectionLattice::submodule_of(const std::vector<std::size_t>& positions) const {
    std::vector<KVec> seeds;
    for (std::size_t a : positions) seeds.push_back(M_->eigenvector_of(chars_.at(a)));
    return M_->spin(seeds, &bottom_);
}

std::vector<std::size_t> SectionLattice::socle_classes() const {
    std::vector<std::size_t> out;
    for (std::size_t A = 0; A < classes_.size(); ++A) {
        bool minimal = true;
        for (std::size_t B = 0; B < classes_.size() && minimal; ++B)
            if (B != A && class_reaches(A, B)) minimal = false;
        if (minimal) out.push_back(A);
    }
    return out;
}

std::vector<std::size_t> SectionLattice::top_classes() const {
    std::vector<std::size_t> out;
    for (std::size_t A = 0; A < classes_.size(); ++A) {
        bool maximal = true;
        for (std::size_t B = 0; B < classes_.size() && maximal; ++B)
            if (B != A && class_reaches(B, A)) maximal = false;
        if (maximal) out.push_back(A);
    }
    return out;
}

Subspace SectionLattice::soc() const {
    std::vector<std::size_t> pos;
    for (std::size_t A : socle_classes()) pos.push_back(classes_[A][0]);
    return submodule_of(pos);
}

// Maximal submodules are the down-sets missing one top class; their
// intersection is generated by everything outside the top classes.
Subspace SectionLattice::rad() const {
    std::vector<bool> is_top(classes_.size(), false);
    for (std::size_t A : top_classes()) is_top[A] = true;
    std::vector<std::size_t> pos;
    for (std::size_t a = 0; a < chars_.size(); ++a)
        if (!is_top[static_cast<std::size_t>(class_of_[a])]) pos.push_back(a);
    return submodule_of(pos);
}

bool SectionLattice::uniserial() const {
    for (std::size_t A = 0; A < classes_.size(); ++A)
        for (std::size_t B = A + 1; B < classes_.size(); ++B)
            if (!class_reaches(A, B) && !class_reaches(B, A)) return false;
    return true;
}

bool SectionLattice::completely_reducible() const {
    for (std::size_t A = 0; A < classes_.size(); ++A)
        for (std::size_t B = 0; B < classes_.size(); ++B)
            if (A != B && class_reaches(A, B)) return false;
    return true;
}

std::size_t SectionLattice::commutant_dim() const {
    const std::size_t n = classes_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B)
            if (A != B && class_reaches(A, B)) parent[find(A)] = find(B);
    std::size_t comps = 0;
    for (std::size_t A = 0; A < n; ++A)
        if (find(A) == A) ++comps;
    return comps;
}

// --------------------------------------------------------- dense commutant

std::size_t commutant_dim_dense(const KModule& M, const Subspace& top, const Subspace& bottom) {
    const FiniteField& K = M.field();
    const std::size_t nb = bottom.dim();
    // Combined semi-echelon basis: bottom rows, then a complement in top.
    Subspace all = bottom;
    for (const KVec& r : top.rows()) all.add(r);
    const std::size_t k = all.dim() - nb;
    if (k > 48) throw BudgetExceeded("commutant_dim_dense: section of dimension " + std::to_string(k), k);
    if (k == 0) return 0;
    std::vector<std::size_t> piv(all.dim());
    for (std::size_t i = 0; i < all.dim(); ++i) {
        std::size_t p = 0;
        while (all.rows()[i][p] == 0) ++p;
        piv[i] = p;
    }
    auto coords = [&](KVec v) {
        std::vector<FiniteField::Elem> c(k, 0);
        for (std::size_t i = 0; i < all.dim(); ++i) {
            FiniteField::Elem a = v[piv[i]];
            if (!a) continue;
            if (i >= nb) c[i - nb] = a;
            k_axpy(K, v, K.neg(a), all.rows()[i], piv[i]);
        }
        if (!k_is_zero(v)) throw std::logic_error("commutant_dim_dense: top is not stable");
        return c;
    };
    // Unknown X (k x k, entry (i, j) at i*k + j); X A = A X for each generator.
    Subspace eqs(K, k * k);
    for (const auto& g : M.generators()) {
        std::vector<std::vector<FiniteField::Elem>> A(k);  // A[j] = column j
        for (std::size_t j = 0; j < k; ++j) A[j] = coords(M.apply(g, all.rows()[nb + j]));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                // sum_t X[i][t] A[t][j] - sum_t A[i][t] X[t][j]
                KVec row(k * k, 0);
                for (std::size_t t = 0; t < k; ++t) {
                    row[i * k + t] = static_cast<std::uint8_t>(K.add(row[i * k + t], A[j][t]));
                    row[t * k + j] = static_cast<std::uint8_t>(K.sub(row[t * k + j], A[t][i]));
                }
                eqs.add(row);
            }
    }
    return k * k - eqs.dim();
}

// ---------------------------------------------------------- ReducedLattice

ReducedLattice::ReducedLattice(const Steinberg& S, unsigned threads) : S_(&S), threads_(threads) {
    const FiniteField& K = S.K();
    std::vector<SparseKMatrix> gens;
    for (const auto& m : S.generator_actions()) gens.push_back(reduce_mod_ell(m, K));
    auto chars = all_characters(S.group());
    std::vector<KVec> eigen;
    for (const auto& lam : chars) eigen.push_back(S.F_lambda(lam));
    M_ = std::make_unique<KModule>(K, S.u_size(), std::move(gens), std::move(chars), std::move(eigen));
    const int b = static_cast<int>(S.context().b);
    for (int c = 0; c <= b + 1; ++c) {
        Lc_.push_back(M_->span(S.L_basis(c)));
        std::set<std::size_t> lv;
        for (std::size_t k = 0; k < M_->characters().size(); ++k)
            if (Lc_.back().contains(M_->eigenvector_of(k))) lv.insert(k);
        level_.push_back(std::move(lv));
    }
}

const Subspace& ReducedLattice::L(int c) const {
    c = std::clamp(c, 0, static_cast<int>(Lc_.size()) - 1);
    return Lc_[static_cast<std::size_t>(c)];
}

const std::set<std::size_t>& ReducedLattice::level_chars(int c) const {
    c = std::clamp(c, 0, static_cast<int>(level_.size()) - 1);
    return level_[static_cast<std::size_t>(c)];
}

std::size_t ReducedLattice::char_index(const Character& lam) const {
    const auto& cs = M_->characters();
    auto it = std::lower_bound(cs.begin(), cs.end(), lam);
    if (it == cs.end() || !(*it == lam)) throw std::invalid_argument("char_index: unknown character");
    return static_cast<std::size_t>(it - cs.begin());
}

const SectionLattice& ReducedLattice::whole() const {
    if (!whole_) whole_ = std::make_unique<SectionLattice>(*M_, L(0), M_->zero(), threads_);
    return *whole_;
}

Subspace ReducedLattice::N_of(const Composition& P) const {
    const int c = static_cast<int>(theta(S_->context(), P));
    const Subspace& base = L(c + 1);
    return M_->spin({M_->eigenvector_of(char_index(canonical_character(P)))}, &base);
}

SectionLattice section_of(const ReducedLattice& RL, const Subspace& top, const Subspace& bottom) {
    const SectionLattice& W = RL.whole();
    const KModule& M = RL.module();
    // Whole-lattice positions of the characters present in top/bottom.
    std::vector<std::size_t> pos, chars;
    for (std::size_t a = 0; a < W.chars().size(); ++a)
        if (M.eigenvector(top, bottom, W.chars()[a])) {
            pos.push_back(a);
            chars.push_back(W.chars()[a]);
        }
    // Bottom is the down-set of characters whose eigenvectors it contains;
    // in the section mu reaches nu iff nu lies in the down-closure of mu
    // together with that down-set, i.e. mu reaches nu in L.
    std::vector<std::vector<bool>> reach(pos.size(), std::vector<bool>(pos.size(), false));
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = 0; j < pos.size(); ++j) reach[i][j] = W.reaches(pos[i], pos[j]);
    return SectionLattice(M, top, bottom, std::move(chars), std::move(reach));
}

// ------------------------------------------------------------------ report

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Reported: return "reported";
    }
    return "?";
}

bool StructureReport::all_pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

const CheckResult* StructureReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

const std::vector<std::string>& structure_check_names() {
    static const std::vector<std::string> names = {
        "form-on-eigenvectors", "closed-form-E",        "U-eigenvectors",     "diagonal-twist",
        "cell-sum-eigenvectors", "gram-invariance",     "filtration-support", "eigenvector-levels",
        "eigenline-count",      "bottom-socle",         "radical-top",        "top-irreducible",
        "inclusion",            "direct-sum",           "star-invariance",    "star-sum",
        "socle-series",         "radical-series",       "uniserial",          "cyclic-terms",
        "composition-series",   "completely-reducible", "multiplicity-free",  "dual-quotient-dims",
        "commutant",            "length-bounds",        "index-scaling",      "eigen-generation",
    };
    return names;
}

namespace {

std::string join_ll(const std::vector<long long>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '}';
    return os.str();
}

// Whole-module positions of the characters in a level set difference.
std::vector<std::size_t> chars_between(const ReducedLattice& RL, int c) {
    std::vector<std::size_t> out;
    for (std::size_t k : RL.level_chars(c))
        if (!RL.level_chars(c + 1).count(k)) out.push_back(k);
    return out;
}

// log_ell [I : I(c)] from a Smith form of the basis of I(c).
long long index_exponent(const Steinberg& S, int c) {
    auto cols = S.I_basis(c);
    ModMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < cols[j].size(); ++r) m.at(r, j) = cols[j][r];
    SnfOptions opt;
    opt.track_T = false;
    SnfResult r = snf_chain(m, S.context().ell, S.ring().precision(), opt);
    return std::accumulate(r.exponents.begin(), r.exponents.end(), 0LL);
}

}  // namespace

StructureReport verify_structure(const Context& ctx, const VerifyOptions& opt) {
    StructureReport rep;
    rep.ctx = ctx;
    BigInt cosets = index_GB(ctx);
    if (cosets > BigInt(opt.coset_budget))
        throw BudgetExceeded("verify: [G:B] = " + cosets.str() + " exceeds the coset budget " +
                                 std::to_string(opt.coset_budget),
                             static_cast<std::uint64_t>(std::min<BigInt>(cosets, BigInt(UINT64_MAX))));
    BigInt dimL = 1;
    for (int i = 0; i < ctx.n * (ctx.n - 1) / 2; ++i) dimL *= ctx.q;
    if (dimL > BigInt(opt.dim_budget))
        throw BudgetExceeded("verify: dim L = " + dimL.str() + " exceeds the dimension budget " +
                                 std::to_string(opt.dim_budget),
                             static_cast<std::uint64_t>(std::min<BigInt>(dimL, BigInt(UINT64_MAX))));

    BigInt kq = ipow(ctx.ell, ctx.f), ring = ipow(ctx.ell, ctx.N);
    if (kq > 256)
        throw BudgetExceeded("verify: residue field of size " + kq.str() + " exceeds 256",
                             static_cast<std::uint64_t>(std::min<BigInt>(kq, BigInt(UINT64_MAX))));
    if (ring >= (BigInt(1) << 31))
        throw BudgetExceeded("verify: ell^precision = " + ring.str() + " does not fit 31 bits",
                             static_cast<std::uint64_t>(std::min<BigInt>(ring, BigInt(UINT64_MAX))));

    Steinberg S(ctx, opt.coset_budget);
    rep.cosets = S.cosets().size();
    rep.dim_L = S.u_size();
    rep.exponents = S.gram().exponents;
    rep.dims = S.filtration_dims();
    VCountReport vc = v_count(ctx);
    rep.pvalues = vc.pvalues;
    rep.V = vc.V;
    rep.star_count = count_star(ctx);

    auto want = [&](const std::string& name) { return opt.checks.empty() || opt.checks.count(name) > 0; };
    auto add = [&](std::string name, CheckStatus st, std::string detail) {
        rep.checks.push_back({std::move(name), st, std::move(detail)});
    };
    auto verdict = [](bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; };

    if (opt.lattice_checks) {
        using Fn = LatticeCheck (*)(const Steinberg&);
        for (Fn fn : {check_form_on_eigenvectors, check_E_closed_form, check_U_eigen, check_diagonal_twist,
                      check_cell_sum_eigen, check_gram_invariance}) {
            LatticeCheck lc = fn(S);
            if (!want(lc.name)) continue;
            std::string detail = lc.detail.empty() ? std::to_string(lc.cases) + " cases" : lc.detail;
            add(lc.name, lc.skipped ? CheckStatus::Skipped : verdict(lc.pass), detail);
        }
    }

    ReducedLattice RL(S, opt.threads);
    const KModule& M = RL.module();
    const SectionLattice& W = RL.whole();
    const GLn& G = S.group();
    const int b = static_cast<int>(ctx.b);
    const auto& chars = M.characters();

    rep.composition_length = W.composition_length();
    {
        auto fd = W.factor_dims();
        for (std::size_t A = 0; A < W.classes().size(); ++A) {
            FactorInfo fi;
            fi.dim = fd[A];
            for (std::size_t a : W.classes()[A]) fi.characters.push_back(character_to_string(G, chars[W.chars()[a]]));
            std::size_t k0 = W.chars()[W.classes()[A][0]];
            for (int c = 0; c <= b; ++c)
                if (RL.level_chars(c).count(k0) && !RL.level_chars(c + 1).count(k0)) fi.level = c;
            rep.factors.push_back(std::move(fi));
        }
    }

    // P-values in ascending order, and the distinct filtration terms.
    std::vector<int> pv;
    for (long long c : rep.pvalues) pv.push_back(static_cast<int>(c));

    if (want("filtration-support")) {
        std::vector<long long> support;
        for (const auto& fdm : rep.dims)
            if (fdm.dim_M > 0) support.push_back(fdm.c);
        add("filtration-support", verdict(support == rep.pvalues),
            "support " + join_ll(support) + ", P-values " + join_ll(rep.pvalues));
    }

    if (want("eigenvector-levels")) {
        std::size_t bad = 0;
        for (std::size_t k = 0; k < chars.size(); ++k) {
            int t = static_cast<int>(theta(ctx, parabolic_of(chars[k])));
            if (!RL.level_chars(t).count(k) || RL.level_chars(t + 1).count(k)) ++bad;
        }
        add("eigenvector-levels", verdict(bad == 0),
            std::to_string(chars.size()) + " characters, " + std::to_string(bad) + " off level");
    }

    if (want("eigenline-count")) {
        if (ctx.n == 2) {
            bool ok = W.chars().size() == rep.dim_L;
            for (int c = 0; c <= b && ok; ++c)
                ok = chars_between(RL, c).size() == rep.dims[static_cast<std::size_t>(c)].dim_M;
            add("eigenline-count", verdict(ok), "eigenlines per section equal its dimension");
        } else {
            add("eigenline-count", CheckStatus::Skipped,
                "U is non-abelian for n >= 3; linear characters do not exhaust the regular module");
        }
    }

    if (want("bottom-socle")) {
        const Subspace& Lb = RL.L(b);
        Subspace spin0 = M.spin({M.eigenvector_of(RL.char_index(canonical_character(Composition::all_ones(ctx.n))))});
        bool ok = W.soc() == Lb && section_of(RL, Lb, M.zero()).irreducible() && spin0 == Lb;
        add("bottom-socle", verdict(ok), "soc(L) = L(b), irreducible, dim " + std::to_string(Lb.dim()));
    }

    if (want("radical-top")) {
        bool ok = W.rad() == RL.L(1);
        add("radical-top", verdict(ok), "rad(L) = L(1), dim " + std::to_string(RL.L(1).dim()));
    }

    if (want("top-irreducible")) {
        bool irr = section_of(RL, RL.L(0), RL.L(1)).irreducible();
        bool eq = RL.N_of(Composition::whole(ctx.n)) == RL.L(0);
        add("top-irreducible", verdict(irr && eq), "M(0) = N(G), dim " + std::to_string(rep.dims[0].dim_M));
    }

    const auto comps = all_compositions(ctx.n);
    auto wpos = [&](const Composition& P) {
        std::size_t k = RL.char_index(canonical_character(P));
        auto it = std::find(W.chars().begin(), W.chars().end(), k);
        return static_cast<std::size_t>(it - W.chars().begin());
    };

    if (want("inclusion")) {
        std::size_t pairs = 0, bad = 0;
        std::string witness;
        for (const auto& Q : comps)
            for (const auto& P : comps) {
                if (!refines_up_to_equiv(Q, P)) continue;
                ++pairs;
                if (!W.reaches(wpos(P), wpos(Q))) {
                    if (!bad) witness = "; first failure Q=" + Q.to_string() + " P=" + P.to_string();
                    ++bad;
                }
            }
        add("inclusion", verdict(bad == 0),
            std::to_string(pairs) + " pairs with L'(Q) inside L'(P) required" + witness);
    }

    if (want("direct-sum")) {
        bool ok = true;
        std::ostringstream det;
        for (int c : pv) {
            const Subspace& below = RL.L(c + 1);
            Subspace sum = below;
            std::size_t total = 0;
            for (const StarLabel& z : star_classes(ctx, c)) {
                Subspace N = RL.N_of(star_composition(ctx, z));
                total += N.dim() - below.dim();
                ok = ok && section_of(RL, N, below).irreducible();
                sum = sum.sum(N);
            }
            std::size_t dM = RL.L(c).dim() - below.dim();
            ok = ok && total == dM && sum == RL.L(c);
            det << "c=" << c << ": " << star_classes(ctx, c).size() << " summands, " << total << "/" << dM << "; ";
        }
        add("direct-sum", verdict(ok), det.str());
    }

    if (want("star-invariance")) {
        std::size_t bad = 0;
        for (const auto& P : comps)
            if (!(RL.N_of(P) == RL.N_of(star_composition(ctx, star_of(ctx, P))))) ++bad;
        add("star-invariance", verdict(bad == 0),
            std::to_string(comps.size()) + " compositions, " + std::to_string(bad) + " mismatches");
    }

    if (want("star-sum")) {
        bool ok = true;
        for (int c : pv) {
            std::vector<KVec> seeds;
            for (const StarLabel& z : star_classes(ctx, c))
                seeds.push_back(M.eigenvector_of(RL.char_index(canonical_character(star_composition(ctx, z)))));
            ok = ok && M.spin(seeds) == RL.L(c);
        }
        add("star-sum", ctx.d == 1 ? verdict(ok) : CheckStatus::Reported,
            std::string("L(c) = sum of L'(P), P in P*(c): ") + (ok ? "holds" : "fails") +
                (ctx.d == 1 ? "" : " (d > 1, not asserted)"));
    }

    if (want("socle-series")) {
        // soc(L / L(c_k)) = L(c_{k+1}) walking the P-values downward from b.
        bool ok = true;
        for (std::size_t i = pv.size(); i-- > 1;) {
            const Subspace& bottom = RL.L(pv[i]);
            ok = ok && section_of(RL, RL.L(0), bottom).soc() == RL.L(pv[i - 1]);
        }
        add("socle-series", ctx.d == 1 ? verdict(ok) : CheckStatus::Reported,
            std::string("socle series equals the filtration: ") + (ok ? "yes" : "no") +
                (ctx.d == 1 ? "" : " (d > 1, not asserted)"));
    }

    if (want("radical-series")) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < pv.size(); ++i)
            ok = ok && section_of(RL, RL.L(pv[i]), M.zero()).rad() == RL.L(pv[i + 1]);
        if (!pv.empty()) ok = ok && section_of(RL, RL.L(pv.back()), M.zero()).rad().dim() == 0;
        add("radical-series", ctx.d == 1 ? verdict(ok) : CheckStatus::Reported,
            std::string("radical series equals the filtration: ") + (ok ? "yes" : "no") +
                (ctx.d == 1 ? "" : " (d > 1, not asserted)"));
    }

    const bool small_F = ctx.floor_ne <= ctx.ell;
    if (want("uniserial")) {
        if (small_F) add("uniserial", verdict(W.uniserial()), "class order is total");
        else add("uniserial", CheckStatus::Skipped, "floor(n/e) > ell");
    }

    if (want("cyclic-terms")) {
        if (small_F) {
            bool ok = true;
            for (int c : pv) {
                SectionLattice sec = section_of(RL, RL.L(c), M.zero());
                auto tops = sec.top_classes();
                ok = ok && tops.size() == 1 && sec.generated(sec.classes()[tops[0]][0]) == RL.L(c);
            }
            add("cyclic-terms", verdict(ok), "each L(c) is spun by one eigenvector");
        } else {
            add("cyclic-terms", CheckStatus::Skipped, "floor(n/e) > ell");
        }
    }

    if (want("composition-series")) {
        if (injectivity_verdict(ctx).injective) {
            bool ok = true;
            for (int c : pv) ok = ok && section_of(RL, RL.L(c), RL.L(c + 1)).irreducible();
            add("composition-series", verdict(ok), "theta injective on P*; every M(c) irreducible");
        } else {
            add("composition-series", CheckStatus::Skipped, "theta not injective on P*");
        }
    }

    if (want("completely-reducible")) {
        bool ok = true;
        for (int c : pv) ok = ok && section_of(RL, RL.L(c), RL.L(c + 1)).completely_reducible();
        add("completely-reducible", verdict(ok), "every M(c)");
    }

    if (want("multiplicity-free")) {
        // Each eigenline belongs to one factor, and each factor's eigenlines
        // sit at one filtration level.
        std::size_t counted = 0;
        bool ok = true;
        for (const auto& cls : W.classes()) {
            counted += cls.size();
            int lvl = -1;
            for (std::size_t a : cls) {
                std::size_t k = W.chars()[a];
                int l = -1;
                for (int c = 0; c <= b; ++c)
                    if (RL.level_chars(c).count(k) && !RL.level_chars(c + 1).count(k)) l = c;
                if (lvl == -1) lvl = l;
                ok = ok && l == lvl;
            }
        }
        ok = ok && counted == chars.size() && W.chars().size() == chars.size();
        add("multiplicity-free", verdict(ok), std::to_string(counted) + " eigenlines in " +
                                                  std::to_string(W.classes().size()) + " factors");
    }

    if (want("dual-quotient-dims")) {
        bool ok = true;
        long long prev = index_exponent(S, 0);
        for (int c = 0; c <= b; ++c) {
            long long next = index_exponent(S, c + 1);
            ok = ok && next - prev == static_cast<long long>(rep.dim_L - RL.L(c + 1).dim());
            prev = next;
        }
        add("dual-quotient-dims", verdict(ok), "dim I(c)/I(c+1) = dim L - dim L(c+1) for c = 0..b");
    }

    if (want("commutant")) {
        bool ok = true;
        std::ostringstream det;
        for (int c = 0; c <= b; ++c) {
            if (RL.L(c).dim() == 0 || (c > 0 && RL.L(c) == RL.L(c - 1))) continue;
            std::size_t cd = section_of(RL, RL.L(c), M.zero()).commutant_dim();
            ok = ok && cd == 1;
            det << "L(" << c << "):" << cd << " ";
        }
        add("commutant", verdict(ok), det.str());
    }

    if (want("length-bounds")) {
        auto cl = static_cast<long long>(W.composition_length());
        add("length-bounds", verdict(rep.V <= cl && cl <= rep.star_count),
            "V=" + std::to_string(rep.V) + " c(L)=" + std::to_string(cl) + " |P*|=" + std::to_string(rep.star_count));
    }

    if (want("index-scaling")) {
        // Q inside P with ell not dividing [P:Q]: L'(P) inside L'(Q).
        std::size_t pairs = 0, holds = 0;
        for (const auto& Q : comps)
            for (const auto& P : comps) {
                auto jq = Q.to_J(), jp = P.to_J();
                bool sub = true;
                for (std::size_t i = 0; i < jq.size(); ++i) sub = sub && (!jq[i] || jp[i]);
                if (!sub || P == Q) continue;
                BigInt idx = index_PB(ctx, P) / index_PB(ctx, Q);
                if (idx % ctx.ell == 0) continue;
                ++pairs;
                if (W.reaches(wpos(Q), wpos(P))) ++holds;
            }
        add("index-scaling", CheckStatus::Reported,
            std::to_string(holds) + "/" + std::to_string(pairs) + " pairs with L'(P) inside L'(Q)");
    }

    if (want("eigen-generation")) {
        if (rep.dim_L <= 343) {
            std::size_t good = 0;
            for (int c = 0; c <= b; ++c)
                if (tc_probe(S, RL, c).eigen_generated) ++good;
            add("eigen-generation", CheckStatus::Reported,
                std::to_string(good) + "/" + std::to_string(b + 1) + " terms T^c spun by eigenvector images");
        } else {
            add("eigen-generation", CheckStatus::Skipped, "dim L > 343");
        }
    }
    return rep;
}

// ------------------------------------------------------------------- T^c

TcReport tc_probe(const Steinberg& S, const ReducedLattice& RL, int c) {
    const Context& ctx = S.context();
    const int b = static_cast<int>(ctx.b);
    if (c < 0 || c > b) throw std::invalid_argument("tc_probe: c must lie in [0, b]");
    const GramData& gd = S.gram(true);
    const GaloisRing& R = S.ring();
    const FiniteField& K = S.K();
    const std::size_t n = gd.T.dim;
    const std::uint64_t Mod = R.modulus_int();
    const auto ell = static_cast<std::uint64_t>(ctx.ell);
    std::vector<int> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = std::max(c - gd.exponents[i], 0);
    auto pw = [&](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= ell;
        return r;
    };

    // Generators in the basis ell^{k_i} T_i, reduced mod ell.
    std::vector<SparseKMatrix> gens;
    for (const auto& rho : S.generator_actions()) {
        ModMatrix RT(n);
        for (std::size_t s = 0; s < n; ++s)
            for (auto [r, a] : rho.cols[s]) {
                std::uint64_t av = static_cast<std::uint64_t>((a % static_cast<long long>(Mod) + static_cast<long long>(Mod))) % Mod;
                for (std::size_t j = 0; j < n; ++j)
                    if (gd.T.at(s, j)) RT.at(r, j) = static_cast<std::uint32_t>((RT.at(r, j) + av * gd.T.at(s, j)) % Mod);
            }
        ModMatrix X = mod_mul(gd.Tinv, RT, Mod);
        SparseKMatrix g;
        g.dim = n;
        g.cols.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t v = X.at(i, j);
                if (!v) continue;
                if (k[i] > k[j]) {
                    std::uint64_t dv = pw(k[i] - k[j]);
                    if (v % dv) throw std::logic_error("tc_probe: I(c) is not stable under a generator");
                    v /= dv;
                } else {
                    v = v * pw(k[j] - k[i]) % Mod;
                }
                if (v % ell) g.cols[j].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(v % ell));
            }
        gens.push_back(std::move(g));
    }

    // Eigenvectors: images of ell^{max(c - theta, 0)} E_mu.
    auto chars = all_characters(S.group());
    std::vector<KVec> eigen;
    for (const auto& mu : chars) {
        int sh = std::max(c - static_cast<int>(theta(ctx, parabolic_of(mu))), 0);
        auto E = S.E_lambda_u(mu);
        KVec v(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            GRElem w = R.zero();
            for (std::size_t j = 0; j < n; ++j)
                if (gd.Tinv.at(i, j) && !R.is_zero(E[j])) w = R.add(w, R.mul_int(E[j], gd.Tinv.at(i, j)));
            w = R.mul_int(w, static_cast<long long>(pw(sh)));
            w = R.div_ell_pow(w, k[i]);
            v[i] = static_cast<std::uint8_t>(R.to_K(w));
        }
        eigen.push_back(std::move(v));
    }
    KModule Tc(K, n, std::move(gens), chars, std::move(eigen));

    TcReport rep;
    rep.c = c;
    rep.dim = n;
    auto units = [&](auto pred) {
        Subspace X = Tc.zero();
        for (std::size_t i = 0; i < n; ++i)
            if (pred(gd.exponents[i])) {
                KVec v(n, 0);
                v[i] = 1;
                X.add(v);
            }
        return X;
    };
    auto as_vec = [](const std::set<std::size_t>& s) { return std::vector<std::size_t>(s.begin(), s.end()); };

    Subspace E1 = units([&](int e) { return e > c; });
    rep.embedded_dim = E1.dim();
    rep.quotient_dim = n - E1.dim();
    rep.embedded_Lc1 = Tc.is_submodule(E1) && Tc.present(E1, Tc.zero()) == as_vec(RL.level_chars(c + 1)) &&
                       E1.dim() == RL.L(c + 1).dim();

    std::vector<std::size_t> m0 = chars_between(RL, 0);
    if (c > 0) {
        Subspace Y = units([](int e) { return e == 0; });
        rep.ell_c_image_is_M0 = Tc.is_submodule(Y) && Tc.present(Y, Tc.zero()) == m0 &&
                                Y.dim() == RL.L(0).dim() - RL.L(1).dim() && Tc.is_irreducible(Y, Tc.zero());
    } else {
        rep.ell_c_image_is_M0 = true;  // ell^0 I = I(0) maps onto T^0
    }

    SectionLattice lat(Tc, Tc.whole(), Tc.zero());
    auto chars_of = [&](std::size_t A) {
        std::vector<std::size_t> cs;
        for (std::size_t a : lat.classes()[A]) cs.push_back(lat.chars()[a]);
        std::sort(cs.begin(), cs.end());
        return cs;
    };
    const std::vector<std::size_t> lb = as_vec(RL.level_chars(b));
    for (std::size_t A : lat.socle_classes()) {
        TcFactor f{lat.generated(lat.classes()[A][0]).dim(), chars_of(A)};
        rep.socle_has_M0 = rep.socle_has_M0 || f.chars == m0;
        rep.socle_has_Lb = rep.socle_has_Lb || f.chars == lb;
        rep.socle.push_back(std::move(f));
    }
    std::sort(rep.socle.begin(), rep.socle.end());
    rep.socle_irreducible = rep.socle.size() == 1;
    auto fd = lat.factor_dims();
    for (std::size_t A = 0; A < fd.size(); ++A) rep.factors.push_back({fd[A], chars_of(A)});
    std::sort(rep.factors.begin(), rep.factors.end());
    std::vector<KVec> all_eigen;
    for (std::size_t i = 0; i < chars.size(); ++i) all_eigen.push_back(Tc.eigenvector_of(i));
    rep.eigen_generated = Tc.spin(all_eigen).dim() == n;
    return rep;
}

}  // namespace stlat

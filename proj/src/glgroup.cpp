#include "stlat/glgroup.hpp"

#include "stlat/valuation.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace stlat {

Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

int perm_sign(const Perm& a) { return inversions(a).size() % 2 == 0 ? 1 : -1; }

Perm longest_perm(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
    return p;
}

std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = perm_identity(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Root> positive_roots(int n) {
    std::vector<Root> r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.emplace_back(i, j);
    return r;
}

std::vector<Root> inversions(const Perm& s) {
    std::vector<Root> r;
    const int n = static_cast<int>(s.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s[i] > s[j]) r.emplace_back(i, j);
    return r;
}

std::string perm_to_string(const Perm& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out + "]";
}

USigmaRoots u_sigma_subgroups(const Perm& s) {
    USigmaRoots r;
    auto inv = inversions(s);
    std::set<Root> in(inv.begin(), inv.end());
    for (const Root& rt : positive_roots(static_cast<int>(s.size()))) (in.count(rt) ? r.minus : r.plus).push_back(rt);
    return r;
}

GLn::GLn(int n, long long q) : n_(n), q_(q) {
    if (n < 1) throw std::invalid_argument("GLn: n must be >= 1");
    auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("GLn: q must be a prime power");
    F_ = FiniteField::standard(pp->first, pp->second);
}

FqMatrix GLn::identity() const {
    FqMatrix m(n_);
    for (int i = 0; i < n_; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix GLn::mul(const FqMatrix& x, const FqMatrix& y) const {
    FqMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            Fq c = x.at(i, k);
            if (c == 0) continue;
            const Fq* row = F_.mul_row(c);
            for (int j = 0; j < n_; ++j) r.at(i, j) = F_.add(r.at(i, j), row[y.at(k, j)]);
        }
    return r;
}

FqMatrix GLn::inverse(const FqMatrix& x) const {
    FqMatrix a = x, inv = identity();
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int r = c; r < n_; ++r)
            if (a.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularMatrix("matrix is singular");
        for (int j = 0; j < n_; ++j) {
            std::swap(a.at(c, j), a.at(piv, j));
            std::swap(inv.at(c, j), inv.at(piv, j));
        }
        Fq s = F_.inv(a.at(c, c));
        for (int j = 0; j < n_; ++j) {
            a.at(c, j) = F_.mul(s, a.at(c, j));
            inv.at(c, j) = F_.mul(s, inv.at(c, j));
        }
        for (int r = 0; r < n_; ++r) {
            if (r == c || a.at(r, c) == 0) continue;
            Fq f = a.at(r, c);
            for (int j = 0; j < n_; ++j) {
                a.at(r, j) = F_.sub(a.at(r, j), F_.mul(f, a.at(c, j)));
                inv.at(r, j) = F_.sub(inv.at(r, j), F_.mul(f, inv.at(c, j)));
            }
        }
    }
    return inv;
}

bool GLn::invertible(const FqMatrix& x) const {
    try {
        inverse(x);
        return true;
    } catch (const SingularMatrix&) {
        return false;
    }
}

bool GLn::is_upper_triangular(const FqMatrix& x) const {
    for (int i = 0; i < n_; ++i) {
        if (x.at(i, i) == 0) return false;
        for (int j = 0; j < i; ++j)
            if (x.at(i, j) != 0) return false;
    }
    return true;
}

bool GLn::is_upper_unitriangular(const FqMatrix& x) const {
    if (!is_upper_triangular(x)) return false;
    for (int i = 0; i < n_; ++i)
        if (x.at(i, i) != 1) return false;
    return true;
}

FqMatrix GLn::perm_matrix(const Perm& s) const {
    FqMatrix m(n_);
    for (int j = 0; j < n_; ++j) m.at(s[j], j) = 1;
    return m;
}

FqMatrix GLn::root_element(int i, int j, Fq c) const {
    FqMatrix m = identity();
    m.at(i, j) = F_.add(m.at(i, j), c);
    return m;
}

FqMatrix GLn::diagonal(const std::vector<Fq>& h) const {
    FqMatrix m(n_);
    for (int i = 0; i < n_; ++i) m.at(i, i) = h[i];
    return m;
}

FqMatrix GLn::root_product(const std::vector<Root>& roots, const std::vector<Fq>& vals) const {
    FqMatrix m = identity();
    for (std::size_t k = 0; k < roots.size(); ++k)
        if (vals[k] != 0) m = mul(m, root_element(roots[k].first, roots[k].second, vals[k]));
    return m;
}

std::vector<FqMatrix> GLn::enumerate_roots(const std::vector<Root>& roots) const {
    // Entries at the given positions, other off-diagonal entries zero. Since
    // the sets used here are closed subsystems the result is a subgroup.
    std::vector<FqMatrix> out;
    std::vector<Fq> digits(roots.size(), 0);
    while (true) {
        FqMatrix m = identity();
        for (std::size_t k = 0; k < roots.size(); ++k) m.at(roots[k].first, roots[k].second) = digits[k];
        out.push_back(m);
        int k = static_cast<int>(roots.size()) - 1;
        while (k >= 0 && digits[k] + 1 == q_) digits[k--] = 0;
        if (k < 0) break;
        ++digits[k];
    }
    return out;
}

std::pair<Perm, std::vector<Fq>> GLn::bruhat_cell(const FqMatrix& g) const {
    FqMatrix m = g;
    Perm s(n_, -1);
    for (int j = 0; j < n_; ++j) {
        int r = -1;
        for (int i = n_ - 1; i >= 0; --i)
            if (m.at(i, j) != 0) {
                r = i;
                break;
            }
        if (r < 0) throw SingularMatrix("bruhat: matrix is singular");
        s[j] = r;
        Fq sc = F_.inv(m.at(r, j));
        for (int i = 0; i < n_; ++i) m.at(i, j) = F_.mul(sc, m.at(i, j));
        for (int l = j + 1; l < n_; ++l) {
            Fq c = m.at(r, l);
            if (c == 0) continue;
            for (int i = 0; i < n_; ++i) m.at(i, l) = F_.sub(m.at(i, l), F_.mul(c, m.at(i, j)));
        }
    }
    // u = m * s^{-1}: column s(j) of u is column j of m.
    std::vector<Fq> entries;
    const Perm sinv = perm_inverse(s);
    for (const Root& rt : inversions(sinv)) {
        int j = sinv[rt.second];
        entries.push_back(m.at(rt.first, j));
    }
    return {s, entries};
}

BruhatResult GLn::bruhat(const FqMatrix& g) const {
    auto [s, entries] = bruhat_cell(g);
    auto roots = inversions(perm_inverse(s));
    FqMatrix u = identity();
    for (std::size_t k = 0; k < roots.size(); ++k) u.at(roots[k].first, roots[k].second) = entries[k];
    FqMatrix b = mul(mul(perm_matrix(perm_inverse(s)), inverse(u)), g);
    return {u, s, b};
}

std::string GLn::to_string(const FqMatrix& x) const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
        if (i) s += ";";
        for (int j = 0; j < n_; ++j) {
            if (j) s += " ";
            s += F_.to_string(x.at(i, j));
        }
    }
    return s + "]";
}

std::uint64_t flag_count(int n, long long q) {
    BigInt prod = 1;
    for (int j = 1; j <= n; ++j) prod *= w(q, j);
    if (prod > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(prod);
}

std::uint64_t gl_order(int n, long long q) {
    BigInt prod = 1, qn = ipow(q, n);
    for (int i = 0; i < n; ++i) prod *= qn - ipow(q, i);
    if (prod > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(prod);
}

CosetTable::CosetTable(const GLn& G, std::uint64_t budget) : G_(G) {
    std::uint64_t total = flag_count(G.n(), G.q());
    if (total > budget)
        throw BudgetExceeded("coset table: [G:B] = " + std::to_string(total) + " exceeds budget " + std::to_string(budget),
                             total);
    perms_ = all_perms(G.n());
    offset_.push_back(0);
    for (const Perm& s : perms_) {
        cell_roots_.push_back(inversions(perm_inverse(s)));
        std::size_t cell = 1;
        for (std::size_t k = 0; k < cell_roots_.back().size(); ++k) cell *= static_cast<std::size_t>(G.q());
        offset_.push_back(offset_.back() + cell);
    }
    size_ = offset_.back();
    if (size_ != total) throw std::logic_error("coset table size disagrees with [G:B]");
}

int CosetTable::perm_index(const Perm& s) const {
    auto it = std::lower_bound(perms_.begin(), perms_.end(), s);
    if (it == perms_.end() || *it != s) throw std::invalid_argument("perm_index: not a permutation of the right size");
    return static_cast<int>(it - perms_.begin());
}

int CosetTable::perm_of(std::size_t idx) const {
    auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
    return static_cast<int>(it - offset_.begin()) - 1;
}

std::size_t CosetTable::index_of_cell(int perm_idx, const std::vector<Fq>& u_entries) const {
    std::size_t r = 0;
    for (Fq v : u_entries) r = r * static_cast<std::size_t>(G_.q()) + v;
    return offset_[perm_idx] + r;
}

FqMatrix CosetTable::representative(std::size_t idx) const {
    int pi = perm_of(idx);
    std::size_t r = idx - offset_[pi];
    const auto& roots = cell_roots_[pi];
    FqMatrix u = G_.identity();
    for (std::size_t k = roots.size(); k-- > 0;) {
        u.at(roots[k].first, roots[k].second) = static_cast<Fq>(r % G_.q());
        r /= G_.q();
    }
    return G_.mul(u, G_.perm_matrix(perms_[pi]));
}

std::size_t CosetTable::index_of(const FqMatrix& g) const {
    auto [s, entries] = G_.bruhat_cell(g);
    return index_of_cell(perm_index(s), entries);
}

std::size_t CosetTable::act(const FqMatrix& g, std::size_t idx) const { return index_of(G_.mul(g, representative(idx))); }

void CosetTable::set_generators(const std::vector<FqMatrix>& gens) {
    gens_ = gens;
    gen_maps_.assign(gens.size(), std::vector<std::uint32_t>(size_));
    std::vector<FqMatrix> reps(size_);
    for (std::size_t i = 0; i < size_; ++i) reps[i] = representative(i);
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < size_; ++i)
            gen_maps_[k][i] = static_cast<std::uint32_t>(index_of(G_.mul(gens[k], reps[i])));
}

bool CosetTable::generators_transitive() const {
    if (gens_.empty()) return size_ <= 1;
    std::vector<char> seen(size_, 0);
    std::deque<std::size_t> todo{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!todo.empty()) {
        std::size_t i = todo.front();
        todo.pop_front();
        for (const auto& m : gen_maps_) {
            std::size_t j = m[i];
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                todo.push_back(j);
            }
        }
    }
    return count == size_;
}

std::vector<FqMatrix> generators(const GLn& G) {
    std::vector<FqMatrix> gens;
    const int n = G.n();
    Fq theta = G.q() == 2 ? 1 : G.field().primitive();
    for (int i = 0; i + 1 < n; ++i) {
        Perm s = perm_identity(n);
        std::swap(s[i], s[i + 1]);
        gens.push_back(G.perm_matrix(s));
    }
    for (int i = 0; i + 1 < n; ++i) gens.push_back(G.root_element(i, i + 1, theta));
    if (theta != 1) {
        std::vector<Fq> h(n, 1);
        h[0] = theta;
        gens.push_back(G.diagonal(h));
    }
    return gens;
}

std::uint64_t closure_order(const GLn& G, const std::vector<FqMatrix>& gens, std::uint64_t cap) {
    std::set<std::vector<Fq>> seen;
    std::deque<FqMatrix> todo;
    FqMatrix id = G.identity();
    seen.insert(id.a);
    todo.push_back(id);
    while (!todo.empty()) {
        FqMatrix x = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            FqMatrix y = G.mul(g, x);
            if (seen.insert(y.a).second) {
                if (seen.size() > cap) return 0;
                todo.push_back(y);
            }
        }
    }
    return seen.size();
}

}  // namespace stlat

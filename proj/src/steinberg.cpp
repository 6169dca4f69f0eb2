#include "stlat/steinberg.hpp"

#include "stlat/valuation.hpp"

#include <algorithm>
#include <map>

namespace stlat {

std::vector<Character> all_characters(const GLn& G) {
    const int k = G.n() - 1;
    std::vector<Character> out;
    std::vector<Fq> c(k, 0);
    while (true) {
        out.push_back({c});
        int i = k - 1;
        while (i >= 0 && c[i] + 1 == G.q()) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
    }
    return out;
}

Composition parabolic_of(const Character& lam) {
    std::vector<bool> J(lam.c.size());
    for (std::size_t i = 0; i < lam.c.size(); ++i) J[i] = lam.c[i] != 0;
    return Composition::from_J(J);
}

Character canonical_character(const Composition& P) {
    Character lam;
    for (bool in : P.to_J()) lam.c.push_back(in ? 1 : 0);
    return lam;
}

std::string character_to_string(const GLn& G, const Character& lam) {
    std::string s = "(";
    for (std::size_t i = 0; i < lam.c.size(); ++i) {
        if (i) s += ",";
        s += G.field().to_string(lam.c[i]);
    }
    return s + ")";
}

Steinberg::Steinberg(const Context& ctx, std::uint64_t coset_budget) : ctx_(ctx) {
    G_ = std::make_unique<GLn>(ctx.n, ctx.q);
    T_ = std::make_unique<CosetTable>(*G_, coset_budget);
    R_ = std::make_unique<GaloisRing>(ctx);
    roots_ = positive_roots(ctx.n);
    U_ = G_->enumerate_roots(roots_);
    for (const Perm& s : T_->perms()) perm_sign_.push_back(perm_sign(s));
    s0_idx_ = T_->perm_index(longest_perm(ctx.n));
    GRElem z = R_->one();
    for (long long t = 0; t < ctx.p; ++t) {
        zeta_pow_.push_back(z);
        zeta_pow_K_.push_back(R_->to_K(z));
        z = R_->mul(z, R_->zeta_p());
    }
}

std::size_t Steinberg::u_index(const FqMatrix& u) const {
    std::size_t r = 0;
    for (const Root& rt : roots_) r = r * static_cast<std::size_t>(ctx_.q) + u.at(rt.first, rt.second);
    return r;
}

std::size_t Steinberg::u_mul(std::size_t a, std::size_t b) const {
    const std::size_t n = U_.size();
    if (n <= 1024) {
        if (umul_.empty()) {
            umul_.resize(n * n);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) umul_[x * n + y] = static_cast<std::uint32_t>(u_index(G_->mul(U_[x], U_[y])));
        }
        return umul_[a * n + b];
    }
    return u_index(G_->mul(U_[a], U_[b]));
}

std::size_t Steinberg::u_inv(std::size_t a) const { return u_index(G_->inverse(U_[a])); }

const std::vector<std::vector<std::uint32_t>>& Steinberg::u_sigma_cosets() const {
    if (u_sigma_.empty()) {
        const auto& perms = T_->perms();
        std::vector<FqMatrix> pm;
        for (const Perm& s : perms) pm.push_back(G_->perm_matrix(s));
        u_sigma_.assign(U_.size(), std::vector<std::uint32_t>(perms.size()));
        for (std::size_t u = 0; u < U_.size(); ++u)
            for (std::size_t s = 0; s < perms.size(); ++s)
                u_sigma_[u][s] = static_cast<std::uint32_t>(T_->index_of(G_->mul(U_[u], pm[s])));
    }
    return u_sigma_;
}

Steinberg::LatticeVector Steinberg::e_hat() const {
    LatticeVector x = zero_vector();
    for (std::size_t s = 0; s < T_->perms().size(); ++s)
        x[T_->cell_offset(static_cast<int>(s))] = R_->from_int(perm_sign_[s]);
    return x;
}

std::vector<Steinberg::LatticeVector> Steinberg::basis_I() const {
    const auto& us = u_sigma_cosets();
    std::vector<LatticeVector> out;
    for (std::size_t u = 0; u < U_.size(); ++u) {
        LatticeVector x = zero_vector();
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) x[us[u][s]] = R_->add(x[us[u][s]], R_->from_int(perm_sign_[s]));
        out.push_back(std::move(x));
    }
    return out;
}

bool Steinberg::basis_independent() const {
    const auto& us = u_sigma_cosets();
    const std::size_t top = T_->cell_offset(s0_idx_);
    for (std::size_t u = 0; u < U_.size(); ++u)
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) {
            bool in_top = T_->perm_of(us[u][s]) == s0_idx_;
            if (static_cast<int>(s) == s0_idx_) {
                if (us[u][s] != top + u) return false;
            } else if (in_top) {
                return false;
            }
        }
    return T_->cell_size(s0_idx_) == U_.size();
}

Steinberg::LatticeVector Steinberg::translate(const FqMatrix& g, const LatticeVector& x) const {
    LatticeVector y = zero_vector();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (R_->is_zero(x[i])) continue;
        std::size_t j = T_->act(g, i);
        y[j] = R_->add(y[j], x[i]);
    }
    return y;
}

std::vector<GRElem> Steinberg::to_u_coords(const LatticeVector& x) const {
    const std::size_t top = T_->cell_offset(s0_idx_);
    std::vector<GRElem> y(U_.size());
    const int sg0 = perm_sign_[s0_idx_];
    for (std::size_t u = 0; u < U_.size(); ++u) y[u] = sg0 > 0 ? x[top + u] : R_->neg(x[top + u]);
    return y;
}

Steinberg::LatticeVector Steinberg::from_u_coords(const std::vector<GRElem>& y) const {
    const auto& us = u_sigma_cosets();
    LatticeVector x = zero_vector();
    for (std::size_t u = 0; u < U_.size(); ++u) {
        if (R_->is_zero(y[u])) continue;
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) {
            auto& slot = x[us[u][s]];
            slot = perm_sign_[s] > 0 ? R_->add(slot, y[u]) : R_->sub(slot, y[u]);
        }
    }
    return x;
}

int Steinberg::char_exponent(const Character& lam, const FqMatrix& u) const {
    const auto& F = G_->field();
    Fq s = 0;
    for (std::size_t i = 0; i < lam.c.size(); ++i) s = F.add(s, F.mul(lam.c[i], u.at(static_cast<int>(i), static_cast<int>(i) + 1)));
    return F.trace(s);
}

GRElem Steinberg::char_value(const Character& lam, std::size_t u) const { return zeta_pow_[char_exponent(lam, U_[u])]; }

Steinberg::LatticeVector Steinberg::E_lambda_direct(const Character& lam) const {
    const auto& us = u_sigma_cosets();
    LatticeVector x = zero_vector();
    for (std::size_t u = 0; u < U_.size(); ++u) {
        GRElem v = char_value(lam, u);
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) {
            auto& slot = x[us[u][s]];
            slot = perm_sign_[s] > 0 ? R_->add(slot, v) : R_->sub(slot, v);
        }
    }
    return x;
}

Steinberg::LatticeVector Steinberg::E_lambda(const Character& lam) const {
    LatticeVector x = zero_vector();
    const auto& perms = T_->perms();
    for (std::size_t s = 0; s < perms.size(); ++s) {
        const auto& cell = T_->cell_roots(static_cast<int>(s));
        // lambda must be trivial on U^+_{s^{-1}}: no simple root outside the cell carries c_i != 0
        bool trivial = true;
        std::size_t plus = roots_.size() - cell.size();
        for (std::size_t i = 0; i < lam.c.size() && trivial; ++i) {
            if (lam.c[i] == 0) continue;
            Root r{static_cast<int>(i), static_cast<int>(i) + 1};
            if (std::find(cell.begin(), cell.end(), r) == cell.end()) trivial = false;
        }
        if (!trivial) continue;
        long long C = 1;
        for (std::size_t k = 0; k < plus; ++k) C *= ctx_.q;
        GRElem coef = R_->from_int(perm_sign_[s] * C);
        const std::size_t off = T_->cell_offset(static_cast<int>(s));
        std::vector<Fq> digits(cell.size(), 0);
        for (std::size_t r = 0; r < T_->cell_size(static_cast<int>(s)); ++r) {
            FqMatrix u = G_->identity();
            for (std::size_t k = 0; k < cell.size(); ++k) u.at(cell[k].first, cell[k].second) = digits[k];
            x[off + r] = R_->mul(coef, zeta_pow_[char_exponent(lam, u)]);
            for (int k = static_cast<int>(cell.size()) - 1; k >= 0; --k) {
                if (++digits[k] < ctx_.q) break;
                digits[k] = 0;
            }
        }
    }
    return x;
}

std::vector<GRElem> Steinberg::E_lambda_u(const Character& lam) const {
    std::vector<GRElem> y(U_.size());
    for (std::size_t u = 0; u < U_.size(); ++u) y[u] = char_value(lam, u);
    return y;
}

KVec Steinberg::F_lambda(const Character& lam) const {
    if (K().size() > 256) throw std::invalid_argument("F_lambda: residue field larger than 256 elements");
    KVec v(U_.size());
    for (std::size_t u = 0; u < U_.size(); ++u) v[u] = static_cast<std::uint8_t>(zeta_pow_K_[char_exponent(lam, U_[u])]);
    return v;
}

GRElem Steinberg::form_f(const LatticeVector& x, const LatticeVector& y) const {
    GRElem s = R_->zero();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!R_->is_zero(x[i]) && !R_->is_zero(y[i])) s = R_->add(s, R_->mul(x[i], y[i]));
    return s;
}

GRElem Steinberg::form_u(const std::vector<GRElem>& x, const std::vector<GRElem>& y) const {
    const ModMatrix& A = gram().A;
    GRElem s = R_->zero();
    for (std::size_t u = 0; u < A.dim; ++u) {
        if (R_->is_zero(x[u])) continue;
        GRElem row = R_->zero();
        for (std::size_t v = 0; v < A.dim; ++v)
            if (A.at(u, v) && !R_->is_zero(y[v])) row = R_->add(row, R_->mul_int(y[v], A.at(u, v)));
        s = R_->add(s, R_->mul(x[u], row));
    }
    return s;
}

SparseIntMatrix Steinberg::action_on_I(const FqMatrix& g) const {
    const auto& us = u_sigma_cosets();
    const std::size_t top = T_->cell_offset(s0_idx_);
    const int sg0 = perm_sign_[s0_idx_];
    SparseIntMatrix m;
    m.dim = U_.size();
    m.cols.resize(U_.size());
    std::map<std::uint32_t, int> acc;
    for (std::size_t u = 0; u < U_.size(); ++u) {
        acc.clear();
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) {
            std::size_t j = T_->act(g, us[u][s]);
            if (T_->perm_of(j) != s0_idx_) continue;
            acc[static_cast<std::uint32_t>(j - top)] += perm_sign_[s] * sg0;
        }
        for (auto [r, c] : acc)
            if (c != 0) m.cols[u].emplace_back(r, c);
    }
    return m;
}

const std::vector<SparseIntMatrix>& Steinberg::generator_actions() const {
    if (gen_actions_.empty())
        for (const auto& g : generators(*G_)) gen_actions_.push_back(action_on_I(g));
    return gen_actions_;
}

std::vector<GRElem> Steinberg::apply(const SparseIntMatrix& m, const std::vector<GRElem>& y) const {
    std::vector<GRElem> z(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) {
        if (R_->is_zero(y[j])) continue;
        for (auto [r, c] : m.cols[j]) z[r] = R_->add(z[r], R_->mul_int(y[j], c));
    }
    return z;
}

std::vector<GRElem> Steinberg::apply_u(std::size_t u, const std::vector<GRElem>& y) const {
    std::vector<GRElem> z(U_.size());
    for (std::size_t v = 0; v < U_.size(); ++v) z[u_mul(u, v)] = y[v];
    return z;
}

GRElem Steinberg::index_GP(const Composition& P) const {
    BigInt idx = index_GB(ctx_) / index_PB(ctx_, P);
    BigInt M = R_->modulus_int();
    return R_->from_int(static_cast<long long>(idx % M));
}

const GramData& Steinberg::gram(bool with_inverse_transform) const {
    if (gram_ && (!with_inverse_transform || gram_has_inverse_)) return *gram_;
    const std::size_t nU = U_.size();
    if (nU > 4096) throw BudgetExceeded("gram: |U| = " + std::to_string(nU) + " exceeds 4096", nU);
    const auto& us = u_sigma_cosets();
    // gamma(w) = f(e, w e): only the cosets sigma B (no u part) carry e.
    std::vector<long long> gamma(nU, 0);
    for (std::size_t w = 0; w < nU; ++w)
        for (std::size_t s = 0; s < perm_sign_.size(); ++s) {
            std::size_t c = us[w][s];
            int t = T_->perm_of(c);
            if (c == T_->cell_offset(t)) gamma[w] += perm_sign_[s] * perm_sign_[t];
        }
    const long long M = static_cast<long long>(R_->modulus_int());
    GramData gd;
    gd.A = ModMatrix(nU);
    for (std::size_t u = 0; u < nU; ++u) {
        FqMatrix ui = G_->inverse(U_[u]);
        for (std::size_t v = 0; v < nU; ++v) {
            long long g = gamma[u_index(G_->mul(ui, U_[v]))] % M;
            gd.A.at(u, v) = static_cast<std::uint32_t>(g < 0 ? g + M : g);
        }
    }
    SnfOptions opt;
    opt.track_T = true;
    opt.track_Tinv = with_inverse_transform;
    SnfResult r = snf_chain(gd.A, ctx_.ell, R_->precision(), opt);
    gd.exponents = r.exponents;
    gd.T = std::move(r.T);
    gd.Tinv = std::move(r.Tinv);
    gram_ = std::move(gd);
    gram_has_inverse_ = with_inverse_transform;
    return *gram_;
}

std::vector<FiltrationDims> Steinberg::filtration_dims() const {
    const auto& ex = gram().exponents;
    std::vector<FiltrationDims> out;
    for (int c = 0; c <= static_cast<int>(ctx_.b) + 1; ++c) {
        std::size_t L = 0, Mc = 0;
        for (int e : ex) {
            if (e >= c) ++L;
            if (e == c) ++Mc;
        }
        out.push_back({c, L, Mc});
    }
    return out;
}

std::vector<KVec> Steinberg::L_basis(int c) const {
    const GramData& gd = gram();
    std::vector<KVec> out;
    const auto ell = static_cast<std::uint32_t>(ctx_.ell);
    for (std::size_t i = 0; i < gd.exponents.size(); ++i) {
        if (gd.exponents[i] < c) continue;
        KVec v(gd.T.dim);
        for (std::size_t r = 0; r < gd.T.dim; ++r) v[r] = static_cast<std::uint8_t>(gd.T.at(r, i) % ell);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> Steinberg::I_basis(int c) const {
    const GramData& gd = gram();
    const std::uint64_t M = R_->modulus_int();
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t i = 0; i < gd.exponents.size(); ++i) {
        std::uint64_t sc = 1;
        for (int k = 0; k < std::max(c - gd.exponents[i], 0); ++k) sc *= static_cast<std::uint64_t>(ctx_.ell);
        std::vector<std::uint32_t> col(gd.T.dim);
        for (std::size_t r = 0; r < gd.T.dim; ++r) col[r] = static_cast<std::uint32_t>(gd.T.at(r, i) * sc % M);
        out.push_back(std::move(col));
    }
    return out;
}

// ---------------------------------------------------------------- checks

LatticeCheck check_form_on_eigenvectors(const Steinberg& S) {
    LatticeCheck chk{"form-on-eigenvectors"};
    const auto& R = S.ring();
    const ModMatrix& A = S.gram().A;
    const auto chars = all_characters(S.group());
    for (const Character& lam : chars) {
        GRElem idx = S.index_GP(parabolic_of(lam));
        auto E = S.E_lambda_u(lam);
        for (std::size_t u = 0; u < A.dim; ++u) {
            GRElem s = R.zero();
            for (std::size_t v = 0; v < A.dim; ++v)
                if (A.at(v, u)) s = R.add(s, R.mul_int(E[v], A.at(v, u)));
            ++chk.cases;
            if (s != R.mul(S.char_value(lam, u), idx)) {
                chk.pass = false;
                chk.detail = "f(E, u e) mismatch at lambda " + character_to_string(S.group(), lam);
                return chk;
            }
        }
        Character inv = lam;
        for (auto& c : inv.c) c = S.group().field().neg(c);
        ++chk.cases;
        if (S.form_u(E, S.E_lambda_u(inv)) != R.mul_int(idx, static_cast<long long>(S.u_size()))) {
            chk.pass = false;
            chk.detail = "f(E, E^{-1}) mismatch at lambda " + character_to_string(S.group(), lam);
            return chk;
        }
    }
    return chk;
}

LatticeCheck check_E_closed_form(const Steinberg& S) {
    LatticeCheck chk{"closed-form-E"};
    for (const Character& lam : all_characters(S.group())) {
        ++chk.cases;
        if (S.E_lambda(lam) != S.E_lambda_direct(lam)) {
            chk.pass = false;
            chk.detail = "mismatch at lambda " + character_to_string(S.group(), lam);
            return chk;
        }
    }
    return chk;
}

LatticeCheck check_U_eigen(const Steinberg& S) {
    LatticeCheck chk{"U-eigenvectors"};
    const auto& R = S.ring();
    const auto& G = S.group();
    for (const Character& lam : all_characters(G)) {
        auto E = S.E_lambda_u(lam);
        for (int i = 0; i + 1 < G.n(); ++i)
            for (Fq a = 1; a < G.q(); ++a) {
                std::size_t u = S.u_index(G.root_element(i, i + 1, a));
                auto lhs = S.apply_u(u, E);
                GRElem sc = R.unit_inverse(S.char_value(lam, u));
                ++chk.cases;
                for (std::size_t v = 0; v < E.size(); ++v)
                    if (lhs[v] != R.mul(sc, E[v])) {
                        chk.pass = false;
                        chk.detail = "lambda " + character_to_string(G, lam);
                        return chk;
                    }
            }
    }
    return chk;
}

LatticeCheck check_diagonal_twist(const Steinberg& S) {
    LatticeCheck chk{"diagonal-twist"};
    const auto& G = S.group();
    const auto& F = G.field();
    if (G.q() == 2) {
        chk.detail = "H is trivial";
        return chk;
    }
    const Fq theta = F.primitive();
    for (int slot = 0; slot < G.n(); ++slot) {
        std::vector<Fq> h(G.n(), 1);
        h[slot] = theta;
        auto act = S.action_on_I(G.diagonal(h));
        for (const Character& lam : all_characters(G)) {
            Character mu = lam;
            for (std::size_t i = 0; i < mu.c.size(); ++i) mu.c[i] = F.mul(F.mul(lam.c[i], F.inv(h[i])), h[i + 1]);
            ++chk.cases;
            if (S.apply(act, S.E_lambda_u(lam)) != S.E_lambda_u(mu)) {
                chk.pass = false;
                chk.detail = "lambda " + character_to_string(G, lam) + " slot " + std::to_string(slot);
                return chk;
            }
        }
    }
    return chk;
}

LatticeCheck check_cell_sum_eigen(const Steinberg& S) {
    LatticeCheck chk{"cell-sum-eigenvectors"};
    if (S.u_size() > 128) {
        chk.skipped = true;
        chk.detail = "|U| > 128";
        return chk;
    }
    const auto& R = S.ring();
    const auto& G = S.group();
    const auto& T = S.cosets();
    const auto chars = all_characters(G);
    std::vector<std::vector<GRElem>> E;
    for (const auto& mu : chars) E.push_back(S.E_lambda_u(mu));
    std::size_t eigen = 0;
    for (std::size_t si = 0; si < T.perms().size(); ++si) {
        const Perm& s = T.perms()[si];
        auto act = S.action_on_I(G.perm_matrix(s));
        // U^-_{s^{-1}} is supported on I(s^{-1}), the cell roots of s
        std::vector<std::size_t> cell_u;
        for (const auto& m : G.enumerate_roots(inversions(perm_inverse(s)))) cell_u.push_back(S.u_index(m));
        const int sg = perm_sign(s);
        for (const Character& lam : chars) {
            auto y = S.apply(act, S.E_lambda_u(lam));
            std::vector<GRElem> X(y.size());
            for (std::size_t u : cell_u) {
                auto z = S.apply_u(u, y);
                for (std::size_t v = 0; v < X.size(); ++v) X[v] = R.add(X[v], z[v]);
            }
            ++chk.cases;
            for (std::size_t k = 0; k < chars.size(); ++k) {
                bool prop = true;
                for (std::size_t v = 0; v < X.size() && prop; ++v) prop = X[v] == R.mul(X[0], E[k][v]);
                if (!prop || R.is_zero(X[0])) continue;
                ++eigen;
                if (X[0] != R.from_int(sg)) {
                    chk.pass = false;
                    chk.detail = "sigma " + perm_to_string(s) + ", lambda " + character_to_string(G, lam);
                    return chk;
                }
            }
        }
    }
    chk.detail = std::to_string(eigen) + " eigenvector cases";
    return chk;
}

LatticeCheck check_gram_invariance(const Steinberg& S) {
    LatticeCheck chk{"gram-invariance"};
    const ModMatrix& A = S.gram().A;
    const std::uint64_t M = S.ring().modulus_int();
    const std::size_t n = A.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (A.at(i, j) != A.at(j, i)) {
                chk.pass = false;
                chk.detail = "not symmetric";
                return chk;
            }
    auto md = [&](long long v) {
        long long m = static_cast<long long>(M);
        v %= m;
        return static_cast<std::uint64_t>(v < 0 ? v + m : v);
    };
    std::vector<std::uint64_t> B(n * n);
    for (const auto& rho : S.generator_actions()) {
        // B = A rho, then compare rho^T B with A
        ++chk.cases;
        std::fill(B.begin(), B.end(), 0);
        for (std::size_t j = 0; j < n; ++j)
            for (auto [s, b] : rho.cols[j]) {
                std::uint64_t bb = md(b);
                for (std::size_t r = 0; r < n; ++r) B[r * n + j] = (B[r * n + j] + A.at(r, s) * bb) % M;
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t acc = 0;
                for (auto [r, a] : rho.cols[i]) acc = (acc + md(a) * B[r * n + j]) % M;
                if (acc != A.at(i, j)) {
                    chk.pass = false;
                    chk.detail = "generator breaks invariance";
                    return chk;
                }
            }
    }
    return chk;
}

}  // namespace stlat

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stlat/modulealg.hpp"

#include <map>
#include <random>
#include <set>

using namespace stlat;

namespace {

Context ctx(int n, long long q, int ell) { return build_context(n, q, ell); }

KVec unit(std::size_t n, std::size_t i) {
    KVec v(n, 0);
    v[i] = 1;
    return v;
}

// Every submodule of a small module, as canonical bases. Cyclic submodules
// come from spinning every vector; the rest are their sums.
std::vector<Subspace> all_submodules(const KModule& M) {
    const FiniteField& K = M.field();
    const std::size_t n = M.dim();
    std::map<std::vector<KVec>, Subspace> found;
    auto insert = [&](const Subspace& W) { found.emplace(W.rref(), W); };
    insert(M.zero());
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(K.size());
    KVec v(n, 0);
    for (std::size_t code = 1; code < total; ++code) {
        std::size_t x = code;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = static_cast<std::uint8_t>(x % static_cast<std::size_t>(K.size()));
            x /= static_cast<std::size_t>(K.size());
        }
        insert(M.spin({v}));
    }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Subspace> cur;
        for (auto& [k, W] : found) cur.push_back(W);
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b) {
                Subspace s = cur[a].sum(cur[b]);
                if (found.emplace(s.rref(), s).second) grew = true;
            }
    }
    std::vector<Subspace> out;
    for (auto& [k, W] : found) out.push_back(W);
    return out;
}

struct BruteStructure {
    Subspace soc, rad;
    bool uniserial = true;
    std::size_t length = 0;
};

BruteStructure brute_structure(const KModule& M) {
    auto subs = all_submodules(M);
    const std::size_t n = M.dim();
    BruteStructure r{M.zero(), M.whole()};
    for (const auto& W : subs) {
        if (W.dim() == 0 || W.dim() == n) continue;
        bool minimal = true, maximal = true;
        for (const auto& X : subs) {
            if (X.dim() > 0 && X.dim() < W.dim() && W.contains(X)) minimal = false;
            if (X.dim() < n && X.dim() > W.dim() && X.contains(W)) maximal = false;
        }
        if (minimal) r.soc = r.soc.sum(W);
        if (maximal) {
            // intersection: keep the vectors of rad lying in W
            Subspace I = M.zero();
            for (const auto& S : subs)
                if (r.rad.contains(S) && W.contains(S) && S.dim() > I.dim()) I = S;
            r.rad = I;
        }
    }
    if (subs.size() == 2) {  // irreducible
        r.soc = M.whole();
        r.rad = M.zero();
    }
    for (const auto& A : subs)
        for (const auto& B : subs)
            if (!A.contains(B) && !B.contains(A)) r.uniserial = false;
    // Longest chain by dynamic programming over dimension.
    std::vector<std::size_t> order(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return subs[a].dim() < subs[b].dim(); });
    std::vector<std::size_t> best(subs.size(), 0);
    for (std::size_t ia = 0; ia < order.size(); ++ia)
        for (std::size_t ib = 0; ib < ia; ++ib) {
            const auto& A = subs[order[ia]];
            const auto& B = subs[order[ib]];
            if (B.dim() < A.dim() && A.contains(B)) best[order[ia]] = std::max(best[order[ia]], best[order[ib]] + 1);
        }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i].dim() == n) r.length = best[i];
    return r;
}

// Dimension of {x : u x = mu(u)^{-1} x for all u} by elimination over every u.
std::size_t eigenspace_dim(const Steinberg& S, const Character& mu) {
    const FiniteField& K = S.K();
    const std::size_t n = S.u_size();
    Subspace eqs(K, n);
    for (std::size_t u = 0; u < n; ++u) {
        // (u x)[u v] = x[v]; want x[v] - s x[u v] = 0 with s = mu(u)^{-1}.
        FiniteField::Elem s = K.inv(S.ring().to_K(S.char_value(mu, u)));
        for (std::size_t v = 0; v < n; ++v) {
            KVec row(n, 0);
            std::size_t w = S.u_mul(u, v);
            row[v] = static_cast<std::uint8_t>(K.add(row[v], 1));
            row[w] = static_cast<std::uint8_t>(K.sub(row[w], s));
            eqs.add(row);
        }
    }
    return n - eqs.dim();
}

bool is_eigen(const Steinberg& S, const KVec& x, const Character& mu) {
    const FiniteField& K = S.K();
    for (std::size_t u = 0; u < S.u_size(); ++u) {
        FiniteField::Elem s = K.inv(S.ring().to_K(S.char_value(mu, u)));
        for (std::size_t v = 0; v < S.u_size(); ++v)
            if (x[v] != K.mul(s, x[S.u_mul(u, v)])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("subspace arithmetic") {
    for (auto [p, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{5, 2}}) {
        FiniteField K = FiniteField::standard(p, k);
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> pick(0, K.size() - 1);
        const std::size_t n = 9;
        std::vector<KVec> vs;
        for (int i = 0; i < 5; ++i) {
            KVec v(n);
            for (auto& x : v) x = static_cast<std::uint8_t>(pick(rng));
            vs.push_back(v);
        }
        Subspace W(K, n);
        for (const auto& v : vs) W.add(v);
        CHECK(W.dim() <= 5);
        for (const auto& v : vs) CHECK(W.contains(v));
        // A combination lies in the span; its negative cancels it.
        KVec c(n, 0);
        k_axpy(K, c, 1, vs[0]);
        k_axpy(K, c, static_cast<FiniteField::Elem>(K.size() - 1), vs[1]);
        CHECK(W.contains(c));
        KVec z = c;
        k_axpy(K, z, K.neg(1), c);
        CHECK(k_is_zero(z));
        // rref is canonical: adding in another order gives the same basis.
        Subspace W2(K, n);
        for (auto it = vs.rbegin(); it != vs.rend(); ++it) W2.add(*it);
        CHECK(W.rref() == W2.rref());
        CHECK(W == W2);
        CHECK_FALSE(W.add(vs[2]).has_value());
        Subspace U(K, n);
        U.add(unit(n, 0));
        CHECK(W.sum(U).contains(unit(n, 0)));
    }
}

TEST_CASE("spin on a permutation module") {
    // S3 permuting coordinates of F_2^3: submodules 0, <111>, sum-zero, whole.
    FiniteField K = FiniteField::standard(2, 1);
    SparseKMatrix s12, s23;
    s12.dim = s23.dim = 3;
    s12.cols = {{{1, 1}}, {{0, 1}}, {{2, 1}}};
    s23.cols = {{{0, 1}}, {{2, 1}}, {{1, 1}}};
    KModule M(K, 3, {s12, s23}, {}, {});
    CHECK(M.spin({KVec{1, 1, 1}}).dim() == 1);
    CHECK(M.spin({KVec{1, 1, 0}}).dim() == 2);
    CHECK(M.spin({KVec{1, 0, 0}}).dim() == 3);
    CHECK(M.is_submodule(M.spin({KVec{1, 1, 0}})));
    CHECK_FALSE(M.is_submodule(M.span({KVec{1, 0, 0}})));
    CHECK(all_submodules(M).size() == 4);
    CHECK(commutant_dim_dense(M, M.whole(), M.zero()) == 2);
    Subspace sz = M.spin({KVec{1, 1, 0}});
    CHECK(commutant_dim_dense(M, sz, M.zero()) == 1);
    CHECK_THROWS_AS(M.is_irreducible(M.zero(), M.zero()), std::invalid_argument);
}

TEST_CASE("F_mu spans the whole mu-eigenspace") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 3, 2), ctx(2, 4, 3), ctx(3, 2, 3), ctx(3, 2, 7), ctx(3, 3, 2)}) {
        Steinberg S(c);
        for (const auto& mu : all_characters(S.group())) {
            CHECK(eigenspace_dim(S, mu) == 1);
            CHECK(is_eigen(S, S.F_lambda(mu), mu));
        }
    }
}

TEST_CASE("eigenline count on sections for n = 2") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 3, 2), ctx(2, 4, 3), ctx(2, 5, 3), ctx(2, 7, 2), ctx(2, 8, 3)}) {
        Steinberg S(c);
        ReducedLattice RL(S);
        const KModule& M = RL.module();
        for (int top = 0; top <= c.b + 1; ++top)
            for (int bot = top; bot <= c.b + 1; ++bot)
                CHECK(M.present(RL.L(top), RL.L(bot)).size() == RL.L(top).dim() - RL.L(bot).dim());
    }
    // For n = 3 the linear characters miss the larger irreducibles of U.
    Steinberg S(ctx(3, 2, 3));
    ReducedLattice RL(S);
    CHECK(RL.module().present(RL.L(0), RL.module().zero()).size() < RL.L(0).dim());
}

TEST_CASE("lattice structure against brute-force submodule enumeration") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 3, 2), ctx(2, 4, 3), ctx(2, 4, 5), ctx(2, 8, 3), ctx(3, 2, 3)}) {
        CAPTURE(c.describe());
        Steinberg S(c);
        ReducedLattice RL(S);
        const KModule& M = RL.module();
        const SectionLattice& W = RL.whole();
        BruteStructure br = brute_structure(M);
        CHECK(W.soc() == br.soc);
        CHECK(W.rad() == br.rad);
        CHECK(W.uniserial() == br.uniserial);
        CHECK(W.composition_length() == br.length);
        std::size_t total = 0;
        for (auto d : W.factor_dims()) total += d;
        CHECK(total == M.dim());
    }
}

TEST_CASE("irreducibility, sections and commutants agree with direct computation") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 7, 2), ctx(3, 2, 3), ctx(3, 2, 7), ctx(3, 3, 2), ctx(4, 2, 3)}) {
        CAPTURE(c.describe());
        Steinberg S(c);
        ReducedLattice RL(S);
        const KModule& M = RL.module();
        for (int top = 0; top <= c.b; ++top)
            for (int bot = top + 1; bot <= c.b + 1; ++bot) {
                const Subspace& T = RL.L(top);
                const Subspace& B = RL.L(bot);
                if (T.dim() == B.dim()) continue;
                SectionLattice derived = section_of(RL, T, B);
                SectionLattice direct(M, T, B);
                CHECK(derived.chars() == direct.chars());
                CHECK(derived.composition_length() == direct.composition_length());
                CHECK(derived.irreducible() == M.is_irreducible(T, B));
                CHECK(derived.soc() == direct.soc());
                CHECK(derived.rad() == direct.rad());
                CHECK(derived.commutant_dim() == direct.commutant_dim());
                if (T.dim() - B.dim() <= 27) CHECK(commutant_dim_dense(M, T, B) == derived.commutant_dim());
            }
    }
}

TEST_CASE("whole-module facts: soc, rad, N(P)") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 3, 2), ctx(3, 2, 3), ctx(3, 2, 7), ctx(3, 3, 2), ctx(4, 2, 3), ctx(4, 2, 5)}) {
        CAPTURE(c.describe());
        Steinberg S(c);
        ReducedLattice RL(S);
        const SectionLattice& W = RL.whole();
        const int b = static_cast<int>(c.b);
        CHECK(W.soc() == RL.L(b));
        CHECK(W.rad() == RL.L(1));
        CHECK(RL.N_of(Composition::all_ones(c.n)) == RL.L(b));
        CHECK(RL.N_of(Composition::whole(c.n)) == RL.L(0));
        for (const auto& P : all_compositions(c.n)) {
            int t = static_cast<int>(theta(c, P));
            Subspace N = RL.N_of(P);
            CHECK(RL.L(t).contains(N));
            CHECK(N.dim() > RL.L(t + 1).dim());
            CHECK(RL.module().is_irreducible(N, RL.L(t + 1)));
        }
    }
}

TEST_CASE("small module pipelines") {
    SUBCASE("n=2, q=2, ell=3 is uniserial with two irreducible factors") {
        Steinberg S(ctx(2, 2, 3));
        ReducedLattice RL(S);
        CHECK(S.gram().exponents == std::vector<int>{0, 1});
        CHECK(RL.whole().uniserial());
        CHECK(RL.module().is_irreducible(RL.L(0), RL.L(1)));
        CHECK(RL.module().is_irreducible(RL.L(1), RL.L(2)));
        CHECK_FALSE(RL.module().is_irreducible(RL.L(0), RL.L(2)));
    }
    SUBCASE("n=2, q=3, ell=2 skips level 1") {
        Steinberg S(ctx(2, 3, 2));
        auto d = S.filtration_dims();
        CHECK(d[0].dim_M == 2);
        CHECK(d[1].dim_M == 0);
        CHECK(d[2].dim_M == 1);
    }
    SUBCASE("n=3, q=2, ell=7 splits 8 as 3 + 5") {
        Steinberg S(ctx(3, 2, 7));
        auto d = S.filtration_dims();
        CHECK(d[0].dim_M == 3);
        CHECK(d[1].dim_M == 5);
        CHECK(d[2].dim_L == 0);
    }
}

TEST_CASE("verify battery on small contexts") {
    for (auto c : {ctx(2, 2, 3), ctx(2, 3, 2), ctx(3, 2, 7), ctx(3, 2, 3), ctx(3, 3, 2), ctx(4, 2, 3), ctx(2, 7, 2)}) {
        CAPTURE(c.describe());
        StructureReport r = verify_structure(c);
        for (const auto& chk : r.checks) {
            CAPTURE(chk.name);
            CAPTURE(chk.detail);
            CHECK(chk.status != CheckStatus::Fail);
        }
        CHECK(r.all_pass());
        CHECK(r.checks.size() == structure_check_names().size());
        CHECK(r.V <= static_cast<long long>(*r.composition_length));
        CHECK(static_cast<long long>(*r.composition_length) <= r.star_count);
    }
    // d = 1 contexts assert the socle and radical series.
    StructureReport r = verify_structure(ctx(3, 2, 7));
    CHECK(r.find("socle-series")->status == CheckStatus::Pass);
    CHECK(r.find("radical-series")->status == CheckStatus::Pass);
    StructureReport r2 = verify_structure(ctx(2, 3, 2));
    CHECK(r2.find("socle-series")->status == CheckStatus::Reported);
}

TEST_CASE("verify respects check selection, budgets and thread count") {
    VerifyOptions o;
    o.checks = {"commutant", "inclusion"};
    StructureReport r = verify_structure(ctx(3, 2, 3), o);
    CHECK(r.checks.size() == 2);
    CHECK(r.find("commutant") != nullptr);
    CHECK(r.find("uniserial") == nullptr);

    VerifyOptions tight;
    tight.dim_budget = 100;
    CHECK_THROWS_AS(verify_structure(ctx(3, 5, 2), tight), BudgetExceeded);
    VerifyOptions few;
    few.coset_budget = 10;
    CHECK_THROWS_AS(verify_structure(ctx(3, 2, 3), few), BudgetExceeded);

    VerifyOptions one, three;
    three.threads = 3;
    StructureReport a = verify_structure(ctx(4, 2, 3), one), b = verify_structure(ctx(4, 2, 3), three);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].status == b.checks[i].status);
        CHECK(a.checks[i].detail == b.checks[i].detail);
    }
    CHECK(a.factors.size() == b.factors.size());
}

TEST_CASE("T^c probes") {
    for (auto c : {ctx(2, 3, 2), ctx(3, 3, 2), ctx(2, 7, 2)}) {
        CAPTURE(c.describe());
        REQUIRE(c.b >= 2);
        Steinberg S(c);
        ReducedLattice RL(S);
        const int b = static_cast<int>(c.b);
        // Composition factors of L itself, in the same form.
        std::vector<TcFactor> lf;
        const SectionLattice& W = RL.whole();
        auto fd = W.factor_dims();
        for (std::size_t A = 0; A < fd.size(); ++A) {
            TcFactor f{fd[A], {}};
            for (std::size_t a : W.classes()[A]) f.chars.push_back(W.chars()[a]);
            std::sort(f.chars.begin(), f.chars.end());
            lf.push_back(f);
        }
        std::sort(lf.begin(), lf.end());
        for (int t = 0; t <= b; ++t) {
            CAPTURE(t);
            TcReport r = tc_probe(S, RL, t);
            CHECK(r.dim == S.u_size());
            CHECK(r.embedded_Lc1);
            CHECK(r.quotient_dim == S.u_size() - RL.L(t + 1).dim());
            CHECK(r.ell_c_image_is_M0);
            CHECK(r.factors == lf);
            CHECK(r.eigen_generated);
            if (t > 0 && t < b) {
                CHECK_FALSE(r.socle_irreducible);
                CHECK(r.socle_has_M0);
                CHECK(r.socle_has_Lb);
            }
        }
        TcReport top = tc_probe(S, RL, b);
        CHECK(top.socle_irreducible);
        TcReport bottom = tc_probe(S, RL, 0);
        CHECK(bottom.socle_irreducible);
        CHECK(bottom.socle_has_Lb);
    }
    Steinberg S(ctx(2, 2, 3));
    ReducedLattice RL(S);
    CHECK_THROWS_AS(tc_probe(S, RL, 2), std::invalid_argument);
}

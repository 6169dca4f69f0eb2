#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stlat/glgroup.hpp"

#include <random>
#include <set>

using namespace stlat;

namespace {

FqMatrix random_invertible(const GLn& G, std::mt19937_64& rng) {
    while (true) {
        FqMatrix m(G.n());
        for (auto& v : m.a) v = static_cast<Fq>(rng() % G.q());
        if (G.invertible(m)) return m;
    }
}

FqMatrix random_upper(const GLn& G, std::mt19937_64& rng) {
    FqMatrix m(G.n());
    for (int i = 0; i < G.n(); ++i) {
        m.at(i, i) = static_cast<Fq>(1 + rng() % (G.q() - 1));
        for (int j = i + 1; j < G.n(); ++j) m.at(i, j) = static_cast<Fq>(rng() % G.q());
    }
    return m;
}

// Inversion set straight from the definition, as a set.
std::set<Root> inversion_oracle(const Perm& s) {
    std::set<Root> r;
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        for (int j = 0; j < static_cast<int>(s.size()); ++j)
            if (i < j && s[i] > s[j]) r.insert({i, j});
    return r;
}

}  // namespace

TEST_CASE("permutations and inversion sets") {
    for (int n = 1; n <= 5; ++n) {
        auto perms = all_perms(n);
        CHECK(perms.size() == static_cast<std::size_t>(std::tgamma(n + 1) + 0.5));
        Perm s0 = longest_perm(n);
        auto phi = positive_roots(n);
        for (const Perm& s : perms) {
            auto inv = inversions(s);
            CHECK(std::set<Root>(inv.begin(), inv.end()) == inversion_oracle(s));
            // I(s0 s) is the complement of I(s)
            auto comp = inversion_oracle(perm_compose(s0, s));
            for (const Root& r : phi) CHECK((comp.count(r) == 1) != (inversion_oracle(s).count(r) == 1));
            CHECK(perm_compose(s, perm_inverse(s)) == perm_identity(n));
            auto us = u_sigma_subgroups(s);
            CHECK(us.plus.size() + us.minus.size() == phi.size());
            CHECK(us.minus == inv);
        }
    }
    auto id = u_sigma_subgroups(perm_identity(4));
    CHECK(id.minus.empty());
    CHECK(id.plus.size() == 6u);
    auto top = u_sigma_subgroups(longest_perm(4));
    CHECK(top.plus.empty());
    CHECK(top.minus.size() == 6u);
    // n = 3, s = (12): I(s^{-1}) = {(1,2)}
    Perm s{1, 0, 2};
    CHECK(inversions(perm_inverse(s)) == std::vector<Root>{{0, 1}});
}

TEST_CASE("bruhat normal form") {
    GLn G(2, 2);
    FqMatrix id = G.identity();
    auto r0 = G.bruhat(id);
    CHECK(r0.u == id);
    CHECK(r0.sigma == perm_identity(2));
    CHECK(r0.b == id);

    FqMatrix t21 = G.root_element(1, 0, 1);
    auto r = G.bruhat(t21);
    CHECK(r.u == G.root_element(0, 1, 1));
    CHECK(r.sigma == Perm{1, 0});
    CHECK(r.b == G.root_element(0, 1, 1));
    CHECK(G.mul(G.mul(r.u, G.perm_matrix(r.sigma)), r.b) == t21);

    for (auto [n, q] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 2}, {3, 4}, {4, 3}, {3, 5}, {4, 2}}) {
        GLn H(n, q);
        for (const Perm& s : all_perms(n)) {
            auto rs = H.bruhat(H.perm_matrix(s));
            CHECK(rs.sigma == s);
            CHECK(rs.u == H.identity());
            CHECK(rs.b == H.identity());
        }
        std::mt19937_64 rng(n * 100 + q);
        for (int t = 0; t < 60; ++t) {
            FqMatrix g = random_invertible(H, rng);
            auto br = H.bruhat(g);
            CHECK(H.mul(H.mul(br.u, H.perm_matrix(br.sigma)), br.b) == g);
            CHECK(H.is_upper_unitriangular(br.u));
            CHECK(H.is_upper_triangular(br.b));
            // u is supported on I(sigma^{-1})
            auto allowed = inversion_oracle(perm_inverse(br.sigma));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!allowed.count({i, j})) CHECK(br.u.at(i, j) == 0);
            // the cell only depends on gB
            for (int k = 0; k < 4; ++k) {
                auto br2 = H.bruhat(H.mul(g, random_upper(H, rng)));
                CHECK(br2.u == br.u);
                CHECK(br2.sigma == br.sigma);
            }
        }
    }
    CHECK_THROWS_AS(G.bruhat(FqMatrix(2)), SingularMatrix);
}

TEST_CASE("commutator and conjugation relations") {
    for (auto [n, q] : std::vector<std::pair<int, long long>>{{3, 2}, {3, 3}, {4, 2}, {3, 4}}) {
        GLn G(n, q);
        const auto roots = positive_roots(n);
        for (auto [i, j] : roots)
            for (auto [k, l] : roots) {
                if (i == l) continue;
                for (Fq a = 1; a < q; ++a)
                    for (Fq b = 1; b < q; ++b) {
                        FqMatrix x = G.root_element(i, j, a), y = G.root_element(k, l, b);
                        FqMatrix comm = G.mul(G.mul(G.inverse(x), G.inverse(y)), G.mul(x, y));
                        FqMatrix expect = j == k ? G.root_element(i, l, G.field().mul(a, b)) : G.identity();
                        CHECK(comm == expect);
                    }
            }
        for (const Perm& s : all_perms(n)) {
            FqMatrix sm = G.perm_matrix(s), si = G.inverse(sm);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    FqMatrix x = G.identity();
                    x.at(i, j) = 1;
                    FqMatrix y = G.identity();
                    y.at(s[i], s[j]) = 1;
                    CHECK(G.mul(G.mul(sm, x), si) == y);
                }
        }
    }
}

TEST_CASE("unipotent enumeration") {
    GLn G(3, 3);
    auto U = G.enumerate_roots(positive_roots(3));
    CHECK(U.size() == 27u);
    std::set<std::vector<Fq>> seen;
    for (const auto& u : U) {
        CHECK(G.is_upper_unitriangular(u));
        seen.insert(u.a);
    }
    CHECK(seen.size() == 27u);
    for (const auto& a : U)
        for (const auto& b : U) CHECK(seen.count(G.mul(a, b).a) == 1);
}

TEST_CASE("coset table") {
    GLn G22(2, 2);
    CosetTable T22(G22);
    CHECK(T22.size() == 3u);
    GLn G43(4, 3);
    CosetTable T43(G43);
    CHECK(T43.size() == 2080u);
    CHECK(flag_count(4, 3) == 2080u);
    CHECK_THROWS_AS(CosetTable(G43, 1000), BudgetExceeded);
    try {
        CosetTable tmp(G43, 1000);
    } catch (const BudgetExceeded& e) {
        CHECK(e.size() == 2080u);
    }

    for (auto [n, q] : std::vector<std::pair<int, long long>>{{2, 2}, {3, 2}, {3, 3}, {2, 4}, {4, 2}}) {
        GLn G(n, q);
        CosetTable T(G);
        std::set<std::size_t> idx;
        for (std::size_t i = 0; i < T.size(); ++i) {
            FqMatrix r = T.representative(i);
            CHECK(T.index_of(r) == i);
            CHECK(T.act(G.identity(), i) == i);
            idx.insert(T.index_of(r));
        }
        CHECK(idx.size() == T.size());
        std::mt19937_64 rng(3);
        for (int t = 0; t < 20; ++t) {
            FqMatrix g = random_invertible(G, rng), h = random_invertible(G, rng);
            for (std::size_t i = 0; i < T.size(); i += 1 + T.size() / 17)
                CHECK(T.act(G.mul(g, h), i) == T.act(g, T.act(h, i)));
        }
        T.set_generators(generators(G));
        CHECK(T.generators_transitive());
        for (std::size_t k = 0; k < T.generators().size(); ++k)
            for (std::size_t i = 0; i < T.size(); ++i) CHECK(T.act_generator(k, i) == T.act(T.generators()[k], i));
    }
    // n = 2, q = 2: B, sigma B, t sigma B
    CHECK(T22.representative(0) == G22.identity());
    CHECK(T22.representative(1) == G22.perm_matrix({1, 0}));
}

TEST_CASE("generators") {
    GLn G22(2, 2);
    auto g22 = generators(G22);
    CHECK(g22.size() == 2u);
    CHECK(g22[0] == G22.perm_matrix({1, 0}));
    CHECK(g22[1] == G22.root_element(0, 1, 1));
    CHECK(closure_order(G22, g22, 1000) == 6u);
    GLn G23(2, 3);
    auto g23 = generators(G23);
    CHECK(g23.size() == 3u);
    CHECK(closure_order(G23, g23, 1000) == 48u);
    CHECK(gl_order(2, 3) == 48u);
    for (auto [n, q] : std::vector<std::pair<int, long long>>{{3, 2}, {2, 4}, {2, 5}, {3, 3}}) {
        GLn G(n, q);
        CHECK(closure_order(G, generators(G), 20000) == gl_order(n, q));
    }
    CHECK(closure_order(G23, g23, 10) == 0u);
}

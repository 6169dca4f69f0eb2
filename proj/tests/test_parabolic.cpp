#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stlat/parabolic.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace stlat;

namespace {

Composition comp(std::vector<int> p) { return Composition{std::move(p)}; }

// Exhaustive set-partition oracle for refinement up to reordering.
bool refines_oracle(const std::vector<int>& Q, std::vector<int> P) {
    std::sort(P.begin(), P.end());
    const int k = static_cast<int>(Q.size());
    std::vector<int> block(k, 0);
    // enumerate restricted growth strings
    std::function<bool(int, int)> rec = [&](int i, int used) -> bool {
        if (i == k) {
            std::vector<int> sums(used, 0);
            for (int j = 0; j < k; ++j) sums[block[j]] += Q[j];
            std::sort(sums.begin(), sums.end());
            return sums == P;
        }
        for (int b = 0; b <= used; ++b) {
            block[i] = b;
            if (rec(i + 1, std::max(used, b + 1))) return true;
        }
        return false;
    };
    return rec(0, 0);
}

std::vector<std::pair<int, long long>> grid() {
    std::vector<std::pair<int, long long>> out;
    for (int ell : {2, 3, 5})
        for (long long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 17, 19, 23, 25, 29, 31, 37, 41, 43, 47, 49})
            if (q % ell != 0) out.emplace_back(ell, q);
    return out;
}

}  // namespace

TEST_CASE("composition and J mask bijection") {
    Composition P = comp({2, 1, 2});
    std::vector<bool> J = P.to_J();
    CHECK(J == std::vector<bool>{true, false, false, true});
    CHECK(Composition::from_J(J) == P);
    for (int n = 1; n <= 8; ++n) {
        auto all = all_compositions(n);
        CHECK(all.size() == (1u << (n - 1)));
        std::set<std::vector<int>> seen;
        for (auto& C : all) {
            CHECK(C.n() == n);
            CHECK(Composition::from_J(C.to_J()) == C);
            seen.insert(C.parts);
        }
        CHECK(seen.size() == all.size());
    }
}

TEST_CASE("partition strings") {
    CHECK(partition_string(comp({4, 2, 2, 1, 1})) == "42^21^2");
    CHECK(partition_string(comp({1, 2, 1, 2, 4})) == "42^21^2");
    CHECK(partition_string(Composition::all_ones(10)) == "1^{10}");
    CHECK(partition_string(comp({8, 2})) == "82");
    CHECK(partition_string(comp({12, 1})) == "{12}1");
    for (std::string s : {"42^21^2", "1^{10}", "82", "{12}1", "2^5", "4^21^2"})
        CHECK(partition_string(parse_partition_string(s)) == s);
}

TEST_CASE("delta examples") {
    Context c = build_context(10, 5, 2);
    CHECK(delta(c, 8).y == std::vector<long long>{0, 0, 0, 1});
    CHECK(delta(c, 1).y == std::vector<long long>{1, 0, 0, 0});
    CHECK(delta_sum(c, comp({4, 4, 2})).y == std::vector<long long>{0, 1, 2, 0});
    CHECK_THROWS_AS(delta(c, 11), std::out_of_range);
    CHECK_THROWS_AS(delta(c, 0), std::out_of_range);
    for (long long a = 1; a <= 10; ++a) {
        auto y = delta(c, a).y;
        CHECK(y[0] + 2 * (y[1] + 2 * y[2] + 4 * y[3]) == a);
    }
}

TEST_CASE("star_of examples") {
    Context c = build_context(10, 5, 2);
    StarLabel z = star_of(c, comp({5, 5}));
    CHECK(z.z == std::vector<long long>{0, 2, 0});
    CHECK(partition_string(star_composition(c, z)) == "4^21^2");
    CHECK(theta_star(c, z) == 2);
    CHECK(star_of(c, Composition::all_ones(10)).z == std::vector<long long>{0, 0, 0});
    CHECK(star_composition(c, star_of(c, comp({4, 4, 2}))) == comp({4, 4, 2}));
}

TEST_CASE("phi and theta examples") {
    Context c6 = build_context(6, 5, 2);
    CHECK(phi(c6, comp({2, 2, 2})) == 3);
    CHECK(theta(c6, comp({2, 2, 2})) == 1);
    CHECK(phi(c6, Composition::all_ones(6)) == 0);
    CHECK(theta(c6, Composition::all_ones(6)) == c6.b);
    Context c10 = build_context(10, 5, 2);
    CHECK(phi(c10, Composition::whole(10)) == 8);
    CHECK(theta(c10, Composition::whole(10)) == 0);
    CHECK(nu(index_GB(c10), 2) == 8);
}

TEST_CASE("phi is the valuation of [P:B] and is constant on P -> P*") {
    for (auto [ell, q] : grid()) {
        for (int n = 2; n <= 11; ++n) {
            Context c = build_context(n, q, ell);
            for (auto& P : all_compositions(n)) {
                long long ph = phi(c, P);
                REQUIRE(ph == nu(index_PB(c, P), ell));
                StarLabel z = star_of(c, P);
                REQUIRE(star_valid(c, z));
                CHECK(phi_star(c, z) == ph);
                CHECK(phi(c, star_composition(c, z)) == ph);
                CHECK(refines_up_to_equiv(star_composition(c, z), P));
            }
        }
    }
}

TEST_CASE("theta values over all compositions equal those over P*") {
    for (auto [ell, q] : grid()) {
        for (int n = 2; n <= 12; ++n) {
            Context c = build_context(n, q, ell);
            std::set<long long> all, star;
            for (auto& P : all_compositions(n)) all.insert(theta(c, P));
            for (auto& z : enumerate_star(c)) star.insert(theta_star(c, z));
            CHECK(all == star);
        }
    }
}

TEST_CASE("P* counts") {
    CHECK(count_star(build_context(6, 5, 2)) == 6);
    CHECK(enumerate_star(build_context(6, 5, 2)).size() == 6);
    CHECK(count_star(build_context(10, 5, 2)) == 14);
    CHECK(enumerate_star(build_context(10, 5, 2)).size() == 14);
    Context deg = build_context(2, 2, 7);  // e = 3 > n
    CHECK(deg.m == -1);
    CHECK(deg.b == 0);
    CHECK(count_star(deg) == 1);
    auto only = enumerate_star(deg);
    REQUIRE(only.size() == 1);
    CHECK(star_composition(deg, only[0]) == Composition::all_ones(2));
    CHECK(v_count(deg).V == 1);
    for (auto [ell, q] : grid())
        for (int n = 2; n <= 40; n += 3) {
            Context c = build_context(n, q, ell);
            auto all = enumerate_star(c);
            CHECK(static_cast<long long>(all.size()) == count_star(c));
            std::set<StarLabel> uniq(all.begin(), all.end());
            CHECK(uniq.size() == all.size());
        }
}

TEST_CASE("V examples") {
    auto r6 = v_count(build_context(6, 5, 2));
    CHECK(r6.V == 5);
    CHECK(r6.pvalues == std::vector<long long>{0, 1, 2, 3, 4});
    CHECK(r6.all_hold());
    auto r10 = v_count(build_context(10, 5, 2));
    CHECK(r10.V == 9);
    CHECK(r10.all_hold());
}

TEST_CASE("V formulas hold on a grid") {
    for (auto [ell, q] : grid())
        for (int n = 2; n <= 40; ++n) {
            Context c = build_context(n, q, ell);
            auto r = v_count(c);
            CAPTURE(c.describe());
            CHECK(r.all_hold());
            CHECK(r.V == static_cast<long long>(r.phi_values.size()));
            if (c.d == 1) CHECK(r.V == c.b + 1);
        }
}

TEST_CASE("star classes") {
    Context c = build_context(10, 5, 2);
    auto cls = star_classes(c, 3);
    std::set<std::string> names;
    for (auto& z : cls) names.insert(partition_string(star_composition(c, z)));
    CHECK(names == std::set<std::string>{"2^5", "42^21^2"});
    auto bottom = star_classes(c, c.b);
    REQUIRE(bottom.size() == 1);
    CHECK(star_composition(c, bottom[0]) == Composition::all_ones(10));
    CHECK(star_classes(c, c.b + 1).empty());
    for (auto [ell, q] : grid())
        for (int n = 2; n <= 20; ++n) {
            Context cc = build_context(n, q, ell);
            auto r = v_count(cc);
            long long total = 0;
            for (long long v = 0; v <= cc.b + 1; ++v) {
                auto s = star_classes(cc, v);
                total += static_cast<long long>(s.size());
                bool is_value = std::binary_search(r.pvalues.begin(), r.pvalues.end(), v);
                CHECK(s.empty() == !is_value);
            }
            CHECK(total == count_star(cc));
        }
}

TEST_CASE("refines_up_to_equiv") {
    CHECK(refines_up_to_equiv(comp({2, 2, 2}), comp({4, 2})));
    CHECK_FALSE(refines_up_to_equiv(comp({4, 1, 1}), comp({3, 3})));
    CHECK(refines_up_to_equiv(comp({3, 1, 2}), comp({3, 1, 2})));
    CHECK(refines_up_to_equiv(Composition::all_ones(7), comp({3, 4})));
    for (int n = 1; n <= 7; ++n) {
        auto all = all_compositions(n);
        for (auto& Q : all)
            for (auto& P : all) CHECK(refines_up_to_equiv(Q, P) == refines_oracle(Q.parts, P.parts));
    }
}

TEST_CASE("injectivity verdicts") {
    auto v6 = injectivity_verdict(build_context(6, 5, 2));
    CHECK_FALSE(v6.injective);
    CHECK_FALSE(v6.predicted);
    REQUIRE(v6.witness.has_value());
    Context c6 = build_context(6, 5, 2);
    std::set<std::vector<int>> pair{star_composition(c6, v6.witness->first).parts,
                                    star_composition(c6, v6.witness->second).parts};
    CHECK(pair == std::set<std::vector<int>>{{2, 2, 2}, {4, 1, 1}});
    CHECK(v6.witness_kind == "split-first-digit");

    auto v4 = injectivity_verdict(build_context(4, 3, 2));
    CHECK(v4.injective);
    CHECK(v4.predicted);

    for (auto [ell, q] : grid())
        for (int n = 2; n <= 60; ++n) {
            Context c = build_context(n, q, ell);
            auto v = injectivity_verdict(c);
            CAPTURE(c.describe());
            CHECK(v.injective == v.predicted);
            if (c.floor_ne >= static_cast<long long>(ell) * ell + ell) CHECK_FALSE(v.injective);
            if (!v.injective) {
                REQUIRE(v.witness.has_value());
                CHECK(phi_star(c, v.witness->first) == phi_star(c, v.witness->second));
                CHECK(v.witness->first != v.witness->second);
                CHECK(v.witness_kind != "search");
            }
        }
}

TEST_CASE("closed forms for |P*|") {
    int checked = 0;
    for (auto [ell, q] : grid())
        for (int n = 2; n <= 80; ++n) {
            Context c = build_context(n, q, ell);
            auto cf = star_count_closed_form(c);
            if (!cf) continue;
            ++checked;
            CHECK(*cf == count_star(c));
            CHECK(*cf == v_count(c).V);
        }
    CHECK(checked > 50);
    auto c4 = build_context(4, 3, 2);
    REQUIRE(star_count_closed_form(c4).has_value());
    CHECK(*star_count_closed_form(c4) == 4);
}

TEST_CASE("descent chain") {
    Context c6 = build_context(6, 5, 2);
    auto ch = descent_chain(c6);
    REQUIRE(ch.size() >= 2);
    CHECK(ch[0].label.z == std::vector<long long>{1, 1});
    CHECK(ch[0].phi == 4);
    CHECK(ch[1].label.z == std::vector<long long>{3, 0});
    CHECK(ch[1].phi == 3);
    for (auto [ell, q] : grid())
        for (int n = 2; n <= 60; ++n) {
            Context c = build_context(n, q, ell);
            auto chain = descent_chain(c);
            auto r = v_count(c);
            long long stage1 = std::count_if(chain.begin(), chain.end(), [](auto& s) { return s.stage == 1; });
            CHECK(stage1 == r.C);
            CHECK(chain.front().phi == c.b);
            for (std::size_t i = 0; i < chain.size(); ++i) {
                CHECK(star_valid(c, chain[i].label));
                CHECK(chain[i].phi == phi_star(c, chain[i].label));
                if (i) CHECK(chain[i].phi == chain[i - 1].phi - 1);
            }
            if (c.floor_ne >= static_cast<long long>(c.d) * ell)
                CHECK(static_cast<long long>(chain.size()) == r.Z - static_cast<long long>(c.d) * c.d * ell);
            if (c.d == 1 && c.m >= 0) CHECK(chain.back().phi <= c.d * c.floor_ne);
        }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stlat/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace stlat;
using stlat::cli::Json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "stlat");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reference fixtures match") {
    for (std::string name : {"tatin1", "tatin2"}) {
        Result r = call({"predict", "--fixture", name});
        REQUIRE(r.code == 0);
        Json j = Json::parse(r.out);
        CHECK(j["fixture"]["match"] == true);
        CHECK(j["fixture"]["diffs"].empty());
        CHECK(j["all_pass"] == true);
    }
    Json j = Json::parse(call({"predict", "--fixture", "tatin1"}).out);
    CHECK(j["V"]["value"] == 5);
    CHECK(j["star_count"] == 6);
    CHECK(j["injectivity"]["injective"] == false);
    Json j2 = Json::parse(call({"predict", "--fixture", "tatin2"}).out);
    CHECK(j2["V"]["value"] == 9);
    CHECK(j2["star_count"] == 14);
    CHECK(j2["star_table"].size() == 9);
}

TEST_CASE("fixture_diff reports mismatches") {
    cli::Fixture f = cli::load_fixture("tatin2");
    Json live = cli::predict_report(build_context(10, 5, 2));
    CHECK(cli::fixture_diff(f.expected, live).empty());
    Json bad = f.expected;
    bad["star_table"]["3"] = Json::array({"2^5"});
    bad["V"] = 8;
    auto d = cli::fixture_diff(bad, live);
    CHECK(d.size() == 2);
    // A different context fails on the context fields.
    Json other = cli::predict_report(build_context(10, 3, 2));
    CHECK_FALSE(cli::fixture_diff(f.expected, other).empty());
    CHECK_THROWS_AS(cli::load_fixture("nope"), std::invalid_argument);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"predict", "--n", "6", "--q", "5", "--ell", "5"}).code == 2);  // ell = p
    CHECK(call({"predict", "--n", "6", "--q", "6", "--ell", "5"}).code == 2);  // q not a prime power
    CHECK(call({"predict", "--n", "1", "--q", "5", "--ell", "2"}).code == 2);
    CHECK(call({"predict", "--n", "6"}).code == 2);
    CHECK(call({"predict", "--fixture", "tatin1", "--n", "7"}).code == 2);
    CHECK(call({"predict", "--fixture", "other"}).code == 2);
    CHECK(call({"predict", "--n", "6", "--q", "5", "--ell", "2", "--format", "xml"}).code == 2);
    CHECK(call({"predict", "--n", "6", "--q", "5", "--ell", "2", "--precision", "3"}).code == 2);
    CHECK(call({"verify", "--n", "3", "--q", "2", "--ell", "7", "--checks", "nonsense"}).code == 2);
    CHECK(call({"verify", "--n", "3", "--q", "2", "--ell", "7", "--threads", "0"}).code == 2);
    Result r = call({"predict", "--n", "6", "--q", "5", "--ell", "5"});
    CHECK(r.err.find("ell") != std::string::npos);
}

TEST_CASE("verify reports and exit codes") {
    Result r = call({"verify", "--n", "3", "--q", "2", "--ell", "7"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["schema"] == cli::kSchema);
    CHECK(j["context"]["n"] == 3);
    CHECK(j["dim_L"] == 8);
    CHECK(j["filtration"][0]["dim_M"] == 3);
    CHECK(j["filtration"][1]["dim_M"] == 5);
    CHECK(j["composition_length"] == 2);
    CHECK(j["checks"].size() == structure_check_names().size());

    Result two = call({"verify", "--n", "2", "--q", "3", "--ell", "2"});
    Json t = Json::parse(two.out);
    CHECK(t["filtration"][1]["dim_M"] == 0);
    CHECK(t["pvalues"] == Json::array({0, 2}));

    Result sel = call({"verify", "--n", "3", "--q", "2", "--ell", "7", "--checks", "commutant,inclusion"});
    CHECK(Json::parse(sel.out)["checks"].size() == 2);

    Result big = call({"verify", "--n", "6", "--q", "5", "--ell", "2"});
    CHECK(big.code == 3);
    Json b = Json::parse(big.out);
    CHECK(b["status"] == "budget-exceeded");
    CHECK(b["V"] == 5);
    CHECK(b["context"]["b"] == 4);

    Result small_budget = call({"verify", "--n", "3", "--q", "2", "--ell", "7", "--budget-cosets", "5"});
    CHECK(small_budget.code == 3);
}

TEST_CASE("output is deterministic and honours --out and --format") {
    Result a = call({"verify", "--n", "4", "--q", "2", "--ell", "3"});
    Result b = call({"verify", "--n", "4", "--q", "2", "--ell", "3", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(call({"predict", "--fixture", "tatin2"}).out == call({"predict", "--fixture", "tatin2"}).out);

    const std::string path = "stlat_cli_test_out.md";
    Result f = call({"predict", "--n", "10", "--q", "5", "--ell", "2", "--format", "markdown", "--out", path});
    CHECK(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("| 8 | (1^{10}) |") != std::string::npos);
    CHECK(ss.str().find("| 1 | (81^2), (4^22) |") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("sweep aggregates a grid") {
    Result r = call({"sweep", "--n", "2,3", "--q", "2,3", "--ell", "2,3,7"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["summary"]["fail"] == 0);
    // (2,2,2), (2,3,3), (3,2,2), (3,3,3) are inadmissible.
    CHECK(j["summary"]["total"] == 8);
    for (const auto& e : j["contexts"]) {
        CHECK(e.contains("context"));
        if (e["status"] == "pass") CHECK(e["failed_checks"].empty());
    }
    Result md = call({"sweep", "--n", "2", "--q", "2", "--ell", "3", "--format", "markdown"});
    CHECK(md.out.find("| 2 | 2 | 3 | pass |") != std::string::npos);
}

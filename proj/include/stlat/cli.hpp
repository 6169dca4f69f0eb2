#pragma once

#include "stlat/modulealg.hpp"
#include "stlat/parabolic.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stlat::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "stlat-report/1";

enum ExitCode : int { kAllPass = 0, kCheckFailure = 1, kUsageError = 2, kBudgetExceeded = 3 };

enum class Format { Json, Markdown };

struct RunConfig {
    int n = 0;
    long long q = 0;
    int ell = 0;
    std::optional<int> precision;
    std::uint64_t budget_cosets = 10000;
    std::size_t budget_dim = 1024;
    std::vector<std::string> checks;  // empty = all
    Format format = Format::Json;
    std::string out;  // empty = stdout
    unsigned threads = 1;
};

Json context_json(const Context& ctx);

// Combinatorial prediction: no group computations.
Json predict_report(const Context& ctx);
// Full module battery; a budget overrun yields a partial report with the reason.
Json verify_report(const Context& ctx, const VerifyOptions& opt);

// Golden data for the two reference fixtures.
struct Fixture {
    std::string name;
    int n = 0;
    long long q = 0;
    int ell = 0;
    Json expected;  // subset of the predict report
};
// "tatin1" is n=6, q=5, ell=2 and "tatin2" is n=10, q=5, ell=2. Reads the
// golden file from the data directory (STLAT_DATA_DIR overrides).
Fixture load_fixture(const std::string& name);
// Field-by-field comparison of expected against a live predict report.
std::vector<std::string> fixture_diff(const Json& expected, const Json& live);

std::string to_markdown(const Json& report);

// Whole command line: returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stlat::cli

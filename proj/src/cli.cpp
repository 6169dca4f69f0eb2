#include "stlat/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#ifndef STLAT_DATA_DIR
#define STLAT_DATA_DIR "."
#endif

namespace stlat::cli {

namespace {

Json status_json(const std::string& name, bool ok, const std::string& detail) {
    return Json{{"name", name}, {"status", ok ? "pass" : "fail"}, {"detail", detail}};
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

Json context_json(const Context& ctx) {
    return Json{{"n", ctx.n},   {"q", ctx.q},   {"p", ctx.p}, {"a", ctx.a},           {"ell", ctx.ell},
                {"e", ctx.e},   {"d", ctx.d},   {"floor_n_over_e", ctx.floor_ne},     {"m", ctx.m},
                {"digits", ctx.x}, {"s", ctx.s}, {"b", ctx.b}, {"f", ctx.f},          {"precision", ctx.N}};
}

Json predict_report(const Context& ctx) {
    Json r;
    r["schema"] = kSchema;
    r["command"] = "predict";
    r["context"] = context_json(ctx);
    VCountReport vc = v_count(ctx);
    r["pvalues"] = vc.pvalues;
    r["phi_values"] = vc.phi_values;
    Json v{{"value", vc.V}, {"A", vc.A}, {"Z", vc.Z}, {"C", vc.C}, {"X", vc.X}};
    v["Y"] = vc.Y ? Json(*vc.Y) : Json(nullptr);
    Json formulas = Json::array();
    for (const auto& f : vc.checks)
        formulas.push_back({{"name", f.name}, {"applicable", f.applicable}, {"predicted", f.predicted}, {"holds", f.holds}});
    v["formulas"] = formulas;
    r["V"] = v;

    const auto star = enumerate_star(ctx);
    const long long count = count_star(ctx);
    r["star_count"] = count;
    auto closed = star_count_closed_form(ctx);
    r["star_count_closed_form"] = closed ? Json(*closed) : Json(nullptr);

    Json table = Json::array();
    std::set<long long> star_values;
    for (long long c : vc.pvalues) {
        Json members = Json::array();
        for (const StarLabel& z : star_classes(ctx, c)) {
            Composition P = star_composition(ctx, z);
            members.push_back({{"partition", partition_string(P)}, {"label", z.z}, {"phi", phi_star(ctx, z)}});
        }
        table.push_back({{"c", c}, {"members", members}});
    }
    for (const StarLabel& z : star) star_values.insert(theta_star(ctx, z));
    r["star_table"] = table;

    InjectivityVerdict iv = injectivity_verdict(ctx);
    Json inj{{"injective", iv.injective}, {"predicted", iv.predicted}, {"rule", iv.rule}};
    if (iv.witness) {
        inj["witness"] = Json::array({partition_string(star_composition(ctx, iv.witness->first)),
                                      partition_string(star_composition(ctx, iv.witness->second))});
        inj["witness_theta"] = theta_star(ctx, iv.witness->first);
        inj["witness_kind"] = iv.witness_kind;
    } else {
        inj["witness"] = nullptr;
    }
    r["injectivity"] = inj;
    r["composition_series_conditions"] = composition_series_conditions(ctx);

    Json chain = Json::array();
    bool steps_ok = true;
    const auto dc = descent_chain(ctx);
    for (std::size_t i = 0; i < dc.size(); ++i) {
        chain.push_back({{"partition", partition_string(star_composition(ctx, dc[i].label))},
                         {"label", dc[i].label.z},
                         {"phi", dc[i].phi},
                         {"stage", dc[i].stage}});
        if (i > 0) steps_ok = steps_ok && dc[i - 1].phi - dc[i].phi == 1;
    }
    r["descent_chain"] = chain;

    Json checks = Json::array();
    checks.push_back(status_json("V-formulas", vc.all_hold(), std::to_string(vc.checks.size()) + " formulas"));
    checks.push_back(status_json("star-count", static_cast<long long>(star.size()) == count,
                                 "enumerated " + std::to_string(star.size()) + ", recursion " + std::to_string(count)));
    std::set<long long> pv(vc.pvalues.begin(), vc.pvalues.end());
    checks.push_back(status_json("star-values", star_values == pv, "theta(P*) equals the P-values"));
    checks.push_back(status_json("injectivity-criterion", iv.injective == iv.predicted, iv.rule));
    if (closed) checks.push_back(status_json("closed-form-count", *closed == count, std::to_string(*closed)));
    checks.push_back(status_json("descent-chain", steps_ok, std::to_string(dc.size()) + " steps"));
    bool all = std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["status"] == "pass"; });
    r["checks"] = checks;
    r["all_pass"] = all;
    return r;
}

Json verify_report(const Context& ctx, const VerifyOptions& opt) {
    Json r;
    r["schema"] = kSchema;
    r["command"] = "verify";
    r["context"] = context_json(ctx);
    StructureReport rep;
    try {
        rep = verify_structure(ctx, opt);
    } catch (const BudgetExceeded& e) {
        VCountReport vc = v_count(ctx);
        r["status"] = "budget-exceeded";
        r["reason"] = e.what();
        r["pvalues"] = vc.pvalues;
        r["V"] = vc.V;
        r["star_count"] = count_star(ctx);
        r["checks"] = Json::array();
        for (const auto& name : structure_check_names())
            if (opt.checks.empty() || opt.checks.count(name))
                r["checks"].push_back({{"name", name}, {"status", "skipped"}, {"detail", e.what()}});
        r["all_pass"] = false;
        return r;
    }
    r["status"] = "complete";
    r["cosets"] = rep.cosets;
    r["dim_L"] = rep.dim_L;
    std::map<int, int> ex;
    for (int e : rep.exponents) ++ex[e];
    Json exj = Json::array();
    for (auto [e, k] : ex) exj.push_back({{"exponent", e}, {"count", k}});
    r["divisor_exponents"] = exj;
    Json filt = Json::array();
    for (const auto& d : rep.dims) filt.push_back({{"c", d.c}, {"dim_L", d.dim_L}, {"dim_M", d.dim_M}});
    r["filtration"] = filt;
    r["pvalues"] = rep.pvalues;
    r["V"] = rep.V;
    r["star_count"] = rep.star_count;
    r["composition_length"] = rep.composition_length ? Json(*rep.composition_length) : Json(nullptr);
    Json factors = Json::array();
    for (const auto& f : rep.factors)
        factors.push_back({{"dim", f.dim}, {"level", f.level}, {"characters", f.characters}});
    r["factors"] = factors;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    r["checks"] = checks;
    r["all_pass"] = rep.all_pass();
    return r;
}

// ---------------------------------------------------------------- fixtures

Fixture load_fixture(const std::string& name) {
    static const std::map<std::string, std::string> files = {{"tatin1", "fixture_n6_q5_l2.json"},
                                                             {"tatin2", "fixture_n10_q5_l2.json"}};
    auto it = files.find(name);
    if (it == files.end()) throw std::invalid_argument("unknown fixture '" + name + "' (expected tatin1 or tatin2)");
    const char* env = std::getenv("STLAT_DATA_DIR");
    std::string path = std::string(env && *env ? env : STLAT_DATA_DIR) + "/" + it->second;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read fixture file " + path);
    Fixture f;
    f.name = name;
    f.expected = Json::parse(in);
    f.n = f.expected.at("context").at("n").get<int>();
    f.q = f.expected.at("context").at("q").get<long long>();
    f.ell = f.expected.at("context").at("ell").get<int>();
    return f;
}

std::vector<std::string> fixture_diff(const Json& expected, const Json& live) {
    std::vector<std::string> diffs;
    auto differ = [&](const std::string& what, const Json& want, const Json& got) {
        if (want != got) diffs.push_back(what + ": expected " + want.dump() + ", got " + got.dump());
    };
    for (auto& [k, v] : expected.at("context").items()) differ("context." + k, v, live["context"][k]);
    if (expected.contains("pvalues")) differ("pvalues", expected["pvalues"], live["pvalues"]);
    if (expected.contains("V")) differ("V", expected["V"], live["V"]["value"]);
    if (expected.contains("star_count")) differ("star_count", expected["star_count"], live["star_count"]);
    if (expected.contains("star_table")) {
        std::map<long long, std::vector<std::string>> got;
        for (const auto& row : live["star_table"]) {
            auto& v = got[row["c"].get<long long>()];
            for (const auto& m : row["members"]) v.push_back(m["partition"].get<std::string>());
            std::sort(v.begin(), v.end());
        }
        for (auto& [c, members] : expected["star_table"].items()) {
            std::vector<std::string> want = members.get<std::vector<std::string>>();
            std::sort(want.begin(), want.end());
            differ("star_table[" + c + "]", want, got[std::stoll(c)]);
        }
        if (expected.value("star_table_complete", false)) {
            std::size_t rows = 0;
            for (auto& [c, v] : got)
                if (!v.empty()) ++rows;
            differ("star_table rows", expected["star_table"].size(), rows);
        }
    }
    return diffs;
}

// ---------------------------------------------------------------- markdown

namespace {

std::string md_context(const Json& c) {
    std::ostringstream os;
    os << "| n | q | ell | e | d | floor(n/e) | b | f | precision |\n|---|---|---|---|---|---|---|---|---|\n";
    os << "| " << c["n"] << " | " << c["q"] << " | " << c["ell"] << " | " << c["e"] << " | " << c["d"] << " | "
       << c["floor_n_over_e"] << " | " << c["b"] << " | " << c["f"] << " | " << c["precision"] << " |\n";
    return os.str();
}

std::string cell(std::string s) {
    for (std::size_t i = 0; (i = s.find('|', i)) != std::string::npos; i += 2) s.insert(i, "\\");
    return s;
}

std::string md_checks(const Json& checks) {
    std::ostringstream os;
    os << "| check | status | detail |\n|---|---|---|\n";
    for (const auto& c : checks)
        os << "| " << c["name"].get<std::string>() << " | " << c["status"].get<std::string>() << " | "
           << cell(c["detail"].get<std::string>()) << " |\n";
    return os.str();
}

std::string join(const Json& arr, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? sep : "") + (arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump());
    return s;
}

}  // namespace

std::string to_markdown(const Json& r) {
    std::ostringstream os;
    const std::string cmd = r["command"];
    if (cmd == "sweep") {
        os << "# sweep\n\n| n | q | ell | status | c(L) | V | \\|P*\\| | flagged |\n|---|---|---|---|---|---|---|---|\n";
        for (const auto& e : r["contexts"]) {
            os << "| " << e["context"]["n"] << " | " << e["context"]["q"] << " | " << e["context"]["ell"] << " | "
               << e["status"].get<std::string>() << " | "
               << (e.contains("composition_length") ? e["composition_length"].dump() : "-") << " | "
               << (e.contains("V") ? e["V"].dump() : "-") << " | "
               << (e.contains("star_count") ? e["star_count"].dump() : "-") << " | "
               << (e.value("open_question_evidence", false) ? "yes" : "") << " |\n";
        }
        const auto& s = r["summary"];
        os << "\ntotal " << s["total"] << ", pass " << s["pass"] << ", fail " << s["fail"] << ", budget "
           << s["budget"] << "\n";
        return os.str();
    }
    os << "# " << cmd << "\n\n" << md_context(r["context"]) << "\n";
    if (cmd == "predict") {
        os << "P-values: " << join(r["pvalues"], ", ") << "\n\nV = " << r["V"]["value"] << ", |P*| = " << r["star_count"]
           << "\n\n| c | P*(c) |\n|---|---|\n";
        for (const auto& row : r["star_table"]) {
            std::vector<std::string> ms;
            for (const auto& m : row["members"]) ms.push_back(paren(m["partition"].get<std::string>()));
            os << "| " << row["c"] << " | " << join(Json(ms), ", ") << " |\n";
        }
        const auto& inj = r["injectivity"];
        os << "\ntheta injective on P*: " << (inj["injective"].get<bool>() ? "yes" : "no") << " ("
           << inj["rule"].get<std::string>() << ")";
        if (!inj["witness"].is_null()) os << ", witness " << paren(inj["witness"][0]) << " and " << paren(inj["witness"][1]);
        os << "\n\ndescent chain: ";
        std::vector<std::string> steps;
        for (const auto& s : r["descent_chain"]) steps.push_back(paren(s["partition"].get<std::string>()));
        os << join(Json(steps), " > ") << "\n\n";
        if (r.contains("fixture")) {
            os << "fixture " << r["fixture"]["name"].get<std::string>() << ": "
               << (r["fixture"]["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
            for (const auto& d : r["fixture"]["diffs"]) os << "- " << d.get<std::string>() << "\n";
            os << "\n";
        }
    } else {
        if (r["status"] == "budget-exceeded") os << "budget exceeded: " << r["reason"].get<std::string>() << "\n\n";
        if (r.contains("filtration")) {
            os << "dim L = " << r["dim_L"] << ", cosets = " << r["cosets"] << ", c(L) = " << r["composition_length"]
               << ", V = " << r["V"] << ", |P*| = " << r["star_count"] << "\n\n| c | dim L(c) | dim M(c) |\n|---|---|---|\n";
            for (const auto& f : r["filtration"]) os << "| " << f["c"] << " | " << f["dim_L"] << " | " << f["dim_M"] << " |\n";
            os << "\n| factor | level | dim | eigen-characters |\n|---|---|---|---|\n";
            std::size_t i = 0;
            for (const auto& f : r["factors"])
                os << "| " << i++ << " | " << f["level"] << " | " << f["dim"] << " | " << f["characters"].size() << " |\n";
            os << "\n";
        }
    }
    os << md_checks(r["checks"]);
    os << "\nall pass: " << (r["all_pass"].get<bool>() ? "yes" : "no") << "\n";
    return os.str();
}

// --------------------------------------------------------------- commands

namespace {

int emit(const Json& report, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string text = cfg.format == Format::Json ? report.dump(2) + "\n" : to_markdown(report);
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.out << "\n";
            return kUsageError;
        }
        f << text;
    }
    return kAllPass;
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions o;
    o.coset_budget = cfg.budget_cosets;
    o.dim_budget = cfg.budget_dim;
    o.checks = std::set<std::string>(cfg.checks.begin(), cfg.checks.end());
    o.threads = cfg.threads;
    return o;
}

void validate_checks(const std::vector<std::string>& checks) {
    const auto& known = structure_check_names();
    for (const auto& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw std::invalid_argument("unknown check '" + c + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steinberg lattice reductions: predictions and module verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "json";
    std::string fixture;
    std::vector<int> ns, ells;
    std::vector<long long> qs;

    auto common = [&](CLI::App* sc, bool single) {
        if (single) {
            sc->add_option("--n", cfg.n, "matrix size n >= 2");
            sc->add_option("--q", cfg.q, "field size, a prime power");
            sc->add_option("--ell", cfg.ell, "the prime ell, coprime to q");
        }
        sc->add_option("--precision", cfg.precision, "ell-adic working precision (at least b + 2)");
        sc->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
        sc->add_option("--out", cfg.out, "write the report here instead of stdout");
    };
    auto module_opts = [&](CLI::App* sc) {
        sc->add_option("--budget-cosets", cfg.budget_cosets, "largest [G:B] attempted");
        sc->add_option("--budget-dim", cfg.budget_dim, "largest dim L attempted");
        sc->add_option("--checks", cfg.checks, "comma-separated check names")->delimiter(',');
        sc->add_option("--threads", cfg.threads, "worker threads for independent spins")->check(CLI::Range(1u, 256u));
    };

    CLI::App* predict = app.add_subcommand("predict", "combinatorial predictions for (n, q, ell)");
    common(predict, true);
    predict->add_option("--fixture", fixture, "reference fixture to diff against")
        ->check(CLI::IsMember({"tatin1", "tatin2"}));
    CLI::App* verify = app.add_subcommand("verify", "run the module battery on L = I / ell I");
    common(verify, true);
    module_opts(verify);
    CLI::App* sweep = app.add_subcommand("sweep", "verify over a parameter grid");
    common(sweep, false);
    module_opts(sweep);
    sweep->add_option("--n", ns, "values of n")->delimiter(',');
    sweep->add_option("--q", qs, "values of q")->delimiter(',');
    sweep->add_option("--ell", ells, "values of ell")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        int code = app.exit(e, e.get_exit_code() == 0 ? out : dummy, err);
        return code == 0 ? kAllPass : kUsageError;
    }
    cfg.format = format == "markdown" ? Format::Markdown : Format::Json;

    try {
        validate_checks(cfg.checks);
        if (*predict) {
            Json rep;
            if (!fixture.empty()) {
                Fixture f = load_fixture(fixture);
                if ((cfg.n && cfg.n != f.n) || (cfg.q && cfg.q != f.q) || (cfg.ell && cfg.ell != f.ell))
                    throw std::invalid_argument("--fixture " + fixture + " fixes n, q, ell; conflicting values given");
                rep = predict_report(build_context(f.n, f.q, f.ell, cfg.precision));
                auto diffs = fixture_diff(f.expected, rep);
                rep["fixture"] = {{"name", fixture}, {"match", diffs.empty()}, {"diffs", diffs}};
                if (!diffs.empty()) rep["all_pass"] = false;
            } else {
                if (!cfg.n || !cfg.q || !cfg.ell) throw std::invalid_argument("predict needs --n, --q and --ell");
                rep = predict_report(build_context(cfg.n, cfg.q, cfg.ell, cfg.precision));
            }
            int w = emit(rep, cfg, out, err);
            return w ? w : (rep["all_pass"].get<bool>() ? kAllPass : kCheckFailure);
        }
        if (*verify) {
            if (!cfg.n || !cfg.q || !cfg.ell) throw std::invalid_argument("verify needs --n, --q and --ell");
            Context ctx = build_context(cfg.n, cfg.q, cfg.ell, cfg.precision);
            Json rep = verify_report(ctx, verify_options(cfg));
            int w = emit(rep, cfg, out, err);
            if (w) return w;
            if (rep["status"] == "budget-exceeded") return kBudgetExceeded;
            return rep["all_pass"].get<bool>() ? kAllPass : kCheckFailure;
        }
        // sweep
        if (ns.empty()) ns = {2, 3};
        if (qs.empty()) qs = {2, 3, 5};
        if (ells.empty()) ells = {2, 3, 5, 7};
        Json rep;
        rep["schema"] = kSchema;
        rep["command"] = "sweep";
        rep["grid"] = {{"n", ns}, {"q", qs}, {"ell", ells}};
        Json entries = Json::array();
        int pass = 0, fail = 0, budget = 0, flagged = 0;
        const VerifyOptions opt = verify_options(cfg);
        for (int n : ns)
            for (long long q : qs)
                for (int ell : ells) {
                    Context ctx;
                    try {
                        ctx = build_context(n, q, ell, cfg.precision);
                    } catch (const std::invalid_argument&) {
                        continue;  // inadmissible triple
                    }
                    Json v = verify_report(ctx, opt);
                    Json e;
                    e["context"] = v["context"];
                    e["status"] = v["status"] == "budget-exceeded" ? "budget" : (v["all_pass"].get<bool>() ? "pass" : "fail");
                    if (v["status"] == "budget-exceeded") {
                        e["reason"] = v["reason"];
                        ++budget;
                    } else {
                        e["composition_length"] = v["composition_length"];
                        e["V"] = v["V"];
                        e["star_count"] = v["star_count"];
                        Json failed = Json::array();
                        for (const auto& c : v["checks"])
                            if (c["status"] == "fail") failed.push_back(c["name"]);
                        e["failed_checks"] = failed;
                        bool injective = injectivity_verdict(ctx).injective;
                        bool evidence = !injective && v["composition_length"].get<long long>() < v["star_count"].get<long long>();
                        e["open_question_evidence"] = evidence;
                        if (evidence) ++flagged;
                        (failed.empty() ? pass : fail) += 1;
                    }
                    entries.push_back(e);
                }
        rep["contexts"] = entries;
        rep["summary"] = {{"total", entries.size()}, {"pass", pass}, {"fail", fail}, {"budget", budget}, {"flagged", flagged}};
        rep["all_pass"] = fail == 0;
        int w = emit(rep, cfg, out, err);
        return w ? w : (fail == 0 ? kAllPass : kCheckFailure);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
}

}  // namespace stlat::cli

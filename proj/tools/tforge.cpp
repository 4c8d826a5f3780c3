#include "tforge/commands.hpp"
#include "tforge/errors.hpp"
#include "tforge/relations.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

tforge::BigInt parse_bound(const std::string& text) {
    // Accepts plain integers and the 1e6 shorthand.
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        const tforge::BigInt mant(text.substr(0, e));
        const long exp = std::stol(text.substr(e + 1));
        if (exp < 0 || exp > 1000) throw tforge::UsageError("bad --coeff-bound " + text);
        tforge::BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp));
        return mant * p;
    }
    return tforge::BigInt(text);
}

} // namespace

int main(int argc, char** argv) {
    using namespace tforge;

    CLI::App app{"tforge: multiple t-value experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    bool verbose = false;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string relations_path = default_relations_path().string();
    std::string cache_path;
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--verbose", verbose, "print evaluator counters to stderr");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--relations", relations_path, "relations JSON file");
    app.add_option("--cache", cache_path, "evaluation cache directory (default $TFORGE_CACHE)");

    auto* basis = app.add_subcommand("basis", "list the conjectural basis of a weight");
    std::uint32_t basis_k = 0;
    bool mzv = false;
    basis->add_option("--weight", basis_k)->required();
    basis->add_flag("--mzv", mzv, "list {2,3}-compositions instead");

    auto* eval = app.add_subcommand("eval", "evaluate one multiple t-value");
    std::string index_text;
    long eval_digits = 50;
    std::string backend = "fast";
    std::uint64_t cutoff = 100000;
    double time_budget = -1;
    eval->add_option("INDEX", index_text)->required();
    eval->add_option("--digits", eval_digits);
    eval->add_option("--backend", backend)->check(CLI::IsMember({"fast", "oracle"}));
    eval->add_option("--cutoff", cutoff);
    eval->add_option("--time-budget", time_budget, "seconds");

    auto* verify = app.add_subcommand("verify-paper", "run the weight-5 reproduction checks");
    long verify_digits = 50;
    verify->add_option("--digits", verify_digits);

    auto* scan = app.add_subcommand("scan", "express every admissible index in the basis");
    std::uint32_t scan_k = 0;
    long scan_digits = 60;
    std::string bound_text = "1000000";
    scan->add_option("--weight", scan_k)->required();
    scan->add_option("--digits", scan_digits);
    scan->add_option("--coeff-bound", bound_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        EvalConfig cfg;
        if (!cache_path.empty()) {
            cfg.cache_path = cache_path;
        } else if (const char* env = std::getenv("TFORGE_CACHE"); env && *env) {
            cfg.cache_path = env;
        }
        if (*eval) {
            cfg.digits = eval_digits;
            cfg.backend = parse_backend(backend);
            cfg.oracle_cutoff = cutoff;
            if (time_budget >= 0) cfg.time_budget = time_budget;
        } else if (*verify) {
            cfg.digits = verify_digits;
        } else if (*scan) {
            cfg.digits = scan_digits;
        }
        cfg.validate();
        Evaluator evaluator(cfg);

        RunReport report;
        if (*basis) report = cmd_basis(basis_k, mzv);
        else if (*eval) report = cmd_eval(index_text, evaluator);
        else if (*verify) report = cmd_verify_paper(verify_digits, relations_path, evaluator);
        else report = cmd_scan(scan_k, scan_digits, parse_bound(bound_text), relations_path, evaluator, jobs);

        if (format == "json") std::cout << report.to_json().dump(2) << "\n";
        else std::cout << render_text(report);
        if (verbose) {
            std::cerr << "backend_calls=" << evaluator.backend_calls()
                      << " cache_hits=" << evaluator.cache_hits()
                      << " memo_hits=" << evaluator.memo_hits() << "\n";
        }
        return static_cast<int>(exit_code_for(report.status));
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const PrecisionFailure& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return static_cast<int>(ExitCode::precision);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    }
}

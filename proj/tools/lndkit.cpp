#include "lndkit/report.hpp"
#include "lndkit/scenario.hpp"
#include "lndkit/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lndkit;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const std::vector<Report>& reports, const std::string& json_path, bool timing, int depth)
{
    std::size_t passed = 0;
    for (const auto& r : reports) {
        std::cout << render_text(r, depth);
        passed += r.passed() ? 1 : 0;
    }
    std::cout << passed << "/" << reports.size() << " checks passed\n";
    if (!json_path.empty()) {
        auto doc = to_json(reports, timing).dump(2) + "\n";
        if (json_path == "-")
            std::cout << doc;
        else {
            std::ofstream out(json_path, std::ios::binary);
            if (!out)
                throw Error("cannot write " + json_path);
            out << doc;
        }
    }
    return passed == reports.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of locally nilpotent derivations, Ga-actions and their charts"};
    app.require_subcommand(1);

    RunOptions run;
    std::string json_path;
    bool no_timing = false;
    int depth = 1;
    unsigned degree_bound = 0;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--budget-pairs", run.budget.max_pairs, "Critical pairs per Groebner basis")->capture_default_str();
        sub->add_option("--budget-terms", run.budget.max_terms, "Terms per intermediate polynomial")->capture_default_str();
        sub->add_option("--budget-monomials", run.budget.max_monomials, "Ansatz size for linear algebra")
            ->capture_default_str();
        sub->add_option("--degree-bound", degree_bound, "Default degree bound for kernel searches");
        sub->add_option("--json", json_path, "Write the machine-readable report here ('-' for stdout)");
        sub->add_option("--jobs", run.jobs, "Checks to run concurrently")->check(CLI::PositiveNumber);
        sub->add_flag("--no-timing", no_timing, "Omit timing fields from the JSON report");
        sub->add_option("--depth", depth, "Nesting depth of the text report (-1 for all)")->capture_default_str();
    };

    std::string scenario_path;
    auto* run_cmd = app.add_subcommand("run", "Run the checks of a scenario file");
    run_cmd->add_option("file", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    common(run_cmd);

    std::vector<unsigned> extend_m;
    auto* suite_cmd = app.add_subcommand("paper-suite", "Run the built-in corpus of family checks");
    suite_cmd->add_option("--extend-m", extend_m, "Additional values of m for the X_m checks")
        ->check(CLI::PositiveNumber);
    common(suite_cmd);

    std::string fmt_path;
    bool fmt_write = false;
    bool fmt_check = false;
    auto* fmt_cmd = app.add_subcommand("fmt", "Print a scenario file in canonical form");
    fmt_cmd->add_option("file", fmt_path, "Scenario file")->required()->check(CLI::ExistingFile);
    auto* write_flag = fmt_cmd->add_flag("-w,--write", fmt_write, "Rewrite the file in place");
    fmt_cmd->add_flag("--check", fmt_check, "Exit with status 1 if the file is not in canonical form")->excludes(write_flag);

    CLI11_PARSE(app, argc, argv);
    if (degree_bound > 0)
        run.degree_bound = degree_bound;

    try {
        if (*run_cmd) {
            auto s = parse_scenario(read_file(scenario_path));
            return emit(run_scenario(s, run), json_path, !no_timing, depth);
        }
        if (*suite_cmd) {
            SuiteOptions opts;
            opts.run = run;
            opts.extend_m = extend_m;
            return emit(family_suite(opts), json_path, !no_timing, depth);
        }
        if (*fmt_cmd) {
            auto original = read_file(fmt_path);
            auto text = format_scenario(parse_scenario(original));
            if (fmt_check) {
                if (text == original)
                    return 0;
                std::cerr << fmt_path << ": not in canonical form\n";
                return 1;
            }
            if (fmt_write) {
                std::ofstream out(fmt_path, std::ios::binary);
                out << text;
            }
            else
                std::cout << text;
            return 0;
        }
    }
    catch (const ScenarioError& e) {
        std::cerr << "error: " << (*run_cmd ? scenario_path : fmt_path) << ": " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

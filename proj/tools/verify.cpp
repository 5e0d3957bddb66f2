// verify: run the shipped (or a user-supplied) defs file and report every
// check as PASS, FAIL or DISCREPANCY_CONFIRMED.  Exit code 0 iff nothing
// FAILed.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chow/runner.hpp"
#include "embedded_suite.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw chow::Error("cannot open defs file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact intersection-theory verifier for the conic Fano surface of a "
        "genus-6 Fano threefold"};

    std::string defs_path;
    std::vector<std::string> check_ids;
    std::string format = "text";
    int confluence_degree = 0;
    int jobs = 1;
    bool no_timing = false;
    bool list_only = false;
    bool print_defs = false;

    app.add_option("--defs", defs_path, "Defs file to run (default: built-in suite)");
    app.add_option("--check", check_ids,
                   "Run only these check ids (comma separated or repeated)")
        ->delimiter(',');
    app.add_option("--format", format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--confluence-degree", confluence_degree,
                   "Also verify confluence of every ring up to this degree");
    app.add_option("--jobs", jobs, "Run checks on this many threads")
        ->check(CLI::PositiveNumber);
    app.add_flag("--no-timing", no_timing, "Zero the ms fields for reproducible output");
    app.add_flag("--list", list_only, "List check ids and exit");
    app.add_flag("--print", print_defs, "Print the canonical form of the defs and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text =
            defs_path.empty() ? chow::dsl::embedded_suite() : read_file(defs_path);
        chow::dsl::Env env = chow::dsl::parse_defs(text);

        if (print_defs) {
            std::cout << env.ast.print();
            return 0;
        }
        if (list_only) {
            for (const auto& c : env.checks) std::cout << c.id << "\n";
            return 0;
        }

        bool confluence_ok = true;
        if (confluence_degree > 0) {
            for (const auto& [name, ring] : env.rings) {
                auto rep = ring->check_confluence(confluence_degree, 8);
                if (rep.confluent) {
                    if (format == "text")
                        std::cout << "[CONFLUENT] " << name << " up to degree "
                                  << confluence_degree << " (" << rep.monomials_checked
                                  << " monomials)\n";
                } else {
                    confluence_ok = false;
                    std::cout << "[NOT CONFLUENT] " << name << ": witness "
                              << rep.witnesses.front().monomial.str() << "\n";
                }
            }
        }

        std::optional<std::set<std::string>> filter;
        if (!check_ids.empty()) {
            filter = std::set<std::string>(check_ids.begin(), check_ids.end());
            for (const std::string& id : *filter) {
                bool known = false;
                for (const auto& c : env.checks) known = known || c.id == id;
                if (!known) throw chow::Error("no check with id " + id);
            }
        }

        chow::dsl::Report report =
            chow::dsl::run_checks(env, filter, jobs, !no_timing);
        std::cout << (format == "json" ? chow::dsl::report_json(report)
                                       : chow::dsl::report_text(report));
        return (report.fail == 0 && confluence_ok) ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}

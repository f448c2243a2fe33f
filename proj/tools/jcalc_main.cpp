#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcalc/error.hpp"
#include "jcalc/json_io.hpp"

using namespace jcalc;

int main(int argc, char** argv) {
    CLI::App app{"jcalc: invariant calculus for 2-handlebody boundaries"};
    app.allow_extras();
    std::string input;
    bool as_json = false;
    bool quiet = false;
    app.add_option("--input", input, "batch document (JSON) holding named inputs and a job list");
    app.add_flag("--json", as_json, "emit the machine-readable JSON report instead of text");
    app.add_flag("--quiet", quiet, "suppress per-job headers in text output");
    app.footer(R"(subcommands (single-job shorthand):
  invariants <presentation>
  jclass     <presentation> <spin> <surface>
  orbit      <presentation> <spin> <surface> <k>
  lens       <p> <q>
  feasible   <presentation> <spin> <surface> <target>
  construct  <presentation> <spin> <surface> <target>
  check-cert <certificate.json>
  check-cert <presentation> <spin> <surface> <target>
  selftest

builtin names: presentations empty, e8, s2xs1, hyp; spin s0; surface emptyF.
Targets must come from an --input document.
Exit codes: 0 success, 1 domain error, 2 schema/usage error.)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::vector<std::string> rest = app.remaining();

    try {
        jsonio::Json doc;
        if (!input.empty()) {
            if (!rest.empty())
                fail("SchemaError", "--input and a positional subcommand are mutually exclusive");
            std::ifstream in(input);
            if (!in) fail("SchemaError", "cannot open input file '" + input + "'");
            try {
                doc = jsonio::Json::parse(in);
            } catch (const std::exception& e) {
                fail("SchemaError", std::string("input file: ") + e.what());
            }
        } else {
            if (rest.empty()) {
                std::cout << app.help();
                return 2;
            }
            jsonio::Json job;
            job["command"] = rest.front();
            job["args"] = jsonio::Json::array();
            for (std::size_t i = 1; i < rest.size(); ++i) job["args"].push_back(rest[i]);
            doc = jsonio::Json{{"version", "jcalc/1"}, {"jobs", jsonio::Json::array({job})}};
        }
        auto parsed = jsonio::parse_document(doc);
        auto outcome = jsonio::run_document(parsed);
        if (as_json)
            std::cout << outcome.report.dump(2) << "\n";
        else
            std::cout << jsonio::render_text(outcome.report, quiet);
        return outcome.exit_code;
    } catch (const Error& e) {
        std::cerr << "jcalc: " << e.what() << "\n";
        return e.code() == "SchemaError" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "jcalc: " << e.what() << "\n";
        return 1;
    }
}

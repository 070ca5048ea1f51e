#include <algorithm>
#include <fstream>
#include <iostream>

#include "iwa/config.hpp"
#include "iwa/errors.hpp"
#include "iwa/report.hpp"
#include "iwa/suites.hpp"

int main(int argc, char** argv) {
    using namespace iwa;
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        if (std::find(args.begin(), args.end(), "--help") != args.end() ||
            std::find(args.begin(), args.end(), "-h") != args.end()) {
            std::cout
                << "iwa-verify: finite-truncation verification suites for Iwasawa-algebra "
                   "machinery\n\n"
                   "options:\n"
                   "  --prime P --level L --quotient-exp M --precision N\n"
                   "  --degree-bound D --bruteforce-degree DMAX --power-start S --seed SEED\n"
                   "  --suites a,b,...   (bch graded-ring filtration rho-map frobenius\n"
                   "                      delta-cleaning hypothesis)\n"
                   "  --format human|records   --out PATH   --config FILE   --no-timing\n"
                   "  --inject-fault jacobi\n"
                   "  --bch-samples --commutator-samples --pair-samples --ideal-samples\n"
                   "  --delta-samples --cleaning-samples --table-limit\n\n"
                   "The environment variable IWA_VERIFY_CONFIG names a default config file.\n"
                   "Exit status: 0 all pass, 1 failures, 2 undecidable at this precision.\n";
            return 0;
        }
        RunConfig cfg = parse_config(args);
        std::vector<SuiteReport> reports = run_suite(cfg);

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw io_error("cannot open output file " + cfg.out);
            os = &file;
        }
        if (cfg.format == "records")
            emit_records(*os, reports, cfg.no_timing);
        else
            emit_human(*os, reports);
        return exit_code_for(reports);
    } catch (const iwa::invalid_parameter& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

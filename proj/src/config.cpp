#include "iwa/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iwa/errors.hpp"
#include "iwa/padic.hpp"

namespace iwa {

const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names = {
        "bch", "graded-ring", "filtration", "rho-map", "frobenius", "delta-cleaning",
        "hypothesis"};
    return names;
}

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

void validate_config(const RunConfig& cfg) {
    if (!is_prime(cfg.p)) throw invalid_parameter("p must be prime");
    if (cfg.p == 2 && cfg.l < 2) throw invalid_parameter("p = 2 requires l >= 2");
    if (cfg.p >= 3 && cfg.l < 1) throw invalid_parameter("p >= 3 requires l >= 1");
    if (cfg.m < 1) throw invalid_parameter("quotient exponent m must be >= 1");
    if (cfg.N < cfg.m + cfg.l + 2) throw invalid_parameter("precision rule N >= m + l + 2");
    uint64_t pm = checked_pow_u64(cfg.p, cfg.m);
    if (cfg.D >= pm) throw invalid_parameter("degree bound rule D < p^m (the safe window)");
    if (cfg.format != "human" && cfg.format != "records")
        throw invalid_parameter("format must be 'human' or 'records'");
    if (!cfg.inject_fault.empty() && cfg.inject_fault != "jacobi")
        throw invalid_parameter("unknown fault kind");
    for (const auto& s : cfg.suites) {
        const auto& known = all_suite_names();
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw invalid_parameter("unknown suite '" + s + "'");
    }
}

namespace {

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
    auto get_u32 = [&](const char* key, uint32_t& slot) {
        if (j.contains(key)) slot = j.at(key).get<uint32_t>();
    };
    get_u32("prime", cfg.p);
    get_u32("level", cfg.l);
    get_u32("quotient-exp", cfg.m);
    get_u32("precision", cfg.N);
    get_u32("degree-bound", cfg.D);
    get_u32("bruteforce-degree", cfg.D_max);
    get_u32("power-start", cfg.s);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("no-timing")) cfg.no_timing = j.at("no-timing").get<bool>();
    get_u32("bch-samples", cfg.bch_samples);
    get_u32("commutator-samples", cfg.commutator_samples);
    get_u32("pair-samples", cfg.pair_samples);
    get_u32("ideal-samples", cfg.ideal_samples);
    get_u32("delta-samples", cfg.delta_samples);
    get_u32("cleaning-samples", cfg.cleaning_samples);
    if (j.contains("table-limit")) cfg.table_limit = j.at("table-limit").get<uint64_t>();
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig flags;  // values parsed from the command line
    std::string config_path;
    std::string suites_csv;

    CLI::App app{"truncated Iwasawa-algebra verification driver"};
    app.add_option("--prime", flags.p, "prime p");
    app.add_option("--level", flags.l, "congruence level l");
    app.add_option("--quotient-exp", flags.m, "quotient exponent m");
    app.add_option("--precision", flags.N, "p-adic working precision N");
    app.add_option("--degree-bound", flags.D, "graded degree bound D");
    app.add_option("--bruteforce-degree", flags.D_max, "hypothesis search degree bound");
    app.add_option("--power-start", flags.s, "power-range start s");
    app.add_option("--seed", flags.seed, "random seed");
    app.add_option("--suites", suites_csv, "comma-separated suite selection");
    app.add_option("--format", flags.format, "output format: human or records");
    app.add_option("--out", flags.out, "output path (default stdout)");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--inject-fault", flags.inject_fault, "fault injection: jacobi");
    app.add_flag("--no-timing", flags.no_timing, "zero elapsed_ms fields for stable output");
    app.add_option("--bch-samples", flags.bch_samples, "");
    app.add_option("--commutator-samples", flags.commutator_samples, "");
    app.add_option("--pair-samples", flags.pair_samples, "");
    app.add_option("--ideal-samples", flags.ideal_samples, "");
    app.add_option("--delta-samples", flags.delta_samples, "");
    app.add_option("--cleaning-samples", flags.cleaning_samples, "");
    app.add_option("--table-limit", flags.table_limit, "");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        throw invalid_parameter(std::string("argument parsing: ") + e.what());
    }

    RunConfig cfg;  // defaults

    if (config_path.empty()) {
        if (const char* env = std::getenv("IWA_VERIFY_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw io_error("cannot read config file " + config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw io_error("config file parse: " + std::string(e.what()));
        }
        apply_json(cfg, j);
    }

    // Flags win over the file.
    auto touched = [&](const std::string& name) { return app.count(name) > 0; };
    if (touched("--prime")) cfg.p = flags.p;
    if (touched("--level")) cfg.l = flags.l;
    if (touched("--quotient-exp")) cfg.m = flags.m;
    if (touched("--precision")) cfg.N = flags.N;
    if (touched("--degree-bound")) cfg.D = flags.D;
    if (touched("--bruteforce-degree")) cfg.D_max = flags.D_max;
    if (touched("--power-start")) cfg.s = flags.s;
    if (touched("--seed")) cfg.seed = flags.seed;
    if (touched("--format")) cfg.format = flags.format;
    if (touched("--out")) cfg.out = flags.out;
    if (touched("--inject-fault")) cfg.inject_fault = flags.inject_fault;
    if (touched("--no-timing")) cfg.no_timing = flags.no_timing;
    if (touched("--bch-samples")) cfg.bch_samples = flags.bch_samples;
    if (touched("--commutator-samples")) cfg.commutator_samples = flags.commutator_samples;
    if (touched("--pair-samples")) cfg.pair_samples = flags.pair_samples;
    if (touched("--ideal-samples")) cfg.ideal_samples = flags.ideal_samples;
    if (touched("--delta-samples")) cfg.delta_samples = flags.delta_samples;
    if (touched("--cleaning-samples")) cfg.cleaning_samples = flags.cleaning_samples;
    if (touched("--table-limit")) cfg.table_limit = flags.table_limit;
    if (touched("--suites")) {
        cfg.suites.clear();
        std::stringstream ss(suites_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.suites.push_back(item);
    }

    validate_config(cfg);
    return cfg;
}

} // namespace iwa

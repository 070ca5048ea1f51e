#include "iwa/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace iwa {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "undecidable";
    }
}

const std::vector<std::string>& anchor_registry() {
    static const std::vector<std::string> reg = {
        anchors::shift_congruence,
        anchors::commutator_congruence,
        anchors::power_law,
        anchors::congruent_logs,
        anchors::sum_congruence,
        anchors::matrix_realization,
        anchors::lie_structure,
        anchors::graded_polynomial,
        anchors::commute_mod_j3,
        anchors::symbol_multiplicative,
        anchors::convolution_product,
        anchors::direct_sum,
        anchors::subalgebra_span,
        anchors::filtration_full,
        anchors::filtration_sub,
        anchors::rho_map,
        anchors::derivation_formula,
        anchors::derivation_leibniz,
        anchors::partial_rules,
        anchors::partial_kernel,
        anchors::stable_iff_controlled,
        anchors::reflexive_closure_principal,
        anchors::closure_pseudo_null,
        anchors::pseudo_null_criterion,
        anchors::divides_gcd_laws,
        anchors::delta_definition,
        anchors::delta_positivity,
        anchors::error_symbol,
        anchors::source_schedule,
        anchors::a_closure,
        anchors::cleaning_step_anchor,
        anchors::cleaning_loop_anchor,
        anchors::hypothesis_positive,
        anchors::hypothesis_witness,
        anchors::elimination,
        anchors::family_pipeline,
    };
    return reg;
}

int exit_code_for(const std::vector<SuiteReport>& reports) {
    bool any_fail = false, any_undecidable = false;
    for (const auto& r : reports)
        for (const auto& c : r.checks) {
            if (c.verdict == Verdict::fail) any_fail = true;
            if (c.verdict == Verdict::undecidable) any_undecidable = true;
        }
    if (any_fail) return 1;
    if (any_undecidable) return 2;
    return 0;
}

namespace {

std::vector<CheckRecord> sorted_records(const std::vector<SuiteReport>& reports) {
    std::vector<CheckRecord> recs;
    for (const auto& r : reports)
        for (const auto& c : r.checks) recs.push_back(c);
    std::sort(recs.begin(), recs.end(), [](const CheckRecord& a, const CheckRecord& b) {
        if (a.suite != b.suite) return a.suite < b.suite;
        return a.check_id < b.check_id;
    });
    return recs;
}

} // namespace

void emit_records(std::ostream& os, const std::vector<SuiteReport>& reports, bool zero_timing) {
    for (const auto& c : sorted_records(reports)) {
        nlohmann::json j;
        j["suite"] = c.suite;
        j["check_id"] = c.check_id;
        j["anchor"] = c.anchor;
        j["verdict"] = verdict_name(c.verdict);
        j["witness"] = c.witness;
        j["elapsed_ms"] = zero_timing ? 0 : c.elapsed_ms;
        os << j.dump() << "\n";
    }
}

void emit_human(std::ostream& os, const std::vector<SuiteReport>& reports) {
    for (const auto& r : reports) {
        os << "== suite " << r.suite << " ==\n";
        if (!r.params.empty()) {
            os << "   params:";
            for (const auto& [k, v] : r.params) os << " " << k << "=" << v;
            os << "\n";
        }
        for (const auto& c : r.checks) {
            os << "   [" << std::setw(11) << std::left << verdict_name(c.verdict) << "] "
               << std::setw(38) << std::left << c.check_id << " (" << c.elapsed_ms << " ms)";
            if (!c.witness.empty()) os << "  -- " << c.witness;
            os << "\n";
        }
    }
    int code = exit_code_for(reports);
    os << (code == 0 ? "all checks passed"
                     : code == 1 ? "FAILURES present" : "undecidable checks present")
       << "\n";
}

} // namespace iwa

#pragma once

// Check records and suite reports: deterministic, machine-readable output
// for the verification suites. Each record cites the statement it checks
// through a fixed anchor string from the compiled registry.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace iwa {

enum class Verdict { pass, fail, undecidable };

const char* verdict_name(Verdict v);

struct CheckRecord {
    std::string suite;
    std::string check_id;
    std::string anchor;
    Verdict verdict = Verdict::pass;
    std::string witness;
    int64_t elapsed_ms = 0;
};

struct SuiteReport {
    std::string suite;
    std::map<std::string, std::string> params;
    std::vector<CheckRecord> checks;
};

// The statements the checks certify, in formula form.
namespace anchors {
inline constexpr const char* shift_congruence =
    "Phi(-v + p^k w, v) = p^k w  (mod p^(k+1) L)";
inline constexpr const char* commutator_congruence =
    "(exp u, exp v) = exp([u,v])  (mod G^(p^(k+1)))";
inline constexpr const char* power_law = "exp(m u) = exp(u)^m";
inline constexpr const char* congruent_logs =
    "u = v (mod p^k L)  =>  exp(u) exp(v)^(-1) in G^(p^k)";
inline constexpr const char* sum_congruence = "exp(u + v) = exp(u) exp(v)  (mod G^p)";
inline constexpr const char* matrix_realization =
    "group products agree with the faithful matrix realization";
inline constexpr const char* lie_structure =
    "[.,.] is antisymmetric, satisfies Jacobi, and [L,L] is in p^eps L";
inline constexpr const char* graded_polynomial =
    "gr K[G] = K[y_1..y_d] with dim gr_n = #{alpha : |alpha| = n}";
inline constexpr const char* commute_mod_j3 = "b_i b_j = b_j b_i  (mod J^3)";
inline constexpr const char* symbol_multiplicative = "gr(x y) = gr(x) gr(y)";
inline constexpr const char* convolution_product =
    "b-basis products equal convolution over the finite group";
inline constexpr const char* direct_sum = "K[G] = J^n (+) K[M_<n]";
inline constexpr const char* subalgebra_span =
    "K[N] cap J^n = K[N cap M_>=n], and K[N] is closed under products";
inline constexpr const char* filtration_full = "[a, F_n A] in F_(n - p^k + 1) A";
inline constexpr const char* filtration_sub = "[a, F_n A_1] in F_(n - p^(k+1) + p) A";
inline constexpr const char* rho_map =
    "rho_u(v_j + L_1) = (1/p^k)[u, v_j] + pL is well defined";
inline constexpr const char* derivation_formula = "D_u(y_j) = sum_i c_ij y_i^(p^k)";
inline constexpr const char* derivation_leibniz =
    "{a,-}_theta extends by Leibniz from its generator images";
inline constexpr const char* partial_rules =
    "d_j(sum u_a y^a) = sum a_j u_a y^(a - e_j) is a B_1-linear derivation";
inline constexpr const char* partial_kernel = "D(x) = 0 iff x in B_1";
inline constexpr const char* stable_iff_controlled =
    "I is D-stable iff I = (I cap B_1) B";
inline constexpr const char* reflexive_closure_principal =
    "the reflexive closure of I is xR with x = gcd(I), homogeneous for graded I";
inline constexpr const char* closure_pseudo_null = "xR / I is pseudo-null";
inline constexpr const char* pseudo_null_criterion =
    "R/I is pseudo-null iff gcd(I) is a unit";
inline constexpr const char* divides_gcd_laws =
    "exact division inverts multiplication; gcd divides both arguments with coprime cofactors";
inline constexpr const char* delta_definition =
    "delta(w) = max{k : w in F_n A_1 + F_(n-k) A}, infinite iff w in A_1";
inline constexpr const char* delta_positivity = "delta(w) > 0 iff gr w in B_1";
inline constexpr const char* error_symbol = "Y_w = gr y is homogeneous of degree n + delta";
inline constexpr const char* source_schedule =
    "theta(a^(p^r)) = p^(r+k) - 1 and theta_1 = p theta define a source of derivations";
inline constexpr const char* a_closure =
    "for w in a two-sided ideal I, Y_w lies in the a-closure of gr I";
inline constexpr const char* cleaning_step_anchor = "delta(w u) > delta(w) with u = 1 - c";
inline constexpr const char* cleaning_loop_anchor =
    "the cleaning limit w u = lim w_i lies in A_1";
inline constexpr const char* hypothesis_positive =
    "Y in the a-closure of XB for the listed family forces D(Y) in XB";
inline constexpr const char* hypothesis_witness =
    "the one-step 2-adic family admits Y with D(Y) not in XB";
inline constexpr const char* elimination =
    "eliminating between the r = s, s+1 members yields coprime cofactors for each partial";
inline constexpr const char* family_pipeline =
    "the displayed operators equal the induced derivations of exp(p^r u)";
} // namespace anchors

// Every anchor string used by the suites.
const std::vector<std::string>& anchor_registry();

// 0 when every check passed, 1 when any failed, 2 when none failed but an
// undecidable record is present.
int exit_code_for(const std::vector<SuiteReport>& reports);

// Line-oriented records, one JSON object per check, sorted by
// (suite, check_id); zero_timing wipes elapsed_ms for byte-stable output.
void emit_records(std::ostream& os, const std::vector<SuiteReport>& reports, bool zero_timing);

void emit_human(std::ostream& os, const std::vector<SuiteReport>& reports);

} // namespace iwa

#pragma once

// The delta invariant of a Frobenius pair (A, A1) at finite truncation,
// sources of derivations with their theta schedules, the a-closure test,
// and the cleaning algorithm that multiplies a unit or normal element into
// the subalgebra span one delta level at a time.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iwa/group_algebra.hpp"

namespace iwa {

class FrobeniusPairContext {
  public:
    explicit FrobeniusPairContext(const QuotientAlgebra* A) : A_(A) {}

    const QuotientAlgebra& algebra() const { return *A_; }
    uint32_t t() const { return A_->t(); }

    // delta(w) = (lowest non-subalgebra support degree) - (lowest support
    // degree); nullopt (= infinity) when the support lies in the N-span.
    std::optional<uint32_t> delta(const GroupAlgebraElement& w) const;

    // The symbol Y_w of the error part: gr w when delta = 0, otherwise the
    // symbol of the non-subalgebra part at degree jdeg(w) + delta(w).
    GradedPoly leading_error_symbol(const GroupAlgebraElement& w) const;

    // Definitional route: max{k : w in (A1 cap J^n) + J^(n+k)}, n = jdeg(w),
    // with every space computed by echelon linear algebra from the honest
    // subgroup span and the reference J^n chain. Needs a table-backed
    // quotient; results agree with delta() (acceptance-checked).
    std::optional<uint32_t> delta_bruteforce(const GroupAlgebraElement& w) const;

    // Echelon basis of the span of the subgroup image (the A1 span).
    const FpEchelon& subalgebra_space() const;
    const std::vector<FpEchelon>& jn_spaces() const;

  private:
    const QuotientAlgebra* A_;
    mutable std::unique_ptr<FpEchelon> a1_space_;
    mutable std::vector<FpEchelon> jn_;
};

// A source of derivations a_r = exp(p^r u) with theta(a_r) = p^(r+k) - 1
// and theta1(a_r) = p * theta(a_r).
struct DerivationSource {
    const FrobeniusPairContext* ctx;
    LieElement base;  // u; exp(p^r u) are the members
    uint32_t k;
    int32_t r_max;  // largest r whose induced derivation has its image
                    // degree p^(r+k) strictly inside the safe window

    uint32_t theta(uint32_t r) const;
    DerivationOp induced(uint32_t r) const;  // {a_r, -}_theta(r)
};

// Validates [u, L] in p^k L, [u, L1] in p^(k+1) L, k >= epsilon, and
// certifies the source conditions on the filtration generators for every
// usable member.
DerivationSource make_source(const FrobeniusPairContext& ctx, const LieElement& u, uint32_t k);

// Y lies in the a-closure of XB relative to the members r_min..r_max:
// every induced image of Y is divisible by X. X, Y homogeneous.
bool a_closure_test(const GradedPoly& Y, const GradedPoly& X, const DerivationSource& src,
                    uint32_t r_min, uint32_t r_max);

struct CleaningStep {
    GroupAlgebraElement unit;     // u with delta(w u) > delta(w)
    GroupAlgebraElement cleaned;  // w u
    uint32_t delta_before;
    std::optional<uint32_t> delta_after;
    std::string certificate;      // which graded premise was certified
};

// One step of the cleaning algorithm. Throws in_subalgebra when delta is
// already infinite, premise_failed when the graded premise does not hold
// at this truncation.
CleaningStep cleaning_step(const FrobeniusPairContext& ctx, const GroupAlgebraElement& w);

struct CleaningResult {
    GroupAlgebraElement unit;
    GroupAlgebraElement cleaned;
    std::vector<uint32_t> delta_trace;  // strictly increasing
};

// Iterates cleaning_step until delta = infinity. The input must be a unit
// or a normal element of the quotient.
CleaningResult cleaning_loop(const FrobeniusPairContext& ctx, const GroupAlgebraElement& w);

// wA = Aw as subspaces, via group translates.
bool is_normal(const FrobeniusPairContext& ctx, const GroupAlgebraElement& w);

// Echelon span of the two-sided ideal AwA.
FpEchelon two_sided_ideal_span(const FrobeniusPairContext& ctx, const GroupAlgebraElement& w);

// Monic generator of the reflexive closure of gr I for a two-sided ideal
// given by its span: the gcd of all per-degree symbol spaces.
GradedPoly graded_ideal_closure_generator(const FrobeniusPairContext& ctx, const FpEchelon& span);

} // namespace iwa

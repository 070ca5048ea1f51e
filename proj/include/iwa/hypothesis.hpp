#pragma once

// Explicit derivation families on B = F_p[e, f, h] induced by the sl2
// congruence subgroups, the elimination argument that upgrades membership
// of the family images in XB to membership of all partials, and a bounded
// checker for the derivation hypothesis relative to the listed family.

#include <cstdint>
#include <string>
#include <vector>

#include "iwa/graded_poly.hpp"

namespace iwa {

enum class Sl2SystemKind {
    odd,              // p >= 3, pair (A, A1) with t = 3
    two_step_first,   // p = 2, first descent pair, t = 2, variables (e, f, h)
    two_step_second,  // p = 2, second descent pair, t = 1, variables (h, e, f)
    single_step,      // p = 2, one-step descent, t = 3; lacks the elimination
};

struct DerivationSystem {
    uint32_t p, l, t;
    Sl2SystemKind kind;
    std::vector<std::string> names;  // variable order used by the polynomials
    std::string tag;

    // images[j] += coeff * y_i^(p^(l + r + exp_shift)) for member (label, r)
    struct Term {
        uint32_t j, i;
        int32_t coeff;
        uint32_t exp_shift;
    };
    struct Member {
        std::string label;
        std::vector<Term> terms;
    };
    std::vector<Member> members;

    DerivationOp member_op(std::size_t idx, uint32_t r) const;

    // No members at all: the sanity ceiling for the search.
    static DerivationSystem trivial(uint32_t p, uint32_t l, uint32_t t);
};

DerivationSystem sl2_derivations(uint32_t p, uint32_t l, Sl2SystemKind kind);

struct EliminationStep {
    std::string description;
    bool in_xb;
};

struct EliminationReport {
    bool premises_hold = false;
    bool coprimality_ok = false;
    std::vector<EliminationStep> steps;
    std::vector<bool> partial_in_xb;  // conclusions, indexed by j < t
    bool ok = false;
};

// Replays the elimination: requires every member image of Y at r in
// {s, s+1} to lie in XB (not_in_closure otherwise), certifies the pairwise
// combinations and their coprime coefficients (coprimality_failed when a
// gcd is not a unit), and checks the concluded memberships d_j(Y) in XB.
EliminationReport eliminate_and_check(const GradedPoly& X, const GradedPoly& Y, uint32_t s,
                                      const DerivationSystem& system);

struct HypothesisSearch {
    std::vector<GradedPoly> violations;  // representatives; all of them in
                                         // enumeration mode
    uint64_t candidate_dim = 0;          // sum over degrees of dim V_cand
    uint64_t stable_dim = 0;             // sum over degrees of dim V_ok
    std::string mode;                    // "enumeration", "linear", or mixed
};

enum class SearchMode { automatic, enumeration, linear };

// Searches homogeneous Y of degree <= D_max with every member image (r in
// {s, s+1}) divisible by X but some d_j(Y) not divisible by X. The
// automatic mode enumerates while p^(#monomials) stays small and solves
// per-degree linear systems otherwise. Enumeration counts individual
// nonzero polynomials; linear mode counts subspace dimensions.
HypothesisSearch hypothesis_bruteforce(const DerivationSystem& system, const GradedPoly& X,
                                       uint32_t D_max, uint32_t s,
                                       SearchMode mode = SearchMode::automatic);

// Direct certificate for one candidate: member images in XB, some partial
// outside.
bool is_hypothesis_violation(const DerivationSystem& system, const GradedPoly& X,
                             const GradedPoly& Y, uint32_t s);

} // namespace iwa

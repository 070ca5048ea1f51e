#pragma once

// Degree-truncated snapshots of homogeneous ideals of B = F_p[y_1..y_d]
// as per-degree vector spaces in reduced row-echelon form, plus the two
// sides of the control criterion: stability under the d_j derivations and
// control by B1.

#include <cstdint>
#include <vector>

#include "iwa/fp.hpp"
#include "iwa/graded_poly.hpp"

namespace iwa {

// All monomials of total degree n in nvars variables, grlex-sorted.
std::vector<Mono> monomials_of_degree(uint32_t nvars, uint32_t n);

class TruncatedIdeal {
  public:
    // Generators must be homogeneous and nonzero; D bounds the degrees kept.
    TruncatedIdeal(std::vector<GradedPoly> gens, uint32_t degree_bound);

    uint32_t p() const { return p_; }
    uint32_t nvars() const { return nvars_; }
    uint32_t degree_bound() const { return D_; }
    const std::vector<GradedPoly>& generators() const { return gens_; }
    uint32_t max_generator_degree() const;

    const std::vector<Mono>& degree_monomials(uint32_t n) const { return monos_[n]; }
    const FpEchelon& degree_space(uint32_t n) const { return spaces_[n]; }

    FpVec to_vector(const GradedPoly& f, uint32_t n) const;
    GradedPoly to_poly(const FpVec& v, uint32_t n) const;

    bool contains_homogeneous(const GradedPoly& f) const;

  private:
    uint32_t p_, nvars_, D_;
    std::vector<GradedPoly> gens_;
    std::vector<std::vector<Mono>> monos_;   // per degree
    std::vector<FpEchelon> spaces_;          // per degree
};

// I is D-stable iff d_j maps it into itself; checked on the per-degree
// bases up to degree D-1. Requires D >= max generator degree + p.
bool d_stable_test(const TruncatedIdeal& I, uint32_t t);

// I is controlled by B1 iff (I cap B1) B = I; compared per degree up to D.
// Same degree-bound requirement.
bool control_test(const TruncatedIdeal& I, uint32_t t);

} // namespace iwa

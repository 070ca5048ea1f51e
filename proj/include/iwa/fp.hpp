#pragma once

// Arithmetic and dense linear algebra over the prime field F_p, p small.
// Vectors are std::vector<uint8_t> with entries in [0, p). The echelon
// accumulator keeps rows in reduced row-echelon form so bases are canonical.

#include <cstdint>
#include <vector>

#include "iwa/errors.hpp"

namespace iwa {

struct Fp {
    uint32_t p;

    uint8_t add(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + b) % p); }
    uint8_t sub(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + p - b) % p); }
    uint8_t neg(uint8_t a) const { return static_cast<uint8_t>((p - a) % p); }
    uint8_t mul(uint8_t a, uint8_t b) const {
        return static_cast<uint8_t>((static_cast<uint32_t>(a) * b) % p);
    }
    uint8_t inv(uint8_t a) const;
    uint8_t pow(uint8_t a, uint64_t e) const;
    uint8_t from_int(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += p;
        return static_cast<uint8_t>(r);
    }
};

using FpVec = std::vector<uint8_t>;

// Row space accumulator in reduced row-echelon form.
class FpEchelon {
  public:
    FpEchelon(Fp field, std::size_t ncols) : fp_(field), ncols_(ncols) {}

    // Reduces v against the current rows in place; leftover is the residue.
    void reduce(FpVec& v) const;

    // Inserts v if it enlarges the row space. Returns true when rank grew.
    bool insert(FpVec v);

    bool contains(const FpVec& v) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const std::vector<FpVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const Fp& field() const { return fp_; }

  private:
    Fp fp_;
    std::size_t ncols_;
    std::vector<FpVec> rows_;          // sorted by pivot column
    std::vector<std::size_t> pivots_;  // pivot column per row
};

// Basis of the null space {x : M x = 0}, rows of M given explicitly.
std::vector<FpVec> fp_kernel(Fp fp, const std::vector<FpVec>& rows, std::size_t ncols);

// Intersection of a row space with the coordinate subspace {v : v_i = 0
// for every i with keep[i] == false}.
FpEchelon fp_intersect_coordinates(const FpEchelon& space, const std::vector<bool>& keep);

// Sum of two row spaces.
FpEchelon fp_sum(const FpEchelon& a, const FpEchelon& b);

// Intersection of two row spaces (Zassenhaus).
FpEchelon fp_intersect_spaces(const FpEchelon& a, const FpEchelon& b);

bool fp_same_space(const FpEchelon& a, const FpEchelon& b);

} // namespace iwa

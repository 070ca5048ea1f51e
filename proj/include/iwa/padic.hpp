#pragma once

// Exact arithmetic in Z/p^N with p-adic valuation semantics, and the
// truncated matrix exponential / logarithm used as the Campbell-Hausdorff
// oracle. Values are immutable; precision is a per-computation constant and
// mixing precisions is an error, never a coercion.

#include <cstdint>
#include <vector>

#include "iwa/errors.hpp"

namespace iwa {

// p^e as uint64_t, throwing when the modulus would not fit comfortably.
uint64_t checked_pow_u64(uint64_t p, uint32_t e);

class TruncatedPadic {
  public:
    TruncatedPadic(uint64_t p, uint32_t N, uint64_t value);
    static TruncatedPadic from_int(uint64_t p, uint32_t N, int64_t value);
    static TruncatedPadic zero(uint64_t p, uint32_t N) { return {p, N, 0}; }
    static TruncatedPadic one(uint64_t p, uint32_t N) { return {p, N, 1}; }

    uint64_t prime() const { return p_; }
    uint32_t precision() const { return N_; }
    uint64_t value() const { return value_; }
    uint64_t modulus() const { return pN_; }
    bool is_zero() const { return value_ == 0; }

    // Largest v <= N with p^v | value; N for zero (precision clamp).
    uint32_t valuation() const;

    TruncatedPadic operator+(const TruncatedPadic& o) const;
    TruncatedPadic operator-(const TruncatedPadic& o) const;
    TruncatedPadic operator*(const TruncatedPadic& o) const;
    TruncatedPadic operator-() const;
    bool operator==(const TruncatedPadic& o) const;

    TruncatedPadic invert() const;  // not_a_unit when valuation > 0
    TruncatedPadic times_int(int64_t k) const;

    // Exact division by p^v; throws precision_exhausted when p^v does not
    // divide the stored residue. Result keeps precision N.
    TruncatedPadic divide_by_prime_power(uint32_t v) const;

    // Same residue viewed at a different precision. Reducing (M <= N) is
    // always exact; lifting takes the canonical representative.
    TruncatedPadic at_precision(uint32_t M) const;

  private:
    void check_compatible(const TruncatedPadic& o) const;
    uint64_t p_;
    uint32_t N_;
    uint64_t pN_;
    uint64_t value_;
};

class PadicMatrix {
  public:
    PadicMatrix(uint64_t p, uint32_t N, uint32_t n);  // zero matrix
    static PadicMatrix identity(uint64_t p, uint32_t N, uint32_t n);

    uint64_t prime() const { return p_; }
    uint32_t precision() const { return N_; }
    uint32_t dim() const { return n_; }

    TruncatedPadic entry(uint32_t i, uint32_t j) const;
    uint64_t raw(uint32_t i, uint32_t j) const { return a_[i * n_ + j]; }
    void set(uint32_t i, uint32_t j, const TruncatedPadic& v);
    void set_raw(uint32_t i, uint32_t j, uint64_t v) { a_[i * n_ + j] = v % pN_; }

    PadicMatrix operator+(const PadicMatrix& o) const;
    PadicMatrix operator-(const PadicMatrix& o) const;
    PadicMatrix operator*(const PadicMatrix& o) const;
    PadicMatrix operator-() const;
    bool operator==(const PadicMatrix& o) const;

    PadicMatrix scaled(const TruncatedPadic& c) const;
    PadicMatrix at_precision(uint32_t M) const;

    uint32_t min_entry_valuation() const;  // N for the zero matrix
    bool is_identity() const;

  private:
    void check_compatible(const PadicMatrix& o) const;
    uint64_t p_;
    uint32_t N_;
    uint64_t pN_;
    uint32_t n_;
    std::vector<uint64_t> a_;
};

// Sum of M^k / k! until every further term vanishes mod p^N. Requires every
// entry of M to have valuation >= min_entry_valuation >= 1 (>= 2 when p = 2
// for convergence of the tail bound used here).
PadicMatrix mat_exp(const PadicMatrix& M, uint32_t min_entry_valuation);

// Sum of (-1)^(k+1) (M - I)^k / k; requires M - I entrywise valuation >= eps
// where eps = 2 if p = 2 else 1.
PadicMatrix mat_log(const PadicMatrix& M);

// v_p(k!) by Legendre's formula.
uint32_t valuation_of_factorial(uint64_t p, uint64_t k);

} // namespace iwa

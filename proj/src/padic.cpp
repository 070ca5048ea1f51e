#include "iwa/padic.hpp"

#include <string>

namespace iwa {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Inverse of a unit mod m by extended Euclid.
uint64_t invmod(uint64_t a, uint64_t m) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw not_a_unit("element not invertible at this precision");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

} // namespace

uint64_t checked_pow_u64(uint64_t p, uint32_t e) {
    // Products of residues go through unsigned __int128, so any modulus
    // below 2^62 is safe; signed intermediates stay exact as well.
    const uint64_t limit = uint64_t(1) << 62;
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (r > limit / p)
            throw precision_exhausted("modulus p^" + std::to_string(e) + " exceeds the supported range");
        r *= p;
    }
    return r;
}

TruncatedPadic::TruncatedPadic(uint64_t p, uint32_t N, uint64_t value) : p_(p), N_(N) {
    if (p < 2) throw invalid_parameter("prime must be >= 2");
    if (N < 1) throw invalid_parameter("precision must be >= 1");
    pN_ = checked_pow_u64(p, N);
    value_ = value % pN_;
}

TruncatedPadic TruncatedPadic::from_int(uint64_t p, uint32_t N, int64_t value) {
    TruncatedPadic r(p, N, 0);
    int64_t m = static_cast<int64_t>(r.pN_);
    int64_t v = value % m;
    if (v < 0) v += m;
    r.value_ = static_cast<uint64_t>(v);
    return r;
}

void TruncatedPadic::check_compatible(const TruncatedPadic& o) const {
    if (p_ != o.p_ || N_ != o.N_)
        throw mixed_precision("operands carry different (p, N)");
}

uint32_t TruncatedPadic::valuation() const {
    if (value_ == 0) return N_;
    uint32_t v = 0;
    uint64_t x = value_;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

TruncatedPadic TruncatedPadic::operator+(const TruncatedPadic& o) const {
    check_compatible(o);
    TruncatedPadic r = *this;
    r.value_ = (value_ + o.value_) % pN_;
    return r;
}

TruncatedPadic TruncatedPadic::operator-(const TruncatedPadic& o) const {
    check_compatible(o);
    TruncatedPadic r = *this;
    r.value_ = (value_ + pN_ - o.value_) % pN_;
    return r;
}

TruncatedPadic TruncatedPadic::operator*(const TruncatedPadic& o) const {
    check_compatible(o);
    TruncatedPadic r = *this;
    r.value_ = mulmod(value_, o.value_, pN_);
    return r;
}

TruncatedPadic TruncatedPadic::operator-() const {
    TruncatedPadic r = *this;
    r.value_ = (pN_ - value_) % pN_;
    return r;
}

bool TruncatedPadic::operator==(const TruncatedPadic& o) const {
    return p_ == o.p_ && N_ == o.N_ && value_ == o.value_;
}

TruncatedPadic TruncatedPadic::invert() const {
    if (valuation() > 0) throw not_a_unit("valuation > 0");
    TruncatedPadic r = *this;
    r.value_ = invmod(value_, pN_);
    return r;
}

TruncatedPadic TruncatedPadic::times_int(int64_t k) const {
    int64_t m = static_cast<int64_t>(pN_);
    int64_t kk = k % m;
    if (kk < 0) kk += m;
    TruncatedPadic r = *this;
    r.value_ = mulmod(value_, static_cast<uint64_t>(kk), pN_);
    return r;
}

TruncatedPadic TruncatedPadic::divide_by_prime_power(uint32_t v) const {
    if (v == 0) return *this;
    uint64_t pv = checked_pow_u64(p_, v);
    if (value_ % pv != 0)
        throw precision_exhausted("residue not divisible by p^" + std::to_string(v));
    TruncatedPadic r = *this;
    r.value_ = value_ / pv;
    return r;
}

TruncatedPadic TruncatedPadic::at_precision(uint32_t M) const {
    return {p_, M, value_};
}

PadicMatrix::PadicMatrix(uint64_t p, uint32_t N, uint32_t n)
    : p_(p), N_(N), pN_(checked_pow_u64(p, N)), n_(n), a_(std::size_t(n) * n, 0) {}

PadicMatrix PadicMatrix::identity(uint64_t p, uint32_t N, uint32_t n) {
    PadicMatrix m(p, N, n);
    for (uint32_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

TruncatedPadic PadicMatrix::entry(uint32_t i, uint32_t j) const {
    return {p_, N_, a_[i * n_ + j]};
}

void PadicMatrix::set(uint32_t i, uint32_t j, const TruncatedPadic& v) {
    if (v.prime() != p_ || v.precision() != N_)
        throw mixed_precision("matrix entry carries different (p, N)");
    a_[i * n_ + j] = v.value();
}

void PadicMatrix::check_compatible(const PadicMatrix& o) const {
    if (p_ != o.p_ || N_ != o.N_ || n_ != o.n_)
        throw mixed_precision("matrices carry different (p, N, n)");
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
    check_compatible(o);
    PadicMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + o.a_[k]) % pN_;
    return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
    check_compatible(o);
    PadicMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + pN_ - o.a_[k]) % pN_;
    return r;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
    check_compatible(o);
    PadicMatrix r(p_, N_, n_);
    for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t k = 0; k < n_; ++k) {
            uint64_t aik = a_[i * n_ + k];
            if (!aik) continue;
            for (uint32_t j = 0; j < n_; ++j) {
                uint64_t t = r.a_[i * n_ + j] + mulmod(aik, o.a_[k * n_ + j], pN_);
                r.a_[i * n_ + j] = t % pN_;
            }
        }
    return r;
}

PadicMatrix PadicMatrix::operator-() const {
    PadicMatrix r = *this;
    for (auto& x : r.a_) x = (pN_ - x) % pN_;
    return r;
}

bool PadicMatrix::operator==(const PadicMatrix& o) const {
    return p_ == o.p_ && N_ == o.N_ && n_ == o.n_ && a_ == o.a_;
}

PadicMatrix PadicMatrix::scaled(const TruncatedPadic& c) const {
    if (c.prime() != p_ || c.precision() != N_)
        throw mixed_precision("scalar carries different (p, N)");
    PadicMatrix r = *this;
    for (auto& x : r.a_) x = mulmod(x, c.value(), pN_);
    return r;
}

PadicMatrix PadicMatrix::at_precision(uint32_t M) const {
    PadicMatrix r(p_, M, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] % r.pN_;
    return r;
}

uint32_t PadicMatrix::min_entry_valuation() const {
    uint32_t best = N_;
    for (auto x : a_) {
        if (x == 0) continue;
        uint32_t v = 0;
        uint64_t y = x;
        while (y % p_ == 0) {
            y /= p_;
            ++v;
        }
        if (v < best) best = v;
        if (best == 0) break;
    }
    return best;
}

bool PadicMatrix::is_identity() const {
    return *this == identity(p_, N_, n_);
}

uint32_t valuation_of_factorial(uint64_t p, uint64_t k) {
    uint32_t v = 0;
    while (k) {
        k /= p;
        v += static_cast<uint32_t>(k);
    }
    return v;
}

namespace {

// Exact division of every entry by p^v followed by multiplication with the
// inverse of a unit, all mod p^Nw. The quotient is meaningful mod p^(Nw-v).
PadicMatrix divide_entries(const PadicMatrix& M, uint32_t v, uint64_t unit_inverse) {
    PadicMatrix r = M;
    uint64_t pv = checked_pow_u64(M.prime(), v);
    TruncatedPadic ui(M.prime(), M.precision(), unit_inverse);
    for (uint32_t i = 0; i < M.dim(); ++i)
        for (uint32_t j = 0; j < M.dim(); ++j) {
            uint64_t x = M.raw(i, j);
            if (x % pv != 0)
                throw precision_exhausted("series term not divisible by claimed prime power");
            r.set_raw(i, j, x / pv);
        }
    return r.scaled(ui);
}

} // namespace

PadicMatrix mat_exp(const PadicMatrix& M, uint32_t min_entry_valuation) {
    const uint64_t p = M.prime();
    const uint32_t N = M.precision();
    const uint32_t eps = (p == 2) ? 2 : 1;
    if (min_entry_valuation < eps)
        throw entry_not_small_enough("mat_exp needs entry valuation >= " + std::to_string(eps));
    if (M.min_entry_valuation() < min_entry_valuation)
        throw entry_not_small_enough("matrix entry valuation below the declared bound");

    // Tail cutoff from the non-decreasing envelope
    //   val(M^k / k!) >= s*k - (k-1)/(p-1),  s = min_entry_valuation.
    const uint64_t s = min_entry_valuation;
    uint64_t k_stop = 1;
    while (static_cast<int64_t>(s * k_stop * (p - 1)) - static_cast<int64_t>(k_stop - 1) <
           static_cast<int64_t>(uint64_t(N) * (p - 1)))
        ++k_stop;

    const uint32_t vmax = valuation_of_factorial(p, k_stop - 1);
    const uint32_t Nw = N + vmax;

    PadicMatrix Mw = M.at_precision(Nw);
    PadicMatrix acc = PadicMatrix::identity(p, Nw, M.dim());
    PadicMatrix power = acc;

    uint32_t v_fact = 0;
    uint64_t unit_fact = 1;
    const uint64_t pNw = checked_pow_u64(p, Nw);

    for (uint64_t k = 1; k < k_stop; ++k) {
        power = power * Mw;
        uint64_t kk = k;
        while (kk % p == 0) {
            kk /= p;
            ++v_fact;
        }
        unit_fact = static_cast<uint64_t>((static_cast<unsigned __int128>(unit_fact) * kk) % pNw);
        if (static_cast<int64_t>(s * k) - static_cast<int64_t>(v_fact) < 0)
            throw precision_exhausted("denominator valuation overtakes the numerator bound");
        acc = acc + divide_entries(power, v_fact, invmod(unit_fact, pNw));
    }
    return acc.at_precision(N);
}

PadicMatrix mat_log(const PadicMatrix& M) {
    const uint64_t p = M.prime();
    const uint32_t N = M.precision();
    const uint32_t eps = (p == 2) ? 2 : 1;

    PadicMatrix X = M - PadicMatrix::identity(p, N, M.dim());
    if (X.min_entry_valuation() < eps)
        throw not_congruent_to_identity("mat_log needs M - I entrywise valuation >= " +
                                        std::to_string(eps));

    // Tail cutoff from the non-decreasing envelope
    //   val(X^k / k) >= eps*k - floor(log_p k).
    uint64_t k_stop = 1;
    auto floor_log_p = [p](uint64_t k) {
        uint32_t l = 0;
        while (k >= p) {
            k /= p;
            ++l;
        }
        return l;
    };
    while (static_cast<int64_t>(uint64_t(eps) * k_stop) -
               static_cast<int64_t>(floor_log_p(k_stop)) <
           static_cast<int64_t>(N))
        ++k_stop;

    const uint32_t vmax = floor_log_p(k_stop - 1 > 0 ? k_stop - 1 : 1);
    const uint32_t Nw = N + vmax;
    const uint64_t pNw = checked_pow_u64(p, Nw);

    PadicMatrix Xw = X.at_precision(Nw);
    PadicMatrix acc(p, Nw, M.dim());
    PadicMatrix power = PadicMatrix::identity(p, Nw, M.dim());

    for (uint64_t k = 1; k < k_stop; ++k) {
        power = power * Xw;
        uint64_t kk = k;
        uint32_t vk = 0;
        while (kk % p == 0) {
            kk /= p;
            ++vk;
        }
        PadicMatrix term = divide_entries(power, vk, invmod(kk % pNw, pNw));
        acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    return acc.at_precision(N);
}

} // namespace iwa

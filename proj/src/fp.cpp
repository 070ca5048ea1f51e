#include "iwa/fp.hpp"

#include <algorithm>

namespace iwa {

uint8_t Fp::inv(uint8_t a) const {
    if (a % p == 0) throw not_a_unit("zero has no inverse mod p");
    // Fermat: a^(p-2) mod p.
    return pow(a, p - 2);
}

uint8_t Fp::pow(uint8_t a, uint64_t e) const {
    uint32_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return static_cast<uint8_t>(acc);
}

void FpEchelon::reduce(FpVec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        uint8_t c = v[pivots_[r]];
        if (c == 0) continue;
        const FpVec& row = rows_[r];
        for (std::size_t j = pivots_[r]; j < ncols_; ++j)
            if (row[j]) v[j] = fp_.sub(v[j], fp_.mul(c, row[j]));
    }
}

bool FpEchelon::insert(FpVec v) {
    reduce(v);
    std::size_t piv = ncols_;
    for (std::size_t j = 0; j < ncols_; ++j)
        if (v[j]) { piv = j; break; }
    if (piv == ncols_) return false;

    uint8_t s = fp_.inv(v[piv]);
    for (std::size_t j = piv; j < ncols_; ++j) v[j] = fp_.mul(v[j], s);

    // Back-reduce existing rows so the form stays fully reduced.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        uint8_t c = rows_[r][piv];
        if (c == 0) continue;
        for (std::size_t j = piv; j < ncols_; ++j)
            if (v[j]) rows_[r][j] = fp_.sub(rows_[r][j], fp_.mul(c, v[j]));
    }

    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

bool FpEchelon::contains(const FpVec& v) const {
    FpVec w = v;
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](uint8_t c) { return c == 0; });
}

std::vector<FpVec> fp_kernel(Fp fp, const std::vector<FpVec>& rows, std::size_t ncols) {
    FpEchelon ech(fp, ncols);
    for (const auto& r : rows) ech.insert(r);

    std::vector<bool> is_pivot(ncols, false);
    for (auto piv : ech.pivots()) is_pivot[piv] = true;

    std::vector<FpVec> basis;
    for (std::size_t jfree = 0; jfree < ncols; ++jfree) {
        if (is_pivot[jfree]) continue;
        FpVec x(ncols, 0);
        x[jfree] = 1;
        // RREF rows: pivot coefficient 1, so x[piv] = -row[jfree].
        for (std::size_t r = 0; r < ech.rank(); ++r)
            x[ech.pivots()[r]] = fp.neg(ech.rows()[r][jfree]);
        basis.push_back(std::move(x));
    }
    return basis;
}

FpEchelon fp_intersect_coordinates(const FpEchelon& space, const std::vector<bool>& keep) {
    // Solve c^T R = 0 on the dropped coordinates, where R are the rows.
    const auto& rows = space.rows();
    std::size_t n = space.ncols();
    std::vector<std::size_t> dropped;
    for (std::size_t j = 0; j < n; ++j)
        if (!keep[j]) dropped.push_back(j);

    std::vector<FpVec> constraint(rows.size(), FpVec(dropped.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < dropped.size(); ++k)
            constraint[r][k] = rows[r][dropped[k]];

    // Kernel over the row-coefficient space: rows of the constraint matrix
    // transposed, i.e. vectors c with sum_r c_r * constraint[r] = 0.
    std::vector<FpVec> tposed(dropped.size(), FpVec(rows.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < dropped.size(); ++k)
            tposed[k][r] = constraint[r][k];

    auto coeffs = fp_kernel(space.field(), tposed, rows.size());

    FpEchelon out(space.field(), n);
    for (const auto& c : coeffs) {
        FpVec v(n, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!c[r]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (rows[r][j]) v[j] = space.field().add(v[j], space.field().mul(c[r], rows[r][j]));
        }
        out.insert(std::move(v));
    }
    return out;
}

FpEchelon fp_sum(const FpEchelon& a, const FpEchelon& b) {
    FpEchelon out = a;
    for (const auto& r : b.rows()) out.insert(r);
    return out;
}

FpEchelon fp_intersect_spaces(const FpEchelon& a, const FpEchelon& b) {
    // Zassenhaus: echelonize rows (u | u) for u in a and (w | 0) for w in b;
    // rows whose left half vanished carry intersection vectors on the right.
    const std::size_t n = a.ncols();
    FpEchelon big(a.field(), 2 * n);
    for (const auto& u : a.rows()) {
        FpVec v(2 * n, 0);
        std::copy(u.begin(), u.end(), v.begin());
        std::copy(u.begin(), u.end(), v.begin() + n);
        big.insert(std::move(v));
    }
    for (const auto& w : b.rows()) {
        FpVec v(2 * n, 0);
        std::copy(w.begin(), w.end(), v.begin());
        big.insert(std::move(v));
    }
    FpEchelon out(a.field(), n);
    for (std::size_t r = 0; r < big.rank(); ++r) {
        if (big.pivots()[r] < n) continue;
        out.insert(FpVec(big.rows()[r].begin() + n, big.rows()[r].end()));
    }
    return out;
}

bool fp_same_space(const FpEchelon& a, const FpEchelon& b) {
    if (a.rank() != b.rank()) return false;
    for (const auto& r : a.rows())
        if (!b.contains(r)) return false;
    return true;
}

} // namespace iwa

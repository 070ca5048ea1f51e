#include "iwa/graded_ideal.hpp"

#include <algorithm>

namespace iwa {

std::vector<Mono> monomials_of_degree(uint32_t nvars, uint32_t n) {
    std::vector<Mono> out;
    Mono m{};
    // Lexicographic backtracking over exponent vectors summing to n.
    auto rec = [&](auto&& self, uint32_t var, uint32_t rest) -> void {
        if (var + 1 == nvars) {
            m[var] = static_cast<uint16_t>(rest);
            out.push_back(m);
            return;
        }
        for (uint32_t e = 0; e <= rest; ++e) {
            m[var] = static_cast<uint16_t>(e);
            self(self, var + 1, rest - e);
        }
        m[var] = 0;
    };
    if (nvars == 0) {
        if (n == 0) out.push_back(m);
        return out;
    }
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), MonoGrlexLess{});
    return out;
}

TruncatedIdeal::TruncatedIdeal(std::vector<GradedPoly> gens, uint32_t degree_bound)
    : D_(degree_bound), gens_(std::move(gens)) {
    if (gens_.empty()) throw zero_ideal("truncated ideal needs at least one generator");
    p_ = gens_[0].p();
    nvars_ = gens_[0].nvars();
    for (const auto& g : gens_) {
        if (g.is_zero()) throw zero_ideal("zero generator");
        if (!g.is_homogeneous()) throw invalid_parameter("generators must be homogeneous");
        if (g.p() != p_ || g.nvars() != nvars_)
            throw invalid_parameter("generators over different rings");
    }

    monos_.reserve(D_ + 1);
    for (uint32_t n = 0; n <= D_; ++n) monos_.push_back(monomials_of_degree(nvars_, n));

    Fp fp{p_};
    for (uint32_t n = 0; n <= D_; ++n) {
        FpEchelon space(fp, monos_[n].size());
        for (const auto& g : gens_) {
            uint32_t dg = g.degree();
            if (dg > n) continue;
            for (const auto& m : monos_[n - dg])
                space.insert(to_vector(g.times_monomial(m, 1), n));
        }
        spaces_.push_back(std::move(space));
    }
}

uint32_t TruncatedIdeal::max_generator_degree() const {
    uint32_t d = 0;
    for (const auto& g : gens_) d = std::max(d, g.degree());
    return d;
}

FpVec TruncatedIdeal::to_vector(const GradedPoly& f, uint32_t n) const {
    const auto& ms = monos_[n];
    FpVec v(ms.size(), 0);
    for (const auto& [m, c] : f.terms()) {
        if (mono_degree(m) != n) throw invalid_parameter("polynomial is not homogeneous of degree n");
        auto it = std::lower_bound(ms.begin(), ms.end(), m, MonoGrlexLess{});
        v[static_cast<std::size_t>(it - ms.begin())] = c;
    }
    return v;
}

GradedPoly TruncatedIdeal::to_poly(const FpVec& v, uint32_t n) const {
    GradedPoly f(p_, nvars_);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) f.add_term(monos_[n][i], v[i]);
    return f;
}

bool TruncatedIdeal::contains_homogeneous(const GradedPoly& f) const {
    if (f.is_zero()) return true;
    uint32_t n = f.degree();
    if (n > D_) throw degree_bound_too_small("membership query beyond the degree bound");
    return spaces_[n].contains(to_vector(f, n));
}

namespace {

void require_margin(const TruncatedIdeal& I) {
    if (I.degree_bound() < I.max_generator_degree() + I.p())
        throw degree_bound_too_small("need D >= max generator degree + p");
}

} // namespace

bool d_stable_test(const TruncatedIdeal& I, uint32_t t) {
    require_margin(I);
    for (uint32_t n = 1; n + 1 <= I.degree_bound(); ++n) {
        const FpEchelon& space = I.degree_space(n);
        for (const auto& row : space.rows()) {
            GradedPoly f = I.to_poly(row, n);
            for (uint32_t j = 0; j < t; ++j) {
                GradedPoly df = partial_j(f, j, t);
                if (df.is_zero()) continue;
                if (!I.degree_space(n - 1).contains(I.to_vector(df, n - 1))) return false;
            }
        }
    }
    return true;
}

bool control_test(const TruncatedIdeal& I, uint32_t t) {
    require_margin(I);
    const uint32_t D = I.degree_bound();
    Fp fp{I.p()};

    // Per-degree bases of I cap B1.
    std::vector<FpEchelon> cap;
    cap.reserve(D + 1);
    for (uint32_t k = 0; k <= D; ++k) {
        const auto& ms = I.degree_monomials(k);
        std::vector<bool> keep(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) keep[i] = is_b1_monomial(ms[i], t, I.p());
        cap.push_back(fp_intersect_coordinates(I.degree_space(k), keep));
    }

    for (uint32_t n = 0; n <= D; ++n) {
        FpEchelon regen(fp, I.degree_monomials(n).size());
        for (uint32_t k = 0; k <= n; ++k) {
            for (const auto& row : cap[k].rows()) {
                GradedPoly w = I.to_poly(row, k);
                for (const auto& m : I.degree_monomials(n - k))
                    regen.insert(I.to_vector(w.times_monomial(m, 1), n));
            }
        }
        if (!fp_same_space(regen, I.degree_space(n))) return false;
    }
    return true;
}

} // namespace iwa

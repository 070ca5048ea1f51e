#include "iwa/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "iwa/fp.hpp"
#include "iwa/graded_ideal.hpp"
#include "iwa/padic.hpp"

namespace iwa {

namespace {

constexpr uint32_t kNumVars = 3;

GradedPoly power_of(uint32_t p, uint32_t var, uint32_t exponent) {
    return GradedPoly::variable(p, kNumVars, var, exponent);
}

} // namespace

DerivationOp DerivationSystem::member_op(std::size_t idx, uint32_t r) const {
    const Member& mem = members.at(idx);
    std::vector<GradedPoly> images(kNumVars, GradedPoly::zero(p, kNumVars));
    Fp fp{p};
    for (const Term& term : mem.terms) {
        uint32_t expo = static_cast<uint32_t>(checked_pow_u64(p, l + r + term.exp_shift));
        Mono m{};
        m[term.i] = static_cast<uint16_t>(expo);
        images[term.j].add_term(m, fp.from_int(term.coeff));
    }
    return DerivationOp(t, std::move(images));
}

DerivationSystem DerivationSystem::trivial(uint32_t p, uint32_t l, uint32_t t) {
    DerivationSystem sys;
    sys.p = p;
    sys.l = l;
    sys.t = t;
    sys.kind = Sl2SystemKind::odd;
    sys.names = {"e", "f", "h"};
    sys.tag = "trivial family";
    return sys;
}

DerivationSystem sl2_derivations(uint32_t p, uint32_t l, Sl2SystemKind kind) {
    DerivationSystem sys;
    sys.p = p;
    sys.l = l;
    sys.kind = kind;

    if (kind == Sl2SystemKind::odd) {
        if (p < 3 || l < 1) throw unsupported_parameters("odd family needs p >= 3, l >= 1");
        sys.t = 3;
        sys.names = {"e", "f", "h"};
        sys.tag = "sl2 family, p >= 3";
        sys.members = {
            {"e", {{1, 2, 1, 0}, {2, 0, -2, 0}}},  // h^P df - 2 e^P dh
            {"f", {{0, 2, -1, 0}, {2, 1, 2, 0}}},  // -h^P de + 2 f^P dh
            {"h", {{0, 0, 2, 0}, {1, 1, -2, 0}}},  // 2 e^P de - 2 f^P df
        };
        return sys;
    }

    if (p != 2 || l < 2) throw unsupported_parameters("2-adic families need p = 2, l >= 2");

    switch (kind) {
        case Sl2SystemKind::two_step_first:
            sys.t = 2;
            sys.names = {"e", "f", "h"};
            sys.tag = "sl2 two-step descent, first pair";
            sys.members = {
                {"e", {{1, 2, 1, 0}}},             // h^P df
                {"f", {{0, 2, 1, 0}}},             // h^P de
                {"h", {{0, 0, 1, 1}, {1, 1, 1, 1}}},  // e^(pP) de + f^(pP) df
            };
            return sys;
        case Sl2SystemKind::two_step_second:
            sys.t = 1;
            sys.names = {"h", "e", "f"};
            sys.tag = "sl2 two-step descent, second pair";
            sys.members = {
                {"e", {{0, 1, 1, 1}}},  // e^(pP) dh
                {"f", {{0, 2, 1, 1}}},  // f^(pP) dh
            };
            return sys;
        case Sl2SystemKind::single_step:
            sys.t = 3;
            sys.names = {"e", "f", "h"};
            sys.tag = "sl2 one-step descent at p = 2";
            sys.members = {
                {"e", {{1, 2, 1, 0}}},                // h^P df
                {"f", {{0, 2, 1, 0}}},                // h^P de
                {"h", {{0, 0, 1, 1}, {1, 1, 1, 1}}},  // e^(pP) de + f^(pP) df
            };
            return sys;
        default:
            throw unsupported_parameters("unknown system kind");
    }
}

namespace {

struct Images {
    // img[gen][0] at r = s, img[gen][1] at r = s + 1
    std::vector<std::array<GradedPoly, 2>> img;
};

Images member_images(const DerivationSystem& sys, const GradedPoly& Y, uint32_t s) {
    Images out;
    for (std::size_t g = 0; g < sys.members.size(); ++g)
        out.img.push_back({apply_derivation(sys.member_op(g, s), Y),
                           apply_derivation(sys.member_op(g, s + 1), Y)});
    return out;
}

void require_premises(const DerivationSystem& sys, const GradedPoly& X, const Images& images) {
    for (std::size_t g = 0; g < sys.members.size(); ++g)
        for (int rr = 0; rr < 2; ++rr)
            if (!divides(X, images.img[g][rr]))
                throw not_in_closure("image of member " + sys.members[g].label +
                                     " is not divisible by X");
}

void check_identity(const GradedPoly& combo, const GradedPoly& cofactor,
                    const GradedPoly& partial) {
    if (!(combo + cofactor * partial).is_zero() && !(combo - cofactor * partial).is_zero())
        throw error("elimination replay produced an unexpected combination");
}

} // namespace

EliminationReport eliminate_and_check(const GradedPoly& X, const GradedPoly& Y, uint32_t s,
                                      const DerivationSystem& sys) {
    if (X.is_zero() || !X.is_homogeneous() || !Y.is_homogeneous())
        throw invalid_parameter("elimination needs nonzero homogeneous X and homogeneous Y");
    if (sys.kind == Sl2SystemKind::single_step)
        throw unsupported_parameters("the one-step 2-adic family has no elimination scheme");

    const uint32_t p = sys.p;
    Fp fp{p};
    EliminationReport rep;
    Images images = member_images(sys, Y, s);
    require_premises(sys, X, images);
    rep.premises_hold = true;
    rep.coprimality_ok = true;

    auto record = [&](const std::string& what, const GradedPoly& poly) {
        bool ok = divides(X, poly);
        rep.steps.push_back({what, ok});
        return ok;
    };
    auto coprime = [&](const GradedPoly& a, const GradedPoly& b) {
        GradedPoly g = multivariate_gcd(a, b);
        bool unit = g.is_constant() && !g.is_zero();
        if (!unit) rep.coprimality_ok = false;
        return unit;
    };

    const uint32_t P = static_cast<uint32_t>(checked_pow_u64(p, sys.l + s));

    if (sys.kind == Sl2SystemKind::odd) {
        // Variables (e, f, h) = (0, 1, 2); members in order e, f, h.
        GradedPoly de = partial_j(Y, 0, sys.t), df = partial_j(Y, 1, sys.t),
                   dh = partial_j(Y, 2, sys.t);
        const uint32_t Pq = P * (p - 1);
        GradedPoly hq = power_of(p, 2, Pq), eq = power_of(p, 0, Pq), fq = power_of(p, 1, Pq);

        GradedPoly combo_e = images.img[0][0] * hq - images.img[0][1];
        GradedPoly cof_e = (power_of(p, 0, P) * (hq - eq)).scaled(fp.from_int(2));
        check_identity(combo_e, cof_e, dh);
        record("eliminate df between the e-members", combo_e);

        GradedPoly combo_f = images.img[1][0] * hq - images.img[1][1];
        GradedPoly cof_f = (power_of(p, 1, P) * (hq - fq)).scaled(fp.from_int(2));
        check_identity(combo_f, cof_f, dh);
        record("eliminate de between the f-members", combo_f);

        if (!coprime(cof_e, cof_f)) throw coprimality_failed("dh cofactors share a factor");
        bool ok_h = record("conclude dh(Y) in XB", dh);

        GradedPoly lhs_f = images.img[0][0] + (power_of(p, 0, P) * dh).scaled(fp.from_int(2));
        check_identity(lhs_f, -power_of(p, 2, P), df);
        record("isolate h^P df from the e-member", lhs_f);
        GradedPoly combo_hf = images.img[2][0] * eq - images.img[2][1];
        GradedPoly cof_hf = (power_of(p, 1, P) * (fq - eq)).scaled(fp.from_int(2));
        check_identity(combo_hf, cof_hf, df);
        record("eliminate de between the h-members", combo_hf);
        if (!coprime(power_of(p, 2, P), cof_hf))
            throw coprimality_failed("df cofactors share a factor");
        bool ok_f = record("conclude df(Y) in XB", df);

        GradedPoly lhs_e = (power_of(p, 1, P) * dh).scaled(fp.from_int(2)) - images.img[1][0];
        check_identity(lhs_e, -power_of(p, 2, P), de);
        record("isolate h^P de from the f-member", lhs_e);
        GradedPoly combo_he = images.img[2][0] * fq - images.img[2][1];
        GradedPoly cof_he = (power_of(p, 0, P) * (eq - fq)).scaled(fp.from_int(2));
        check_identity(combo_he, cof_he, de);
        record("eliminate df between the h-members", combo_he);
        if (!coprime(power_of(p, 2, P), cof_he))
            throw coprimality_failed("de cofactors share a factor");
        bool ok_e = record("conclude de(Y) in XB", de);

        rep.partial_in_xb = {ok_e, ok_f, ok_h};
        rep.ok = ok_e && ok_f && ok_h;
        return rep;
    }

    if (sys.kind == Sl2SystemKind::two_step_first) {
        // Variables (e, f, h); members e, f, h; t = 2.
        GradedPoly de = partial_j(Y, 0, sys.t), df = partial_j(Y, 1, sys.t);
        const uint32_t Q = P * p;
        GradedPoly eQ = power_of(p, 0, Q), fQ = power_of(p, 1, Q), hP = power_of(p, 2, P);

        GradedPoly combo_f = images.img[2][0] * eQ - images.img[2][1];
        GradedPoly cof_f = power_of(p, 1, Q) * (eQ - fQ);
        check_identity(combo_f, cof_f, df);
        record("eliminate de between the h-members", combo_f);
        if (!coprime(hP, cof_f)) throw coprimality_failed("df cofactors share a factor");
        check_identity(images.img[0][0], -hP, df);
        record("the e-member is h^P df", images.img[0][0]);
        bool ok_f = record("conclude df(Y) in XB", df);

        GradedPoly combo_e = images.img[2][0] * fQ - images.img[2][1];
        GradedPoly cof_e = power_of(p, 0, Q) * (fQ - eQ);
        check_identity(combo_e, cof_e, de);
        record("eliminate df between the h-members", combo_e);
        if (!coprime(hP, cof_e)) throw coprimality_failed("de cofactors share a factor");
        bool ok_e = record("conclude de(Y) in XB", de);

        rep.partial_in_xb = {ok_e, ok_f};
        rep.ok = ok_e && ok_f;
        return rep;
    }

    // two_step_second: variables (h, e, f); members e, f; t = 1.
    GradedPoly dh = partial_j(Y, 0, sys.t);
    const uint32_t Q = P * p;
    check_identity(images.img[0][0], -power_of(p, 1, Q), dh);
    check_identity(images.img[1][0], -power_of(p, 2, Q), dh);
    record("the e-member is e^(pP) dh", images.img[0][0]);
    record("the f-member is f^(pP) dh", images.img[1][0]);
    if (!coprime(power_of(p, 1, Q), power_of(p, 2, Q)))
        throw coprimality_failed("dh cofactors share a factor");
    bool ok_h = record("conclude dh(Y) in XB", dh);
    rep.partial_in_xb = {ok_h};
    rep.ok = ok_h;
    return rep;
}

bool is_hypothesis_violation(const DerivationSystem& sys, const GradedPoly& X,
                             const GradedPoly& Y, uint32_t s) {
    for (std::size_t g = 0; g < sys.members.size(); ++g)
        for (uint32_t r = s; r <= s + 1; ++r)
            if (!divides(X, apply_derivation(sys.member_op(g, r), Y))) return false;
    for (uint32_t j = 0; j < sys.t; ++j)
        if (!divides(X, partial_j(Y, j, sys.t))) return true;
    return false;
}

namespace {

// Residual rows of a linear map (unknown coefficients -> polynomial) after
// reduction modulo the per-degree spans of XB.
struct XbReducer {
    const GradedPoly* X;
    std::map<uint32_t, std::pair<std::vector<Mono>, FpEchelon>> spaces;

    const std::pair<std::vector<Mono>, FpEchelon>& space(uint32_t deg, uint32_t p) {
        auto it = spaces.find(deg);
        if (it != spaces.end()) return it->second;
        auto monos = monomials_of_degree(kNumVars, deg);
        FpEchelon ech(Fp{p}, monos.size());
        if (deg >= X->degree()) {
            for (const auto& m : monomials_of_degree(kNumVars, deg - X->degree())) {
                GradedPoly g = X->times_monomial(m, 1);
                FpVec v(monos.size(), 0);
                for (const auto& [mm, cc] : g.terms()) {
                    auto pos = std::lower_bound(monos.begin(), monos.end(), mm, MonoGrlexLess{});
                    v[static_cast<std::size_t>(pos - monos.begin())] = cc;
                }
                ech.insert(std::move(v));
            }
        }
        return spaces.emplace(deg, std::make_pair(std::move(monos), std::move(ech)))
            .first->second;
    }

    // Appends, for each homogeneous part of `g`, its residual mod XB as
    // entries of constraint rows keyed by (constraint block, degree,
    // monomial). Distinct blocks never share rows.
    using RowKey = std::tuple<uint32_t, uint32_t, std::size_t>;
    void accumulate(const GradedPoly& g, uint32_t block, std::size_t unknown,
                    std::size_t nunknowns, std::map<RowKey, FpVec>& rows, uint32_t p) {
        if (g.is_zero()) return;
        for (uint32_t deg = g.low_degree(); deg <= g.degree(); ++deg) {
            GradedPoly part = g.homogeneous_component(deg);
            if (part.is_zero()) continue;
            auto& [monos, ech] = space(deg, p);
            FpVec v(monos.size(), 0);
            for (const auto& [mm, cc] : part.terms()) {
                auto pos = std::lower_bound(monos.begin(), monos.end(), mm, MonoGrlexLess{});
                v[static_cast<std::size_t>(pos - monos.begin())] = cc;
            }
            ech.reduce(v);
            for (std::size_t coord = 0; coord < v.size(); ++coord) {
                if (!v[coord]) continue;
                RowKey key{block, deg, coord};
                auto it = rows.find(key);
                if (it == rows.end()) it = rows.emplace(key, FpVec(nunknowns, 0)).first;
                it->second[unknown] = v[coord];
            }
        }
    }
};

} // namespace

HypothesisSearch hypothesis_bruteforce(const DerivationSystem& sys, const GradedPoly& X,
                                       uint32_t D_max, uint32_t s, SearchMode mode) {
    if (X.is_zero() || !X.is_homogeneous())
        throw invalid_parameter("the target X must be nonzero homogeneous");
    const uint32_t p = sys.p;
    Fp fp{p};
    HypothesisSearch out;
    bool used_enum = false, used_linear = false;

    for (uint32_t n = 1; n <= D_max; ++n) {
        auto monos = monomials_of_degree(kNumVars, n);
        if (monos.size() > 5000)
            throw search_space_too_large("too many monomials at degree " + std::to_string(n));

        // Enumeration while p^#monomials is small, linear algebra beyond.
        double log2_space = static_cast<double>(monos.size()) * std::log2(double(p));
        bool enumerate = mode == SearchMode::enumeration ||
                         (mode == SearchMode::automatic && log2_space <= 20.0);
        if (enumerate && log2_space > 26.0)
            throw search_space_too_large("enumeration over 2^26 candidates refused");
        if (enumerate) {
            used_enum = true;
            std::vector<DerivationOp> ops;
            for (std::size_t g = 0; g < sys.members.size(); ++g)
                for (uint32_t r = s; r <= s + 1; ++r) ops.push_back(sys.member_op(g, r));
            std::vector<uint8_t> coeff(monos.size(), 0);
            uint64_t cand = 0, ok = 0;
            while (true) {
                std::size_t i = 0;
                while (i < coeff.size() && coeff[i] + 1u == p) coeff[i++] = 0;
                if (i == coeff.size()) break;
                ++coeff[i];
                GradedPoly Y(p, kNumVars);
                for (std::size_t q = 0; q < monos.size(); ++q)
                    if (coeff[q]) Y.add_term(monos[q], coeff[q]);
                bool in_family_closure = true;
                for (const auto& op : ops) {
                    if (!divides(X, apply_derivation(op, Y))) {
                        in_family_closure = false;
                        break;
                    }
                }
                if (!in_family_closure) continue;
                ++cand;
                bool stable = true;
                for (uint32_t j = 0; j < sys.t; ++j)
                    if (!divides(X, partial_j(Y, j, sys.t))) {
                        stable = false;
                        break;
                    }
                if (stable)
                    ++ok;
                else
                    out.violations.push_back(std::move(Y));
            }
            out.candidate_dim += cand;
            out.stable_dim += ok;
            continue;
        }

        used_linear = true;
        XbReducer reducer{&X, {}};
        std::map<XbReducer::RowKey, FpVec> cand_rows;
        for (std::size_t q = 0; q < monos.size(); ++q) {
            GradedPoly ym = GradedPoly::monomial(p, kNumVars, monos[q], 1);
            for (std::size_t g = 0; g < sys.members.size(); ++g)
                for (uint32_t r = s; r <= s + 1; ++r)
                    reducer.accumulate(apply_derivation(sys.member_op(g, r), ym),
                                       static_cast<uint32_t>(2 * g + (r - s)), q, monos.size(),
                                       cand_rows, p);
        }
        std::vector<FpVec> rows;
        rows.reserve(cand_rows.size());
        for (auto& [key, row] : cand_rows) rows.push_back(row);
        auto cand_basis = fp_kernel(fp, rows, monos.size());

        std::map<XbReducer::RowKey, FpVec> all_rows = cand_rows;
        for (std::size_t q = 0; q < monos.size(); ++q) {
            GradedPoly ym = GradedPoly::monomial(p, kNumVars, monos[q], 1);
            for (uint32_t j = 0; j < sys.t; ++j)
                reducer.accumulate(partial_j(ym, j, sys.t), 1000 + j, q, monos.size(), all_rows,
                                   p);
        }
        std::vector<FpVec> rows2;
        rows2.reserve(all_rows.size());
        for (auto& [key, row] : all_rows) rows2.push_back(row);
        auto ok_basis = fp_kernel(fp, rows2, monos.size());

        out.candidate_dim += cand_basis.size();
        out.stable_dim += ok_basis.size();
        if (ok_basis.size() < cand_basis.size()) {
            for (const auto& vec : cand_basis) {
                GradedPoly Y(p, kNumVars);
                for (std::size_t q = 0; q < monos.size(); ++q)
                    if (vec[q]) Y.add_term(monos[q], vec[q]);
                if (is_hypothesis_violation(sys, X, Y, s)) out.violations.push_back(std::move(Y));
            }
        }
    }

    out.mode = used_enum && used_linear ? "enumeration+linear"
               : used_enum              ? "enumeration"
                                        : "linear";
    return out;
}

} // namespace iwa

#include "iwa/lie.hpp"

#include <algorithm>
#include <string>

namespace iwa {

LieElement LieElement::operator+(const LieElement& o) const {
    if (owner_ != o.owner_) throw mixed_algebra("elements of different algebras");
    std::vector<TruncatedPadic> r;
    r.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.push_back(c_[i] + o.c_[i]);
    return {owner_, std::move(r)};
}

LieElement LieElement::operator-(const LieElement& o) const {
    if (owner_ != o.owner_) throw mixed_algebra("elements of different algebras");
    std::vector<TruncatedPadic> r;
    r.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.push_back(c_[i] - o.c_[i]);
    return {owner_, std::move(r)};
}

LieElement LieElement::operator-() const {
    std::vector<TruncatedPadic> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(-x);
    return {owner_, std::move(r)};
}

bool LieElement::operator==(const LieElement& o) const {
    return owner_ == o.owner_ && c_ == o.c_;
}

LieElement LieElement::times_int(int64_t k) const {
    std::vector<TruncatedPadic> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x.times_int(k));
    return {owner_, std::move(r)};
}

LieElement LieElement::times_prime_power(uint32_t k) const {
    if (c_.empty()) return *this;
    int64_t pk = static_cast<int64_t>(checked_pow_u64(c_[0].prime(), k) % c_[0].modulus());
    return times_int(pk);
}

LieElement LieElement::scaled(const TruncatedPadic& s) const {
    std::vector<TruncatedPadic> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    return {owner_, std::move(r)};
}

bool LieElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const TruncatedPadic& x) { return x.is_zero(); });
}

uint32_t LieElement::min_valuation() const {
    uint32_t best = c_.empty() ? 0 : c_[0].precision();
    for (const auto& x : c_) best = std::min(best, x.valuation());
    return best;
}

PowerfulLieAlgebra::PowerfulLieAlgebra(const Init& init, bool run_validate)
    : p_(init.p), N_(init.N), eps_(epsilon_for(init.p)), d_(init.rank), n_(init.matrix_dim),
      name_(init.name) {
    if (init.structure.size() != std::size_t(d_) * d_ * d_)
        throw invalid_parameter("structure constant array has wrong size");
    if (init.realization.size() != d_ || init.recovery.size() != d_)
        throw invalid_parameter("realization data has wrong size");

    uint32_t max_scale = 0;
    min_scale_ = UINT32_MAX;
    for (const auto& slot : init.recovery) {
        max_scale = std::max(max_scale, slot.scale);
        min_scale_ = std::min(min_scale_, slot.scale);
    }
    Nmat_ = N_ + max_scale;
    recovery_ = init.recovery;

    c_.reserve(init.structure.size());
    for (int64_t v : init.structure) c_.push_back(TruncatedPadic::from_int(p_, N_, v));

    real_.reserve(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        PadicMatrix m(p_, Nmat_, n_);
        if (init.realization[i].size() != std::size_t(n_) * n_)
            throw invalid_parameter("realization matrix has wrong size");
        for (uint32_t r = 0; r < n_; ++r)
            for (uint32_t cidx = 0; cidx < n_; ++cidx)
                m.set(r, cidx, TruncatedPadic::from_int(p_, Nmat_, init.realization[i][r * n_ + cidx]));
        real_.push_back(std::move(m));
    }

    for (uint32_t i = 0; i < d_; ++i) {
        if (real_[i].min_entry_valuation() < eps_)
            throw entry_not_small_enough("realization of basis " + std::to_string(i) +
                                         " has entries of valuation < epsilon");
        const auto& slot = recovery_[i];
        uint64_t ps = checked_pow_u64(p_, slot.scale);
        if (real_[i].raw(slot.row, slot.col) % ps != 0 ||
            (real_[i].raw(slot.row, slot.col) / ps) % p_ == 0)
            throw invalid_parameter("recovery slot not a unit multiple of p^scale");
        for (uint32_t j = 0; j < d_; ++j)
            if (j != i && real_[j].raw(slot.row, slot.col) != 0)
                throw invalid_parameter("recovery slots of basis matrices overlap");
    }

    if (run_validate) validate();
}

void PowerfulLieAlgebra::check_owner(const LieElement& u) const {
    if (u.owner() != this) throw mixed_algebra("element does not belong to this algebra");
}

LieElement PowerfulLieAlgebra::element(const std::vector<int64_t>& coords) const {
    if (coords.size() != d_) throw invalid_parameter("coordinate vector has wrong length");
    std::vector<TruncatedPadic> c;
    c.reserve(d_);
    for (int64_t v : coords) c.push_back(TruncatedPadic::from_int(p_, N_, v));
    return {this, std::move(c)};
}

LieElement PowerfulLieAlgebra::zero() const {
    return {this, std::vector<TruncatedPadic>(d_, TruncatedPadic::zero(p_, N_))};
}

LieElement PowerfulLieAlgebra::basis(uint32_t i) const {
    auto z = zero();
    std::vector<TruncatedPadic> c = z.coords();
    c[i] = TruncatedPadic::one(p_, N_);
    return {this, std::move(c)};
}

const TruncatedPadic& PowerfulLieAlgebra::structure_constant(uint32_t i, uint32_t j,
                                                             uint32_t k) const {
    return c_[(std::size_t(i) * d_ + j) * d_ + k];
}

LieElement PowerfulLieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
    check_owner(a);
    check_owner(b);
    std::vector<TruncatedPadic> r(d_, TruncatedPadic::zero(p_, N_));
    for (uint32_t i = 0; i < d_; ++i) {
        if (a.coord(i).is_zero()) continue;
        for (uint32_t j = 0; j < d_; ++j) {
            if (b.coord(j).is_zero()) continue;
            TruncatedPadic ab = a.coord(i) * b.coord(j);
            for (uint32_t k = 0; k < d_; ++k) {
                const TruncatedPadic& s = structure_constant(i, j, k);
                if (!s.is_zero()) r[k] = r[k] + ab * s;
            }
        }
    }
    return {this, std::move(r)};
}

PadicMatrix PowerfulLieAlgebra::realize(const LieElement& u) const {
    check_owner(u);
    PadicMatrix m(p_, Nmat_, n_);
    for (uint32_t i = 0; i < d_; ++i) {
        if (u.coord(i).is_zero()) continue;
        m = m + real_[i].scaled(u.coord(i).at_precision(Nmat_));
    }
    return m;
}

LieElement PowerfulLieAlgebra::recover(const PadicMatrix& X) const {
    std::vector<TruncatedPadic> coords;
    coords.reserve(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        const auto& slot = recovery_[i];
        TruncatedPadic entry = X.entry(slot.row, slot.col);
        uint64_t ps = checked_pow_u64(p_, slot.scale);
        if (entry.value() % ps != 0)
            throw realization_not_injective("matrix entry not divisible by the basis scale");
        uint64_t unit = real_[i].raw(slot.row, slot.col) / ps;
        TruncatedPadic coord =
            TruncatedPadic(p_, Nmat_, entry.value() / ps) * TruncatedPadic(p_, Nmat_, unit).invert();
        coords.push_back(coord.at_precision(N_));
    }
    LieElement u{this, std::move(coords)};
    // The matrix must lie in the coordinate span; compare at a precision
    // both sides determine.
    if (!(realize(u).at_precision(N_ + min_scale_) == X.at_precision(N_ + min_scale_)))
        throw realization_not_injective("matrix is not in the realization span at this precision");
    return u;
}

LieElement PowerfulLieAlgebra::bch(const LieElement& u, const LieElement& v) const {
    check_owner(u);
    check_owner(v);
    PadicMatrix gu = mat_exp(realize(u), eps_);
    PadicMatrix gv = mat_exp(realize(v), eps_);
    return recover(mat_log(gu * gv));
}

GroupElement PowerfulLieAlgebra::group_mul(const GroupElement& g, const GroupElement& h) const {
    return {bch(g.log, h.log)};
}

GroupElement PowerfulLieAlgebra::group_inv(const GroupElement& g) const {
    return {-g.log};
}

GroupElement PowerfulLieAlgebra::group_pow(const GroupElement& g, int64_t m) const {
    return {g.log.times_int(m)};
}

GroupElement PowerfulLieAlgebra::group_commutator(const GroupElement& g,
                                                  const GroupElement& h) const {
    GroupElement gi = group_inv(g), hi = group_inv(h);
    return group_mul(group_mul(gi, hi), group_mul(g, h));
}

uint32_t PowerfulLieAlgebra::bracket_depth(const LieElement& u) const {
    check_owner(u);
    uint32_t best = N_;
    for (uint32_t j = 0; j < d_; ++j)
        best = std::min(best, bracket(u, basis(j)).min_valuation());
    return best;
}

uint32_t PowerfulLieAlgebra::subalgebra_bracket_depth(const LieElement& u,
                                                      const SubalgebraSpec& spec) const {
    check_owner(u);
    if (spec.scaling.size() != d_) throw invalid_parameter("subalgebra spec has wrong rank");
    uint32_t best = N_;
    for (uint32_t j = 0; j < d_; ++j) {
        LieElement gen = basis(j).times_prime_power(spec.scaling[j]);
        best = std::min(best, bracket(u, gen).min_valuation());
    }
    return best;
}

bool PowerfulLieAlgebra::check_bch_congruence(const LieElement& v, const LieElement& w,
                                              uint32_t k) const {
    if (k + 1 > N_)
        throw precision_exhausted("congruence depth k+1 = " + std::to_string(k + 1) +
                                  " exceeds precision N = " + std::to_string(N_));
    LieElement pkw = w.times_prime_power(k);
    LieElement lhs = bch(-v + pkw, v);
    return (lhs - pkw).min_valuation() >= k + 1;
}

bool PowerfulLieAlgebra::check_commutator_congruence(const LieElement& u, const LieElement& v,
                                                     uint32_t k) const {
    if (k < eps_)
        throw hypothesis_failed("commutator congruence needs k >= epsilon");
    if (bracket_depth(u) < k)
        throw hypothesis_failed("[u, L] is not contained in p^k L");
    if (k + 1 > N_)
        throw precision_exhausted("congruence depth exceeds precision");
    GroupElement lhs = group_commutator(exp_of(u), exp_of(v));
    GroupElement rhs = exp_of(bracket(u, v));
    LieElement diff = group_mul(lhs, group_inv(rhs)).log;
    return diff.min_valuation() >= k + 1;
}

void PowerfulLieAlgebra::validate() const {
    // Antisymmetry.
    for (uint32_t i = 0; i < d_; ++i)
        for (uint32_t j = 0; j < d_; ++j)
            for (uint32_t k = 0; k < d_; ++k)
                if (!(structure_constant(i, j, k) == -structure_constant(j, i, k)))
                    throw error("antisymmetry fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");

    // Powerfulness: [L, L] in p^eps L.
    for (uint32_t i = 0; i < d_; ++i)
        for (uint32_t j = 0; j < d_; ++j)
            for (uint32_t k = 0; k < d_; ++k)
                if (structure_constant(i, j, k).valuation() < eps_)
                    throw error("powerfulness fails: c(" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) +
                                ") has valuation < epsilon");

    // Jacobi identity on basis triples.
    for (uint32_t i = 0; i < d_; ++i)
        for (uint32_t j = 0; j < d_; ++j)
            for (uint32_t k = 0; k < d_; ++k) {
                LieElement s = bracket(bracket(basis(i), basis(j)), basis(k)) +
                               bracket(bracket(basis(j), basis(k)), basis(i)) +
                               bracket(bracket(basis(k), basis(i)), basis(j));
                if (!s.is_zero())
                    throw error("Jacobi identity fails at basis triple (" + std::to_string(i) +
                                "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }

    // The realization is a Lie homomorphism.
    for (uint32_t i = 0; i < d_; ++i)
        for (uint32_t j = 0; j < d_; ++j) {
            PadicMatrix lhs = real_[i] * real_[j] - real_[j] * real_[i];
            PadicMatrix rhs = realize(bracket(basis(i), basis(j)));
            if (!(lhs.at_precision(N_) == rhs.at_precision(N_)))
                throw error("realization fails to be a Lie homomorphism at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

void PowerfulLieAlgebra::validate_subalgebra(const SubalgebraSpec& spec) const {
    if (spec.scaling.size() != d_) throw invalid_parameter("subalgebra spec has wrong rank");
    int t = spec.t();
    for (uint32_t i = 0; i < d_; ++i) {
        if (spec.scaling[i] != 0 && spec.scaling[i] != 1)
            throw invalid_parameter("subalgebra scaling exponents must be 0 or 1");
        if ((int(i) < t) != (spec.scaling[i] == 1))
            throw invalid_parameter("scaled basis indices must come first");
    }
    // Closure under bracket: [p^{s_i} v_i, p^{s_j} v_j] in L1.
    for (uint32_t i = 0; i < d_; ++i)
        for (uint32_t j = 0; j < d_; ++j)
            for (uint32_t k = 0; k < d_; ++k) {
                uint32_t have = structure_constant(i, j, k).valuation() + spec.scaling[i] +
                                spec.scaling[j];
                if (have < static_cast<uint32_t>(spec.scaling[k]) && have < N_)
                    throw error("subalgebra is not closed under the bracket");
            }
}

void PowerfulLieAlgebra::perturb_structure_constant(uint32_t i, uint32_t j, uint32_t k,
                                                    int64_t delta) {
    TruncatedPadic dv = TruncatedPadic::from_int(p_, N_, delta);
    c_[(std::size_t(i) * d_ + j) * d_ + k] = c_[(std::size_t(i) * d_ + j) * d_ + k] + dv;
    c_[(std::size_t(j) * d_ + i) * d_ + k] = c_[(std::size_t(j) * d_ + i) * d_ + k] - dv;
}

namespace {

std::unique_ptr<PowerfulLieAlgebra> make_sl2(uint64_t p, uint32_t l, uint32_t N,
                                             const std::string& name) {
    int64_t pl = static_cast<int64_t>(checked_pow_u64(p, l));
    PowerfulLieAlgebra::Init init;
    init.p = p;
    init.N = N;
    init.rank = 3;
    init.matrix_dim = 2;
    init.name = name;
    init.structure.assign(27, 0);
    auto c = [&](uint32_t i, uint32_t j, uint32_t k) -> int64_t& {
        return init.structure[(std::size_t(i) * 3 + j) * 3 + k];
    };
    // Basis order (e, f, h): [h,e] = 2 p^l e, [h,f] = -2 p^l f, [e,f] = p^l h.
    c(2, 0, 0) = 2 * pl;
    c(0, 2, 0) = -2 * pl;
    c(2, 1, 1) = -2 * pl;
    c(1, 2, 1) = 2 * pl;
    c(0, 1, 2) = pl;
    c(1, 0, 2) = -pl;
    init.realization = {
        {0, pl, 0, 0},   // e
        {0, 0, pl, 0},   // f
        {pl, 0, 0, -pl}, // h
    };
    init.recovery = {{0, 1, l}, {1, 0, l}, {0, 0, l}};
    return std::make_unique<PowerfulLieAlgebra>(init);
}

std::unique_ptr<PowerfulLieAlgebra> make_sl2_chain_middle(uint32_t l, uint32_t N) {
    // Basis order (h', e', f') with e' = 2e, f' = 2f, h' = h at p = 2:
    // [h',e'] = p^(l+1) e', [h',f'] = -p^(l+1) f', [e',f'] = p^(l+2) h'.
    const uint64_t p = 2;
    int64_t pl = static_cast<int64_t>(checked_pow_u64(p, l));
    int64_t pl1 = 2 * pl, pl2 = 4 * pl;
    PowerfulLieAlgebra::Init init;
    init.p = p;
    init.N = N;
    init.rank = 3;
    init.matrix_dim = 2;
    init.name = "sl2-2adic-middle";
    init.structure.assign(27, 0);
    auto c = [&](uint32_t i, uint32_t j, uint32_t k) -> int64_t& {
        return init.structure[(std::size_t(i) * 3 + j) * 3 + k];
    };
    c(0, 1, 1) = pl1;
    c(1, 0, 1) = -pl1;
    c(0, 2, 2) = -pl1;
    c(2, 0, 2) = pl1;
    c(1, 2, 0) = pl2;
    c(2, 1, 0) = -pl2;
    init.realization = {
        {pl, 0, 0, -pl}, // h'
        {0, pl1, 0, 0},  // e'
        {0, 0, pl1, 0},  // f'
    };
    init.recovery = {{0, 0, l}, {0, 1, l + 1}, {1, 0, l + 1}};
    return std::make_unique<PowerfulLieAlgebra>(init);
}

} // namespace

Sl2Family build_chevalley_sl2(uint64_t p, uint32_t l, uint32_t N) {
    Sl2Family fam;
    if (p >= 3) {
        if (l < 1) throw unsupported_parameters("p >= 3 needs l >= 1");
        AlgebraWithSubalgebra pair;
        pair.algebra = make_sl2(p, l, N, "sl2");
        pair.sub = SubalgebraSpec{{1, 1, 1}};
        pair.label = "sl2";
        pair.algebra->validate_subalgebra(pair.sub);
        fam.pairs.push_back(std::move(pair));
        return fam;
    }
    if (p == 2) {
        if (l < 2) throw unsupported_parameters("p = 2 needs l >= 2");
        AlgebraWithSubalgebra first;
        first.algebra = make_sl2(2, l, N, "sl2-2adic-top");
        first.sub = SubalgebraSpec{{1, 1, 0}};
        first.label = "sl2-2adic-step1";
        first.algebra->validate_subalgebra(first.sub);
        fam.pairs.push_back(std::move(first));

        AlgebraWithSubalgebra second;
        second.algebra = make_sl2_chain_middle(l, N);
        second.sub = SubalgebraSpec{{1, 0, 0}};
        second.label = "sl2-2adic-step2";
        second.algebra->validate_subalgebra(second.sub);
        fam.pairs.push_back(std::move(second));
        return fam;
    }
    throw unsupported_parameters("prime must be >= 2");
}

AlgebraWithSubalgebra build_sl2_single_step(uint32_t l, uint32_t N) {
    if (l < 2) throw unsupported_parameters("p = 2 needs l >= 2");
    AlgebraWithSubalgebra pair;
    pair.algebra = make_sl2(2, l, N, "sl2-2adic-single");
    pair.sub = SubalgebraSpec{{1, 1, 1}};
    pair.label = "sl2-2adic-single";
    pair.algebra->validate_subalgebra(pair.sub);
    return pair;
}

AlgebraWithSubalgebra build_abelian(uint64_t p, uint32_t d, uint32_t N) {
    uint32_t eps = epsilon_for(p);
    int64_t pe = static_cast<int64_t>(checked_pow_u64(p, eps));
    PowerfulLieAlgebra::Init init;
    init.p = p;
    init.N = N;
    init.rank = d;
    init.matrix_dim = d;
    init.name = "abelian-rank-" + std::to_string(d);
    init.structure.assign(std::size_t(d) * d * d, 0);
    for (uint32_t i = 0; i < d; ++i) {
        std::vector<int64_t> m(std::size_t(d) * d, 0);
        m[std::size_t(i) * d + i] = pe;
        init.realization.push_back(std::move(m));
        init.recovery.push_back({i, i, eps});
    }
    AlgebraWithSubalgebra pair;
    pair.algebra = std::make_unique<PowerfulLieAlgebra>(init);
    pair.sub = SubalgebraSpec{std::vector<int>(d, 1)};
    pair.label = init.name;
    pair.algebra->validate_subalgebra(pair.sub);
    return pair;
}

} // namespace iwa

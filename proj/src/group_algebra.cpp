#include "iwa/group_algebra.hpp"

#include <algorithm>

#include "iwa/parallel.hpp"

namespace iwa {

GroupAlgebraElement::GroupAlgebraElement(const QuotientAlgebra* owner, std::vector<uint8_t> coeffs)
    : owner_(owner), c_(std::move(coeffs)) {
    if (c_.size() != owner_->dim()) throw invalid_parameter("coefficient vector has wrong length");
}

bool GroupAlgebraElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint8_t x) { return x == 0; });
}

bool GroupAlgebraElement::operator==(const GroupAlgebraElement& o) const {
    return owner_ == o.owner_ && c_ == o.c_;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    if (owner_ != o.owner_) throw mixed_algebra("elements of different quotient algebras");
    Fp fp{owner_->p()};
    std::vector<uint8_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp.add(c_[i], o.c_[i]);
    return {owner_, std::move(r)};
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    if (owner_ != o.owner_) throw mixed_algebra("elements of different quotient algebras");
    Fp fp{owner_->p()};
    std::vector<uint8_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp.sub(c_[i], o.c_[i]);
    return {owner_, std::move(r)};
}

GroupAlgebraElement GroupAlgebraElement::operator-() const {
    Fp fp{owner_->p()};
    std::vector<uint8_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp.neg(c_[i]);
    return {owner_, std::move(r)};
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    return owner_->multiply(*this, o);
}

GroupAlgebraElement GroupAlgebraElement::scaled(uint8_t s) const {
    Fp fp{owner_->p()};
    std::vector<uint8_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp.mul(c_[i], s);
    return {owner_, std::move(r)};
}

std::optional<uint32_t> GroupAlgebraElement::jadic_degree() const {
    std::optional<uint32_t> best;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) {
            uint32_t d = owner_->degree_of(i);
            if (!best || d < *best) best = d;
        }
    return best;
}

GradedPoly GroupAlgebraElement::principal_symbol() const {
    auto deg = jadic_degree();
    if (!deg) throw zero_element("zero element has no principal symbol");
    return homogeneous_component(*deg);
}

GradedPoly GroupAlgebraElement::homogeneous_component(uint32_t n) const {
    GradedPoly f(owner_->p(), owner_->d());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i] || owner_->degree_of(i) != n) continue;
        auto alpha = owner_->unpack(i);
        Mono m{};
        for (uint32_t v = 0; v < owner_->d(); ++v) m[v] = static_cast<uint16_t>(alpha[v]);
        f.add_term(m, c_[i]);
    }
    return f;
}

std::pair<GroupAlgebraElement, GroupAlgebraElement> GroupAlgebraElement::subalgebra_decompose()
    const {
    std::vector<uint8_t> in(c_.size(), 0), out(c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        (owner_->in_nspan(i) ? in : out)[i] = c_[i];
    }
    return {GroupAlgebraElement(owner_, std::move(in)), GroupAlgebraElement(owner_, std::move(out))};
}

bool GroupAlgebraElement::in_subalgebra_span() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] && !owner_->in_nspan(i)) return false;
    return true;
}

QuotientAlgebra::QuotientAlgebra(const PowerfulLieAlgebra* L, SubalgebraSpec spec, uint32_t m,
                                 QuotientOptions opts)
    : L_(L), spec_(std::move(spec)), m_(m), fp_{static_cast<uint32_t>(L->p())} {
    if (m < 1) throw invalid_parameter("quotient exponent must be >= 1");
    L_->validate_subalgebra(spec_);
    t_ = static_cast<uint32_t>(spec_.t());

    uint32_t max_scale = L_->Nmat() - L_->N();
    if (L_->N() < m_ + max_scale + 2)
        throw precision_exhausted("group arithmetic needs N >= m + scale + 2");

    pm_ = static_cast<uint32_t>(checked_pow_u64(L_->p(), m_));
    dim_ = 1;
    for (uint32_t i = 0; i < d(); ++i) dim_ *= pm_;

    stride_.assign(d(), 1);
    for (int i = int(d()) - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * pm_;

    degree_.resize(dim_);
    nmask_.resize(dim_);
    for (uint64_t idx = 0; idx < dim_; ++idx) {
        auto alpha = unpack(idx);
        uint32_t deg = 0;
        bool nspan = true;
        for (uint32_t i = 0; i < d(); ++i) {
            deg += alpha[i];
            if (i < t_ && alpha[i] % p() != 0) nspan = false;
        }
        degree_[idx] = static_cast<uint16_t>(deg);
        nmask_[idx] = nspan;
    }

    // Pascal's triangle mod p up to p^m, and the per-axis basis-change
    // matrices: (g-1)^a = sum_c (-1)^(a-c) C(a,c) g^c and its inverse.
    binom_.assign(std::size_t(pm_) * pm_, 0);
    for (uint32_t a = 0; a < pm_; ++a) {
        binom_[std::size_t(a) * pm_ + 0] = 1;
        for (uint32_t c = 1; c <= a; ++c)
            binom_[std::size_t(a) * pm_ + c] =
                fp_.add(a > 0 && c <= a - 1 ? binom_[std::size_t(a - 1) * pm_ + c] : 0,
                        binom_[std::size_t(a - 1) * pm_ + (c - 1)]);
    }
    bg_.assign(std::size_t(pm_) * pm_, 0);
    gb_.assign(std::size_t(pm_) * pm_, 0);
    for (uint32_t a = 0; a < pm_; ++a)
        for (uint32_t c = 0; c <= a; ++c) {
            uint8_t bc = binom_[std::size_t(a) * pm_ + c];
            bg_[std::size_t(a) * pm_ + c] = ((a - c) % 2 == 0) ? bc : fp_.neg(bc);
            gb_[std::size_t(a) * pm_ + c] = bc;  // (1+b)^a = sum C(a,c) b^c
        }

    build_group(opts.parallel);
    if (static_cast<unsigned __int128>(dim_) * dim_ <= opts.table_entry_limit) {
        build_table(opts.parallel);
        // With fast products available, certify the span identification
        // J^n = span{b^alpha : |alpha| >= n} across the whole quotient.
        if (auto witness = verify_filtration_spans(max_total_degree() + 1))
            throw error("b-basis span certification failed: " + *witness);
    }
}

uint64_t QuotientAlgebra::pack(const std::vector<uint32_t>& alpha) const {
    uint64_t idx = 0;
    for (uint32_t i = 0; i < d(); ++i) idx += uint64_t(alpha[i] % pm_) * stride_[i];
    return idx;
}

std::vector<uint32_t> QuotientAlgebra::unpack(uint64_t idx) const {
    std::vector<uint32_t> alpha(d());
    for (uint32_t i = 0; i < d(); ++i) alpha[i] = static_cast<uint32_t>((idx / stride_[i]) % pm_);
    return alpha;
}

namespace {

uint64_t pack_lie_coords(const QuotientAlgebra& A, const LieElement& u) {
    std::vector<uint32_t> c(A.d());
    for (uint32_t i = 0; i < A.d(); ++i)
        c[i] = static_cast<uint32_t>(u.coord(i).value() % A.pm());
    return A.pack(c);
}

} // namespace

void QuotientAlgebra::build_group(bool parallel) {
    lambda_to_coord_.assign(dim_, 0);
    coord_to_lambda_.assign(dim_, UINT32_MAX);

    // DFS over exponent vectors; each step right-multiplies by one
    // generator, so the whole table costs about dim() products.
    auto dfs = [&](auto&& self, uint32_t axis, uint64_t base, const LieElement& partial) -> void {
        if (axis == d()) {
            lambda_to_coord_[base] = static_cast<uint32_t>(pack_lie_coords(*this, partial));
            return;
        }
        LieElement cur = partial;
        for (uint32_t a = 0;; ++a) {
            self(self, axis + 1, base + uint64_t(a) * stride_[axis], cur);
            if (a + 1 == pm_) break;
            cur = L_->bch(cur, L_->basis(axis));
        }
    };

    // The top axis is a single one-parameter family, exp(a v_1), so its
    // prefixes need no chain and the subtrees are independent.
    par_for(pm_, parallel, [&](int64_t a) {
        LieElement prefix = L_->basis(0).times_int(a);
        dfs(dfs, 1, uint64_t(a) * stride_[0], prefix);
    });

    for (uint64_t lambda = 0; lambda < dim_; ++lambda) {
        uint32_t c = lambda_to_coord_[lambda];
        if (coord_to_lambda_[c] != UINT32_MAX)
            throw realization_not_injective("group normal forms collide in the quotient");
        coord_to_lambda_[c] = static_cast<uint32_t>(lambda);
    }
}

void QuotientAlgebra::build_table(bool parallel) {
    table_.assign(dim_ * dim_, 0);

    // One exponential per group element, then each table row walks the mu
    // digits with a single matrix product per entry; only the logarithm and
    // the coordinate recovery remain per-entry costs.
    const uint32_t n = L_->basis_matrix(0).dim();
    std::vector<PadicMatrix> expo(dim_, PadicMatrix(L_->p(), L_->Nmat(), n));
    par_for(static_cast<int64_t>(dim_), parallel, [&](int64_t lambda) {
        auto la = unpack(lambda_to_coord_[lambda]);
        std::vector<int64_t> cl(d());
        for (uint32_t i = 0; i < d(); ++i) cl[i] = la[i];
        expo[lambda] = mat_exp(L_->realize(L_->element(cl)), L_->eps());
    });

    std::vector<PadicMatrix> gen;
    gen.reserve(d());
    for (uint32_t i = 0; i < d(); ++i)
        gen.push_back(mat_exp(L_->realize(L_->basis(i)), L_->eps()));

    par_for(static_cast<int64_t>(dim_), parallel, [&](int64_t lambda) {
        auto rec = [&](auto&& self, uint32_t axis, uint64_t mu, const PadicMatrix& M) -> void {
            if (axis == d()) {
                LieElement w = L_->recover(mat_log(M));
                table_[uint64_t(lambda) * dim_ + mu] =
                    coord_to_lambda_[pack_lie_coords(*this, w)];
                return;
            }
            PadicMatrix cur = M;
            for (uint32_t a = 0;; ++a) {
                self(self, axis + 1, mu + uint64_t(a) * stride_[axis], cur);
                if (a + 1 == pm_) break;
                cur = cur * gen[axis];
            }
        };
        rec(rec, 0, 0, expo[lambda]);
    });
}

uint64_t QuotientAlgebra::group_mul(uint64_t lambda, uint64_t mu) const {
    if (!table_.empty()) return table_[lambda * dim_ + mu];
    auto la = unpack(lambda_to_coord_[lambda]);
    auto ma = unpack(lambda_to_coord_[mu]);
    std::vector<int64_t> cl(d()), cm(d());
    for (uint32_t i = 0; i < d(); ++i) {
        cl[i] = la[i];
        cm[i] = ma[i];
    }
    LieElement prod = L_->bch(L_->element(cl), L_->element(cm));
    return coord_to_lambda_[pack_lie_coords(*this, prod)];
}

uint64_t QuotientAlgebra::group_of_lie(const LieElement& u) const {
    return coord_to_lambda_[pack_lie_coords(*this, u)];
}

uint64_t QuotientAlgebra::generator_index(uint32_t i) const {
    return stride_[i];  // the normal form g_i^1
}

GroupAlgebraElement QuotientAlgebra::zero_element() const {
    return {this, std::vector<uint8_t>(dim_, 0)};
}

GroupAlgebraElement QuotientAlgebra::one() const {
    std::vector<uint8_t> c(dim_, 0);
    c[0] = 1;
    return {this, std::move(c)};
}

GroupAlgebraElement QuotientAlgebra::b_monomial(uint64_t alpha_idx) const {
    std::vector<uint8_t> c(dim_, 0);
    c[alpha_idx] = 1;
    return {this, std::move(c)};
}

GroupAlgebraElement QuotientAlgebra::group_basis_element(uint64_t lambda) const {
    std::vector<uint8_t> g(dim_, 0);
    g[lambda] = 1;
    return {this, to_b_basis(g)};
}

GroupAlgebraElement QuotientAlgebra::element_of_lie(const LieElement& u) const {
    return group_basis_element(group_of_lie(u));
}

void QuotientAlgebra::transform_axis(std::vector<uint8_t>& v, uint32_t axis,
                                     const std::vector<uint8_t>& M) const {
    const uint64_t s = stride_[axis];
    std::vector<uint8_t> fiber(pm_);
    for (uint64_t block = 0; block < dim_; block += s * pm_)
        for (uint64_t off = 0; off < s; ++off) {
            const uint64_t base = block + off;
            for (uint32_t a = 0; a < pm_; ++a) fiber[a] = v[base + a * s];
            for (uint32_t cdst = 0; cdst < pm_; ++cdst) {
                uint32_t acc = 0;
                for (uint32_t a = cdst; a < pm_; ++a)
                    acc += uint32_t(M[std::size_t(a) * pm_ + cdst]) * fiber[a];
                v[base + cdst * s] = static_cast<uint8_t>(acc % fp_.p);
            }
        }
}

std::vector<uint8_t> QuotientAlgebra::to_group_basis(const std::vector<uint8_t>& b) const {
    std::vector<uint8_t> v = b;
    for (uint32_t axis = 0; axis < d(); ++axis) transform_axis(v, axis, bg_);
    return v;
}

std::vector<uint8_t> QuotientAlgebra::to_b_basis(const std::vector<uint8_t>& g) const {
    std::vector<uint8_t> v = g;
    for (uint32_t axis = 0; axis < d(); ++axis) transform_axis(v, axis, gb_);
    return v;
}

void QuotientAlgebra::check_owner(const GroupAlgebraElement& x) const {
    if (x.owner() != this) throw mixed_algebra("element of a different quotient algebra");
}

GroupAlgebraElement QuotientAlgebra::multiply(const GroupAlgebraElement& x,
                                              const GroupAlgebraElement& y) const {
    check_owner(x);
    check_owner(y);
    std::vector<uint8_t> xg = to_group_basis(x.coeffs());
    std::vector<uint8_t> yg = to_group_basis(y.coeffs());
    std::vector<uint64_t> xs, ys;
    for (uint64_t i = 0; i < dim_; ++i)
        if (xg[i]) xs.push_back(i);
    for (uint64_t i = 0; i < dim_; ++i)
        if (yg[i]) ys.push_back(i);

    std::vector<uint8_t> acc(dim_, 0);
    for (uint64_t la : xs)
        for (uint64_t mu : ys) {
            uint64_t nu = group_mul(la, mu);
            acc[nu] = fp_.add(acc[nu], fp_.mul(xg[la], yg[mu]));
        }
    return {this, to_b_basis(acc)};
}

GroupAlgebraElement QuotientAlgebra::commutator(uint64_t lambda,
                                                const GroupAlgebraElement& x) const {
    check_owner(x);
    std::vector<uint8_t> xg = to_group_basis(x.coeffs());
    std::vector<uint8_t> acc(dim_, 0);
    for (uint64_t mu = 0; mu < dim_; ++mu) {
        if (!xg[mu]) continue;
        uint64_t lm = group_mul(lambda, mu);
        uint64_t ml = group_mul(mu, lambda);
        acc[lm] = fp_.add(acc[lm], xg[mu]);
        acc[ml] = fp_.sub(acc[ml], xg[mu]);
    }
    return {this, to_b_basis(acc)};
}

GroupAlgebraElement QuotientAlgebra::left_mul_generator(uint32_t i,
                                                        const GroupAlgebraElement& x) const {
    check_owner(x);
    std::vector<uint8_t> xg = to_group_basis(x.coeffs());
    std::vector<uint8_t> acc(dim_, 0);
    const uint64_t gi = generator_index(i);
    for (uint64_t mu = 0; mu < dim_; ++mu) {
        if (!xg[mu]) continue;
        uint64_t nu = group_mul(gi, mu);
        acc[nu] = fp_.add(acc[nu], xg[mu]);
        acc[mu] = fp_.sub(acc[mu], xg[mu]);
    }
    return {this, to_b_basis(acc)};
}

GroupAlgebraElement QuotientAlgebra::right_mul_generator(const GroupAlgebraElement& x,
                                                         uint32_t i) const {
    check_owner(x);
    std::vector<uint8_t> xg = to_group_basis(x.coeffs());
    std::vector<uint8_t> acc(dim_, 0);
    const uint64_t gi = generator_index(i);
    for (uint64_t mu = 0; mu < dim_; ++mu) {
        if (!xg[mu]) continue;
        uint64_t nu = group_mul(mu, gi);
        acc[nu] = fp_.add(acc[nu], xg[mu]);
        acc[mu] = fp_.sub(acc[mu], xg[mu]);
    }
    return {this, to_b_basis(acc)};
}

std::vector<std::pair<uint64_t, uint8_t>> QuotientAlgebra::expand_b_monomial(
    uint64_t alpha_idx) const {
    auto alpha = unpack(alpha_idx);
    std::vector<std::pair<uint64_t, uint8_t>> out;
    std::vector<uint32_t> lam(d(), 0);
    while (true) {
        uint8_t c = 1;
        for (uint32_t i = 0; i < d(); ++i) {
            uint8_t bc = binom_[std::size_t(alpha[i]) * pm_ + lam[i]];
            bc = ((alpha[i] - lam[i]) % 2 == 0) ? bc : fp_.neg(bc);
            c = fp_.mul(c, bc);
        }
        if (c) out.emplace_back(pack(lam), c);
        bool wrapped = true;
        for (uint32_t i = d(); i-- > 0;) {
            if (lam[i] < alpha[i]) {
                ++lam[i];
                wrapped = false;
                break;
            }
            lam[i] = 0;
        }
        if (wrapped) return out;
    }
}

std::optional<std::string> QuotientAlgebra::verify_filtration_spans(uint32_t up_to) const {
    std::vector<std::string> failures(dim_);
    std::vector<uint8_t> failed(dim_, 0);
    par_for(static_cast<int64_t>(dim_), true, [&](int64_t alpha_idx) {
        if (degree_[alpha_idx] + 1u > up_to) return;
        auto terms = expand_b_monomial(alpha_idx);
        for (uint32_t i = 0; i < d(); ++i) {
            std::vector<uint8_t> acc(dim_, 0);
            const uint64_t gi = generator_index(i);
            for (auto [lam, c] : terms) {
                uint64_t nu = group_mul(gi, lam);
                acc[nu] = fp_.add(acc[nu], c);
                acc[lam] = fp_.sub(acc[lam], c);
            }
            std::vector<uint8_t> b = to_b_basis(acc);
            for (uint64_t idx = 0; idx < dim_; ++idx)
                if (b[idx] && degree_[idx] < degree_[alpha_idx] + 1u) {
                    failed[alpha_idx] = 1;
                    failures[alpha_idx] = "b_" + std::to_string(i + 1) +
                                          " * b^alpha dips below |alpha|+1 at alpha index " +
                                          std::to_string(alpha_idx);
                    return;
                }
        }
    });
    for (uint64_t i = 0; i < dim_; ++i)
        if (failed[i]) return failures[i];
    return std::nullopt;
}

DerivationOp QuotientAlgebra::induced_derivation(uint64_t a_lambda, uint32_t theta) const {
    std::vector<GradedPoly> images;
    images.reserve(d());
    for (uint32_t j = 0; j < d(); ++j) {
        GroupAlgebraElement cj = commutator(a_lambda, b_monomial(generator_index(j)));
        auto deg = cj.jadic_degree();
        if (deg && *deg < theta + 1)
            throw hypothesis_failed("[a, b_" + std::to_string(j + 1) +
                                    "] is shallower than the claimed filtration shift");
        GradedPoly img = cj.homogeneous_component(theta + 1);
        if (j >= t_ && !img.is_zero())
            throw hypothesis_failed("induced map is not B1-linear at this depth");
        images.push_back(std::move(img));
    }
    return DerivationOp(t_, std::move(images));
}

QuotientAlgebra::FiltrationCheck QuotientAlgebra::commutator_filtration_check(
    const LieElement& u, uint32_t k, uint32_t sample_degree, char variant) const {
    if (k < L_->eps()) throw hypothesis_failed("need k >= epsilon");
    if (L_->bracket_depth(u) < k) throw hypothesis_failed("[u, L] not contained in p^k L");
    if (L_->subalgebra_bracket_depth(u, spec_) < k + 1)
        throw hypothesis_failed("[u, L1] not contained in p^(k+1) L");

    uint64_t pk = checked_pow_u64(p(), k);
    uint32_t shift = variant == 'd' ? static_cast<uint32_t>(pk * p() - p())
                                    : static_cast<uint32_t>(pk - 1);
    uint64_t a = group_of_lie(u);

    FiltrationCheck res;
    for (uint64_t idx = 0; idx < dim_; ++idx) {
        if (degree_[idx] > sample_degree) continue;
        if (variant == 'd' && !nmask_[idx]) continue;
        GroupAlgebraElement c = commutator(a, b_monomial(idx));
        auto deg = c.jadic_degree();
        if (deg && *deg < degree_[idx] + shift) {
            res.ok = false;
            res.witness = "[a, b^alpha] at alpha index " + std::to_string(idx) + " has degree " +
                          std::to_string(*deg) + " < " + std::to_string(degree_[idx] + shift);
            return res;
        }
    }
    return res;
}

std::vector<std::vector<uint8_t>> rho_matrix(const PowerfulLieAlgebra& L,
                                             const SubalgebraSpec& spec, const LieElement& u,
                                             uint32_t k) {
    uint32_t depth = L.bracket_depth(u);
    if (k < L.eps() || depth < k || depth > k)
        throw hypothesis_failed("[u, L] must sit at depth exactly k >= epsilon");
    if (L.subalgebra_bracket_depth(u, spec) < k + 1)
        throw hypothesis_failed("[u, L1] not contained in p^(k+1) L");

    uint32_t d = L.rank(), t = static_cast<uint32_t>(spec.t());
    std::vector<std::vector<uint8_t>> c(d, std::vector<uint8_t>(t, 0));
    for (uint32_t j = 0; j < t; ++j) {
        LieElement br = L.bracket(u, L.basis(j));
        for (uint32_t i = 0; i < d; ++i)
            c[i][j] = static_cast<uint8_t>(br.coord(i).divide_by_prime_power(k).value() % L.p());
    }
    return c;
}

uint32_t rho_depth(const PowerfulLieAlgebra& L, const SubalgebraSpec& spec, const LieElement& u) {
    uint32_t depth = L.bracket_depth(u);
    if (depth >= L.N())
        throw hypothesis_failed("central element: no depth k with [u,L] exactly p^k L");
    rho_matrix(L, spec, u, depth);  // validates the remaining conditions
    return depth;
}

bool QuotientAlgebra::verify_rho_derivation_formula(const LieElement& u) const {
    uint32_t k = rho_depth(*L_, spec_, u);
    uint64_t pk = checked_pow_u64(p(), k);
    if (pk >= pm_)
        throw window_exceeded("derivation image degree p^k needs a larger quotient exponent");

    auto c = rho_matrix(*L_, spec_, u, k);
    DerivationOp got = induced_derivation(group_of_lie(u), static_cast<uint32_t>(pk - 1));

    std::vector<GradedPoly> expected;
    for (uint32_t j = 0; j < d(); ++j) {
        GradedPoly img(p(), d());
        if (j < t_)
            for (uint32_t i = 0; i < d(); ++i)
                if (c[i][j]) {
                    Mono mterm{};
                    mterm[i] = static_cast<uint16_t>(pk);
                    img.add_term(mterm, c[i][j]);
                }
        expected.push_back(std::move(img));
    }
    return got == DerivationOp(t_, std::move(expected));
}

std::vector<FpEchelon> reference_jn_spaces(const QuotientAlgebra& A, uint32_t n_max) {
    Fp fp{A.p()};
    std::vector<FpEchelon> spaces;
    spaces.reserve(n_max + 1);

    FpEchelon full(fp, A.dim());
    for (uint64_t i = 0; i < A.dim(); ++i) {
        FpVec v(A.dim(), 0);
        v[i] = 1;
        full.insert(std::move(v));
    }
    spaces.push_back(std::move(full));

    if (n_max == 0) return spaces;

    // J = ker(augmentation); in the b-basis the augmentation is the
    // coefficient at alpha = 0.
    FpEchelon J(fp, A.dim());
    for (uint64_t i = 1; i < A.dim(); ++i) {
        FpVec v(A.dim(), 0);
        v[i] = 1;
        J.insert(std::move(v));
    }
    spaces.push_back(J);

    for (uint32_t n = 2; n <= n_max; ++n) {
        const FpEchelon& prev = spaces.back();
        FpEchelon next(fp, A.dim());
        for (const auto& row : prev.rows()) {
            GroupAlgebraElement x(&A, row);
            for (uint32_t i = 0; i < A.d(); ++i)
                next.insert(A.left_mul_generator(i, x).coeffs());
        }
        spaces.push_back(std::move(next));
    }
    return spaces;
}

} // namespace iwa

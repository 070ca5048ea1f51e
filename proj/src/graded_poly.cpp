#include "iwa/graded_poly.hpp"

#include <algorithm>

namespace iwa {

GradedPoly::GradedPoly(uint32_t p, uint32_t nvars) : fp_{p}, nvars_(nvars) {
    if (nvars > kMaxVars) throw invalid_parameter("too many variables");
    if (p < 2) throw invalid_parameter("prime must be >= 2");
}

GradedPoly GradedPoly::constant(uint32_t p, uint32_t nvars, uint8_t c) {
    GradedPoly f(p, nvars);
    f.add_term(Mono{}, c);
    return f;
}

GradedPoly GradedPoly::variable(uint32_t p, uint32_t nvars, uint32_t j, uint32_t exponent) {
    if (j >= nvars) throw index_out_of_range("variable index");
    Mono m{};
    m[j] = static_cast<uint16_t>(exponent);
    return monomial(p, nvars, m, 1);
}

GradedPoly GradedPoly::monomial(uint32_t p, uint32_t nvars, const Mono& m, uint8_t c) {
    GradedPoly f(p, nvars);
    f.add_term(m, c);
    return f;
}

bool GradedPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

uint32_t GradedPoly::degree() const {
    if (terms_.empty()) return 0;
    return mono_degree(terms_.rbegin()->first);
}

uint32_t GradedPoly::low_degree() const {
    if (terms_.empty()) return 0;
    return mono_degree(terms_.begin()->first);
}

bool GradedPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return low_degree() == degree();
}

void GradedPoly::add_term(const Mono& m, uint8_t c) {
    c = static_cast<uint8_t>(c % fp_.p);
    if (c == 0) return;
    for (uint32_t i = nvars_; i < kMaxVars; ++i)
        if (m[i] != 0) throw index_out_of_range("monomial uses an absent variable");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = fp_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

uint8_t GradedPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void GradedPoly::check_compatible(const GradedPoly& o) const {
    if (fp_.p != o.fp_.p || nvars_ != o.nvars_)
        throw invalid_parameter("polynomials over different rings");
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
    check_compatible(o);
    GradedPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
    check_compatible(o);
    GradedPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, fp_.neg(c));
    return r;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r(fp_.p, nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, fp_.neg(c));
    return r;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
    check_compatible(o);
    GradedPoly r(fp_.p, nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Mono m;
            for (uint32_t i = 0; i < kMaxVars; ++i)
                m[i] = static_cast<uint16_t>(ma[i] + mb[i]);
            r.add_term(m, fp_.mul(ca, cb));
        }
    return r;
}

bool GradedPoly::operator==(const GradedPoly& o) const {
    return fp_.p == o.fp_.p && nvars_ == o.nvars_ && terms_ == o.terms_;
}

GradedPoly GradedPoly::scaled(uint8_t c) const {
    GradedPoly r(fp_.p, nvars_);
    for (const auto& [m, cc] : terms_) r.add_term(m, fp_.mul(cc, c));
    return r;
}

GradedPoly GradedPoly::times_monomial(const Mono& mm, uint8_t c) const {
    GradedPoly r(fp_.p, nvars_);
    for (const auto& [m, cc] : terms_) {
        Mono t;
        for (uint32_t i = 0; i < kMaxVars; ++i) t[i] = static_cast<uint16_t>(m[i] + mm[i]);
        r.add_term(t, fp_.mul(cc, c));
    }
    return r;
}

GradedPoly GradedPoly::homogeneous_component(uint32_t n) const {
    GradedPoly r(fp_.p, nvars_);
    for (const auto& [m, c] : terms_)
        if (mono_degree(m) == n) r.add_term(m, c);
    return r;
}

Mono GradedPoly::leading_monomial() const {
    if (terms_.empty()) throw zero_element("zero polynomial has no leading monomial");
    return terms_.rbegin()->first;
}

uint8_t GradedPoly::leading_coeff() const {
    if (terms_.empty()) throw zero_element("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

GradedPoly GradedPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(fp_.inv(leading_coeff()));
}

std::string GradedPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        const auto& [m, c] = *it;
        std::string term;
        if (c != 1 || mono_degree(m) == 0) term = std::to_string(int(c));
        for (uint32_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!term.empty()) term += "*";
            term += i < names.size() ? names[i] : ("y" + std::to_string(i));
            if (m[i] > 1) term += "^" + std::to_string(int(m[i]));
        }
        out += term;
    }
    return out;
}

std::optional<GradedPoly> divide_exact(const GradedPoly& X, const GradedPoly& Y) {
    if (X.is_zero()) throw zero_divisor("division by the zero polynomial");
    if (X.terms().size() == 1) {
        // Monomial divisor: componentwise exponent subtraction.
        const auto& [mx, cx] = *X.terms().begin();
        uint8_t inv = X.field().inv(cx);
        GradedPoly Q(Y.p(), Y.nvars());
        for (const auto& [m, c] : Y.terms()) {
            Mono q;
            for (uint32_t i = 0; i < kMaxVars; ++i) {
                if (m[i] < mx[i]) return std::nullopt;
                q[i] = static_cast<uint16_t>(m[i] - mx[i]);
            }
            Q.add_term(q, Y.field().mul(c, inv));
        }
        return Q;
    }
    GradedPoly R = Y;
    GradedPoly Q(Y.p(), Y.nvars());
    const Mono lx = X.leading_monomial();
    const uint8_t lcx_inv = X.field().inv(X.leading_coeff());
    while (!R.is_zero()) {
        Mono lr = R.leading_monomial();
        Mono q;
        for (uint32_t i = 0; i < kMaxVars; ++i) {
            if (lr[i] < lx[i]) return std::nullopt;
            q[i] = static_cast<uint16_t>(lr[i] - lx[i]);
        }
        uint8_t c = X.field().mul(R.leading_coeff(), lcx_inv);
        Q.add_term(q, c);
        R = R - X.times_monomial(q, c);
    }
    return Q;
}

namespace {

// Highest variable index occurring in f, or -1 for constants.
int main_variable(const GradedPoly& f) {
    int best = -1;
    for (const auto& [m, c] : f.terms()) {
        (void)c;
        for (int i = int(kMaxVars) - 1; i > best; --i)
            if (m[i] != 0) best = i;
    }
    return best;
}

uint32_t degree_in(const GradedPoly& f, uint32_t v) {
    uint32_t d = 0;
    for (const auto& [m, c] : f.terms()) {
        (void)c;
        d = std::max<uint32_t>(d, m[v]);
    }
    return d;
}

GradedPoly coeff_of(const GradedPoly& f, uint32_t v, uint32_t k) {
    GradedPoly r(f.p(), f.nvars());
    for (const auto& [m, c] : f.terms())
        if (m[v] == k) {
            Mono t = m;
            t[v] = 0;
            r.add_term(t, c);
        }
    return r;
}

GradedPoly shift_in(const GradedPoly& f, uint32_t v, uint32_t k) {
    Mono m{};
    m[v] = static_cast<uint16_t>(k);
    return f.times_monomial(m, 1);
}

GradedPoly content_wrt(const GradedPoly& f, uint32_t v) {
    std::vector<GradedPoly> coeffs;
    for (uint32_t k = 0; k <= degree_in(f, v); ++k) {
        GradedPoly c = coeff_of(f, v, k);
        if (!c.is_zero()) coeffs.push_back(std::move(c));
    }
    return gcd_list(coeffs);
}

// Pseudo-remainder of a by b with respect to v; deg_v(b) >= 1.
GradedPoly prem(GradedPoly a, const GradedPoly& b, uint32_t v) {
    uint32_t db = degree_in(b, v);
    GradedPoly lcb = coeff_of(b, v, db);
    while (!a.is_zero() && degree_in(a, v) >= db) {
        uint32_t da = degree_in(a, v);
        GradedPoly lca = coeff_of(a, v, da);
        a = a * lcb - shift_in(lca, v, da - db) * b;
    }
    return a;
}

} // namespace

GradedPoly multivariate_gcd(const GradedPoly& f, const GradedPoly& g) {
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    if (f.is_constant() || g.is_constant())
        return GradedPoly::constant(f.p(), f.nvars(), 1);

    int vf = main_variable(f), vg = main_variable(g);
    uint32_t v = static_cast<uint32_t>(std::max(vf, vg));

    if (degree_in(f, v) == 0 || degree_in(g, v) == 0) {
        // One side is free of the top variable: gcd divides its content.
        const GradedPoly& free_side = degree_in(f, v) == 0 ? f : g;
        const GradedPoly& other = degree_in(f, v) == 0 ? g : f;
        return multivariate_gcd(free_side, content_wrt(other, v));
    }

    GradedPoly cf = content_wrt(f, v), cg = content_wrt(g, v);
    GradedPoly a = *divide_exact(cf, f);
    GradedPoly b = *divide_exact(cg, g);
    GradedPoly c = multivariate_gcd(cf, cg);

    while (!b.is_zero() && degree_in(b, v) > 0) {
        GradedPoly r = prem(a, b, v);
        a = b;
        if (r.is_zero()) {
            b = r;
        } else {
            b = *divide_exact(content_wrt(r, v), r);
        }
    }
    GradedPoly pp = b.is_zero() ? a : GradedPoly::constant(f.p(), f.nvars(), 1);
    return (c * pp).monic();
}

GradedPoly gcd_list(const std::vector<GradedPoly>& fs) {
    if (fs.empty()) throw zero_ideal("gcd of an empty list");
    GradedPoly g = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) g = multivariate_gcd(g, fs[i]);
    return g.monic();
}

GradedPoly reflexive_closure(const std::vector<GradedPoly>& gens) {
    std::vector<GradedPoly> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) throw zero_ideal("reflexive closure of the zero ideal");
    return gcd_list(nonzero);
}

bool pseudo_null_test(const std::vector<GradedPoly>& ann_gens) {
    std::vector<GradedPoly> nonzero;
    for (const auto& g : ann_gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return false;  // annihilator zero: the module is R itself
    GradedPoly g = gcd_list(nonzero);
    return g.is_constant() && !g.is_zero();
}

bool is_b1_monomial(const Mono& m, uint32_t t, uint32_t p) {
    for (uint32_t i = 0; i < t; ++i)
        if (m[i] % p != 0) return false;
    return true;
}

bool is_b1_polynomial(const GradedPoly& f, uint32_t t) {
    for (const auto& [m, c] : f.terms()) {
        (void)c;
        if (!is_b1_monomial(m, t, f.p())) return false;
    }
    return true;
}

FrobeniusSplit frobenius_decompose(const GradedPoly& f, uint32_t t) {
    if (t > f.nvars()) throw index_out_of_range("t exceeds the number of variables");
    FrobeniusSplit split{t, {}};
    const uint32_t p = f.p();
    for (const auto& [m, c] : f.terms()) {
        Mono alpha{}, u = m;
        for (uint32_t i = 0; i < t; ++i) {
            alpha[i] = static_cast<uint16_t>(m[i] % p);
            u[i] = static_cast<uint16_t>(m[i] - alpha[i]);
        }
        auto it = split.components.find(alpha);
        if (it == split.components.end())
            it = split.components.emplace(alpha, GradedPoly(p, f.nvars())).first;
        it->second.add_term(u, c);
    }
    return split;
}

GradedPoly frobenius_reassemble(const FrobeniusSplit& split, uint32_t p, uint32_t nvars) {
    GradedPoly f(p, nvars);
    for (const auto& [alpha, u] : split.components) f = f + u.times_monomial(alpha, 1);
    return f;
}

GradedPoly partial_j(const GradedPoly& f, uint32_t j, uint32_t t) {
    if (j >= t) throw index_out_of_range("derivation index must be < t");
    const uint32_t p = f.p();
    GradedPoly r(p, f.nvars());
    for (const auto& [m, c] : f.terms()) {
        uint8_t aj = static_cast<uint8_t>(m[j] % p);
        if (aj == 0) continue;
        Mono e = m;
        e[j] = static_cast<uint16_t>(e[j] - 1);
        r.add_term(e, f.field().mul(c, aj));
    }
    return r;
}

DerivationOp::DerivationOp(uint32_t t_, std::vector<GradedPoly> images_)
    : t(t_), images(std::move(images_)) {
    for (std::size_t j = t; j < images.size(); ++j)
        if (!images[j].is_zero())
            throw invalid_parameter("derivation image at a B1 generator must vanish");
}

bool DerivationOp::is_zero() const {
    return std::all_of(images.begin(), images.end(),
                       [](const GradedPoly& g) { return g.is_zero(); });
}

bool DerivationOp::operator==(const DerivationOp& o) const {
    return t == o.t && images == o.images;
}

GradedPoly apply_derivation(const DerivationOp& D, const GradedPoly& f) {
    GradedPoly r(f.p(), f.nvars());
    for (uint32_t j = 0; j < D.t && j < D.images.size(); ++j) {
        if (D.images[j].is_zero()) continue;
        r = r + D.images[j] * partial_j(f, j, D.t);
    }
    return r;
}

} // namespace iwa

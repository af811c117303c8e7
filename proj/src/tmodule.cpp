#include "drinfeld/tmodule.hpp"

#include <sstream>

namespace drinfeld {

namespace {

RationalFn theta_fn(const FieldPtr& F) { return RationalFn(Poly::variable(F)); }
RationalFn konst(const FieldPtr& F, std::int64_t c) { return RationalFn(Poly::constant(F, F->from_int(c))); }

KMat theta_id(const FieldPtr& F, std::size_t d) { return KMat::scalar(F, d, theta_fn(F)); }

void need_rank2(const TModule& phi) {
    if (phi.dim() != 1 || phi.a.empty()) throw DomainError("expected a Drinfeld module");
    if (phi.rank < 2) throw DomainError("construction needs a Drinfeld module of rank >= 2");
}

// (-1)^{r-1} a_r^{-1}
RationalFn sign_inverse(const TModule& phi) {
    const RationalFn& ar = phi.a.back();
    RationalFn u = ar.inv();
    return (phi.rank % 2 == 0) ? -u : u;
}

TModule base_of(const TModule& phi, ModuleType t, int n, std::vector<KMat> coeffs) {
    TModule G;
    G.F = phi.F;
    G.type = t;
    G.rank = phi.rank;
    G.n = n;
    G.a = phi.a;
    const std::size_t d = coeffs.front().rows();
    G.phi_t = SkewPoly(phi.F, d, std::move(coeffs));
    validate(G);
    return G;
}

}  // namespace

SkewPoly::SkewPoly(FieldPtr F, std::size_t d, std::vector<KMat> coeffs) : F_(std::move(F)), d_(d), c_(std::move(coeffs)) {
    for (const auto& m : c_)
        if (m.rows() != d_ || m.cols() != d_) throw DomainError("skew polynomial coefficient of the wrong size");
    trim();
}

SkewPoly SkewPoly::constant(const KMat& c) { return SkewPoly(c.field(), c.rows(), {c}); }

void SkewPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KMat SkewPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : KMat(F_, d_, d_); }

SkewPoly& SkewPoly::operator+=(const SkewPoly& b) {
    if (d_ != b.d_) throw DomainError("skew polynomial size mismatch");
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), KMat(F_, d_, d_));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
}

SkewPoly operator*(const SkewPoly& a, const SkewPoly& b) {
    if (a.d_ != b.d_) throw DomainError("skew polynomial size mismatch");
    if (a.c_.empty() || b.c_.empty()) return SkewPoly(a.F_, a.d_, {});
    std::vector<KMat> r(a.c_.size() + b.c_.size() - 1, KMat(a.F_, a.d_, a.d_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j].twist(static_cast<int>(i));
    }
    return SkewPoly(a.F_, a.d_, std::move(r));
}

SkewPoly SkewPoly::scaled(FqElem c) const {
    const RationalFn s(Poly::constant(F_, c));
    std::vector<KMat> r;
    for (const auto& m : c_) r.push_back(m.scaled(s));
    return SkewPoly(F_, d_, std::move(r));
}

std::string module_type_name(ModuleType t) {
    switch (t) {
        case ModuleType::drinfeld: return "drinfeld";
        case ModuleType::carlitz_tensor: return "carlitz_tensor";
        case ModuleType::g_n: return "g_n";
        case ModuleType::wedge: return "wedge";
        case ModuleType::wedge_tensor: return "wedge_tensor";
        case ModuleType::g_prime: return "g_prime";
        case ModuleType::g_tilde: return "g_tilde";
        case ModuleType::custom: return "custom";
    }
    return "custom";
}

ModuleType module_type_from_name(const std::string& s) {
    for (ModuleType t : {ModuleType::drinfeld, ModuleType::carlitz_tensor, ModuleType::g_n, ModuleType::wedge,
                         ModuleType::wedge_tensor, ModuleType::g_prime, ModuleType::g_tilde, ModuleType::custom})
        if (module_type_name(t) == s) return t;
    throw ParseError("unknown module type '" + s + "'");
}

KMat TModule::nilpotent_part() const { return A(0) - theta_id(F, dim()); }

bool TModule::is_integral() const {
    for (const auto& m : phi_t.coeffs())
        if (!drinfeld::is_integral(m)) return false;
    return true;
}

int TModule::tate_rank() const {
    switch (type) {
        case ModuleType::carlitz_tensor: return 1;
        default: return rank;
    }
}

std::string TModule::describe() const {
    std::ostringstream os;
    os << module_type_name(type) << " over F_" << F->q() << ": dimension " << dim() << ", rank " << tate_rank();
    if (type != ModuleType::custom && type != ModuleType::carlitz_tensor) os << ", r = " << rank;
    if (type != ModuleType::drinfeld && type != ModuleType::wedge && type != ModuleType::custom) os << ", n = " << n;
    os << "\n";
    for (std::size_t i = 0; i < phi_t.coeffs().size(); ++i) os << "  A_" << i << " = " << mat_str(A(i)) << "\n";
    return os.str();
}

void validate(const TModule& G) {
    if (!G.F) throw DomainError("t-module without a field");
    if (G.phi_t.degree() < 1) throw DomainError("φ(t) must have positive τ-degree");
    const KMat N = G.nilpotent_part();
    if (G.dim() > 0 && N.nilpotency_index() == 0) throw DomainError("A_0 - θ Id is not nilpotent");
    if (!is_integral(N)) throw DomainError("A_0 - θ Id must have entries in A");
    if (G.tate_rank() < 1) throw DomainError("t-module rank must be positive");
}

TModule make_drinfeld(const FieldPtr& F, const std::vector<RationalFn>& a) {
    if (a.empty()) throw DomainError("a Drinfeld module needs rank >= 1");
    if (a.back().is_zero()) throw DomainError("leading coefficient a_r must be nonzero");
    TModule G;
    G.F = F;
    G.type = ModuleType::drinfeld;
    G.rank = static_cast<int>(a.size());
    G.a = a;
    std::vector<KMat> c{KMat::scalar(F, 1, theta_fn(F))};
    for (const auto& x : a) c.push_back(KMat::scalar(F, 1, x));
    G.phi_t = SkewPoly(F, 1, std::move(c));
    validate(G);
    return G;
}

TModule make_carlitz_tensor(const FieldPtr& F, int n, const RationalFn& b) {
    if (n < 1) throw DomainError("Carlitz tensor power needs n >= 1");
    if (b.is_zero()) throw DomainError("twist parameter b must be nonzero");
    const std::size_t d = static_cast<std::size_t>(n);
    KMat A0 = theta_id(F, d);
    for (std::size_t i = 0; i + 1 < d; ++i) A0(i, i + 1) = konst(F, 1);
    KMat A1(F, d, d);
    A1(d - 1, 0) = b;
    TModule G;
    G.F = F;
    G.type = ModuleType::carlitz_tensor;
    G.rank = 1;
    G.n = n;
    G.a = {RationalFn::one(F)};
    G.b = b;
    G.phi_t = SkewPoly(F, d, {A0, A1});
    validate(G);
    return G;
}

KMat g_n_N(const FieldPtr& F, int r, int n) {
    const std::size_t d = static_cast<std::size_t>(r * n + 1), R = static_cast<std::size_t>(r);
    KMat N(F, d, d);
    for (std::size_t i = 0; i + R < d; ++i) N(i, i + R) = konst(F, 1);
    return N;
}

KMat g_n_E(const FieldPtr& F, const std::vector<RationalFn>& a, int n) {
    const int r = static_cast<int>(a.size());
    const std::size_t d = static_cast<std::size_t>(r * n + 1);
    KMat E(F, d, d);
    for (int j = 0; j + 1 < r; ++j) E(static_cast<std::size_t>(r * n + 1 - r + j), static_cast<std::size_t>(j)) = konst(F, 1);
    for (int j = 0; j < r; ++j) E(d - 1, static_cast<std::size_t>(j)) = a[static_cast<std::size_t>(j)];
    return E;
}

KMat wedge_E1(const FieldPtr& F, const std::vector<RationalFn>& a) {
    const int r = static_cast<int>(a.size());
    const std::size_t d = static_cast<std::size_t>(r - 1);
    KMat M(F, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        M(i, 0) = -a[static_cast<std::size_t>(r) - 2 - i];
        if (i + 1 < d) M(i, i + 1) = a.back();
    }
    return (r % 2 == 0) ? -M : M;
}

KMat wedge_E2(const FieldPtr& F, const std::vector<RationalFn>& a) {
    const std::size_t d = a.size() - 1;
    KMat M(F, d, d);
    M(d - 1, 0) = a.back();
    return M;
}

KMat wedge_tensor_N(const FieldPtr& F, int r, int n) {
    const std::size_t d = static_cast<std::size_t>(r * n + r - 1), R = static_cast<std::size_t>(r);
    KMat N(F, d, d);
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(r * n); ++i) N(i, i + R) = konst(F, 1);
    return N;
}

KMat wedge_tensor_E(const FieldPtr& F, const std::vector<RationalFn>& a, int n) {
    const int r = static_cast<int>(a.size());
    const std::size_t d = static_cast<std::size_t>(r * n + r - 1), rn = static_cast<std::size_t>(r * n);
    KMat E(F, d, d);
    E(rn - 1, 0) = konst(F, 1);
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(r); ++i) {
        E(rn + i, 0) = -a[static_cast<std::size_t>(r) - 2 - i];
        E(rn + i, i + 1) = a.back();
    }
    return (r % 2 == 0) ? -E : E;
}

TModule make_g_n(const TModule& phi, int n) {
    need_rank2(phi);
    if (n < 0) throw DomainError("n must be non-negative");
    if (n == 0) {
        TModule G = phi;
        G.type = ModuleType::g_n;
        return G;
    }
    const FieldPtr& F = phi.F;
    const std::size_t d = static_cast<std::size_t>(phi.rank * n + 1);
    return base_of(phi, ModuleType::g_n, n, {theta_id(F, d) + g_n_N(F, phi.rank, n), g_n_E(F, phi.a, n)});
}

TModule make_wedge(const TModule& phi) {
    need_rank2(phi);
    const FieldPtr& F = phi.F;
    const std::size_t d = static_cast<std::size_t>(phi.rank - 1);
    return base_of(phi, ModuleType::wedge, 0, {theta_id(F, d), wedge_E1(F, phi.a), wedge_E2(F, phi.a)});
}

TModule make_wedge_tensor(const TModule& phi, int n) {
    need_rank2(phi);
    if (n < 0) throw DomainError("n must be non-negative");
    if (n == 0) {
        TModule G = make_wedge(phi);
        G.type = ModuleType::wedge_tensor;
        return G;
    }
    const FieldPtr& F = phi.F;
    const std::size_t d = static_cast<std::size_t>(phi.rank * n + phi.rank - 1);
    return base_of(phi, ModuleType::wedge_tensor, n,
                   {theta_id(F, d) + wedge_tensor_N(F, phi.rank, n), wedge_tensor_E(F, phi.a, n)});
}

TModule make_g_prime(const TModule& phi, int n) {
    need_rank2(phi);
    if (n < 0) throw DomainError("n must be non-negative");
    const FieldPtr& F = phi.F;
    const RationalFn u = sign_inverse(phi);
    if (n == 0) {
        const std::size_t d = static_cast<std::size_t>(phi.rank - 1);
        const RationalFn s2 = phi.a.back().pow(-static_cast<std::int64_t>(F->q()) - 1);
        return base_of(phi, ModuleType::g_prime, 0,
                       {theta_id(F, d), wedge_E1(F, phi.a).scaled(u), wedge_E2(F, phi.a).scaled(s2)});
    }
    const std::size_t d = static_cast<std::size_t>(phi.rank * n + phi.rank - 1);
    return base_of(phi, ModuleType::g_prime, n,
                   {theta_id(F, d) + wedge_tensor_N(F, phi.rank, n), wedge_tensor_E(F, phi.a, n).scaled(u)});
}

TModule make_g_tilde(const TModule& psi, int n) {
    need_rank2(psi);
    if (n < 0) throw DomainError("n must be non-negative");
    for (std::size_t i = 0; i + 1 < psi.a.size(); ++i)
        if (!psi.a[i].is_polynomial()) throw DomainError("G~_n needs a_1..a_{r-1} in A");
    const RationalFn& ar = psi.a.back();
    if (!ar.is_polynomial() || !ar.num().is_constant() || ar.is_zero())
        throw DomainError("G~_n needs a_r in F_q^x (everywhere good reduction)");
    const FieldPtr& F = psi.F;
    const RationalFn u = sign_inverse(psi);
    if (n == 0) {
        TModule G = conjugate_by_root(psi, u);
        G.type = ModuleType::g_tilde;
        G.a = psi.a;
        return G;
    }
    const std::size_t d = static_cast<std::size_t>(psi.rank * n + 1);
    return base_of(psi, ModuleType::g_tilde, n, {theta_id(F, d) + g_n_N(F, psi.rank, n), g_n_E(F, psi.a, n).scaled(u)});
}

TModule make_custom(const FieldPtr& F, const std::vector<KMat>& coeffs, int tate_rank) {
    if (coeffs.empty()) throw DomainError("custom module needs coefficient matrices");
    TModule G;
    G.F = F;
    G.type = ModuleType::custom;
    G.rank = tate_rank;
    G.phi_t = SkewPoly(F, coeffs.front().rows(), coeffs);
    validate(G);
    return G;
}

TModule conjugate_scalar(const TModule& G, const RationalFn& gamma) {
    if (gamma.is_zero()) throw DomainError("conjugation by zero");
    std::vector<KMat> c{G.A(0)};
    std::int64_t Q = 1;
    for (std::size_t i = 1; i < G.phi_t.coeffs().size(); ++i) {
        Q *= G.F->q();
        c.push_back(G.A(i).scaled(gamma.pow(Q - 1)));
    }
    TModule H = G;
    H.phi_t = SkewPoly(G.F, G.dim(), std::move(c));
    return H;
}

TModule conjugate_by_root(const TModule& G, const RationalFn& u) {
    if (u.is_zero()) throw DomainError("conjugation by zero");
    std::vector<KMat> c{G.A(0)};
    std::int64_t e = 0, Q = 1;
    for (std::size_t i = 1; i < G.phi_t.coeffs().size(); ++i) {
        e += Q;  // 1 + q + ... + q^{i-1}
        Q *= G.F->q();
        c.push_back(G.A(i).scaled(u.pow(e)));
    }
    TModule H = G;
    H.phi_t = SkewPoly(G.F, G.dim(), std::move(c));
    return H;
}

IntegralModel integral_model(const TModule& G) {
    Poly l = Scalars<Poly>::one(G.F);
    for (std::size_t i = 1; i < G.phi_t.coeffs().size(); ++i) l = lcm(l, common_denominator(G.A(i)));
    if (l.is_one()) return {G, l};
    TModule H = conjugate_scalar(G, RationalFn(l));
    if (!H.is_integral()) throw DomainError("integral model: entries of A_0 are not in A");
    return {H, l};
}

SkewPoly phi_of_a(const TModule& G, const Poly& a) {
    const std::size_t d = G.dim();
    SkewPoly r(G.F, d, {});
    for (std::size_t k = a.size(); k-- > 0;) {
        r = r * G.phi_t;
        const FqElem c = a.coeff(k);
        if (c.v != 0) r += SkewPoly::constant(KMat::scalar(G.F, d, RationalFn(Poly::constant(G.F, c))));
    }
    return r;
}

}  // namespace drinfeld

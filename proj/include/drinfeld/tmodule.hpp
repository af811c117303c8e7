#pragma once

#include <string>
#include <vector>

#include "drinfeld/matrix.hpp"

namespace drinfeld {

// Σ c_i τ^i with square matrix coefficients over K; τ c = c^{(1)} τ.
class SkewPoly {
public:
    SkewPoly() = default;
    SkewPoly(FieldPtr F, std::size_t d, std::vector<KMat> coeffs);
    static SkewPoly constant(const KMat& c);

    const FieldPtr& field() const { return F_; }
    std::size_t dim() const { return d_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<KMat>& coeffs() const { return c_; }
    KMat coeff(std::size_t i) const;

    SkewPoly& operator+=(const SkewPoly& b);
    friend SkewPoly operator+(SkewPoly a, const SkewPoly& b) { return a += b; }
    friend SkewPoly operator*(const SkewPoly& a, const SkewPoly& b);
    friend bool operator==(const SkewPoly& a, const SkewPoly& b) { return a.d_ == b.d_ && a.c_ == b.c_; }
    SkewPoly scaled(FqElem c) const;

private:
    void trim();

    FieldPtr F_;
    std::size_t d_ = 0;
    std::vector<KMat> c_;
};

enum class ModuleType { drinfeld, carlitz_tensor, g_n, wedge, wedge_tensor, g_prime, g_tilde, custom };

std::string module_type_name(ModuleType t);
ModuleType module_type_from_name(const std::string& s);

// An abelian t-module (G_a^d, φ) over K given by φ(t) = A_0 + A_1 τ + ... + A_m τ^m.
struct TModule {
    FieldPtr F;
    ModuleType type = ModuleType::custom;
    // rank of the underlying Drinfeld module (1 for Carlitz tensor powers)
    int rank = 0;
    int n = 0;
    std::vector<RationalFn> a;  // a_1..a_r of the underlying Drinfeld module
    RationalFn b;               // twist parameter of C_n^{(b)}
    SkewPoly phi_t;

    std::size_t dim() const { return phi_t.dim(); }
    const KMat& A(std::size_t i) const { return phi_t.coeffs()[i]; }
    int tau_degree() const { return phi_t.degree(); }
    // A_0 - θ Id
    KMat nilpotent_part() const;
    int nilpotency_index() const { return nilpotent_part().nilpotency_index(); }
    bool is_integral() const;
    // rank of the v-adic Tate module (degree of the local factors)
    int tate_rank() const;
    // exponent w with Q_β(0) = c β(t)^w
    int weight() const { return static_cast<int>(dim()); }
    std::string describe() const;
};

// Checks A_0 = θ Id + N with N nilpotent over A; throws DomainError otherwise.
void validate(const TModule& G);

TModule make_drinfeld(const FieldPtr& F, const std::vector<RationalFn>& a);
TModule make_carlitz_tensor(const FieldPtr& F, int n, const RationalFn& b);
TModule make_g_n(const TModule& phi, int n);
TModule make_wedge(const TModule& phi);
TModule make_wedge_tensor(const TModule& phi, int n);
TModule make_g_prime(const TModule& phi, int n);
TModule make_g_tilde(const TModule& psi, int n);
TModule make_custom(const FieldPtr& F, const std::vector<KMat>& coeffs, int tate_rank);

// The matrices N and E of φ ⊗ C^{⊗n} (rank r >= 2, n >= 1).
KMat g_n_N(const FieldPtr& F, int r, int n);
KMat g_n_E(const FieldPtr& F, const std::vector<RationalFn>& a, int n);
// N' and E' of (∧^{r-1}φ) ⊗ C^{⊗n}, and E_1', E_2' of ∧^{r-1}φ.
KMat wedge_tensor_N(const FieldPtr& F, int r, int n);
KMat wedge_tensor_E(const FieldPtr& F, const std::vector<RationalFn>& a, int n);
KMat wedge_E1(const FieldPtr& F, const std::vector<RationalFn>& a);
KMat wedge_E2(const FieldPtr& F, const std::vector<RationalFn>& a);

// γ^{-1} φ γ for the scalar γ: A_i -> γ^{q^i - 1} A_i.
TModule conjugate_scalar(const TModule& G, const RationalFn& gamma);
// the same conjugation given only u = γ^{q-1}: A_i -> u^{(q^i-1)/(q-1)} A_i
TModule conjugate_by_root(const TModule& G, const RationalFn& u);

struct IntegralModel {
    TModule module;
    Poly conjugator;  // 𝔞
};
IntegralModel integral_model(const TModule& G);

// φ(a) for a ∈ F_q[t].
SkewPoly phi_of_a(const TModule& G, const Poly& a);

}  // namespace drinfeld

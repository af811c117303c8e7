#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/ffield.hpp"
#include "drinfeld/laurent.hpp"
#include "drinfeld/tmodule.hpp"

namespace drinfeld {

using FqMatrix = DenseMatrix<FqField>;

// A/βA with the matrix of x -> x^q on the power basis 1, θ, ..., θ^{deg β - 1}.
struct PrimeField {
    Poly beta;
    ResidueField L;
    FqMatrix frobenius_matrix;
};
PrimeField prime_field(const Poly& beta);

// x -> φ̄(t) x on (A/βA)^d in the basis e_j ⊗ θ^k (index j·deg β + k).
// With lie = true only A_0 is used.
FqMatrix t_action_matrix(const TModule& G, const Poly& beta, bool lie = false);
// Monic generators of the Fitting ideals, in the variable t.
Poly count_module(const TModule& G, const Poly& beta);
Poly count_lie(const TModule& G, const Poly& beta);

// Characteristic polynomial (variable t) of an F_q-matrix.
Poly charpoly_t(const FieldPtr& F, const FqMatrix& m);

struct LValue {
    LaurentSeries value;
    int D = 0;
    std::int64_t M = 0;
    bool stabilized = false;
    std::vector<Poly> skipped_primes;
    std::vector<std::pair<Poly, LaurentSeries>> per_prime;
};

// Per-prime data; qpoly holds Q_β(X) = Σ qpoly[i] X^i (monic of degree tate_rank) when computed.
struct LocalFactor {
    Poly beta;
    Poly count_G;
    Poly count_Lie;
    std::vector<Poly> qpoly;
    FqElem c{0};
    bool has_qpoly() const { return !qpoly.empty(); }
};

// The identities c^{-1}Q(1) = count_G, Q(0) = c β(t)^w, count_Lie = β(t)^d; returns a diagnostic or "".
std::string local_factor_inconsistency(const LocalFactor& lf, int weight, int dim);

class LocalFactorCache;

// Π_{deg β <= D} count_Lie(θ)/count_G(θ) mod θ^{-M}
LValue taelman_L(const TModule& G, int D, std::int64_t M, LocalFactorCache* cache = nullptr);
// Σ_{a monic, deg a <= D} a^{-n} mod θ^{-M}; stabilized when the degree-D stratum vanishes mod θ^{-M}
LValue zeta_direct(const FieldPtr& F, int n, int D, std::int64_t M);

// Auxiliary prime v = t - c used to power k.
struct AuxPrime {
    FqElem c;
    int k = 1;
};

// Q_β mod (t-c)^k from the τ^{deg β} action on the reduced motive M/v^k M.
std::vector<Poly> frobenius_charpoly_mod(const TModule& G, const Poly& beta, const AuxPrime& v);

struct FrobeniusCharpoly {
    std::vector<Poly> coeffs;  // Q_β, monic of degree tate_rank
    FqElem c{0};
    std::vector<AuxPrime> primes;
};
// The default schedule uses the degree-1 primes in index order with equal powers until the
// CRT modulus degree exceeds w·deg β.
FrobeniusCharpoly frobenius_charpoly(const TModule& G, const Poly& beta,
                                     const std::optional<std::vector<AuxPrime>>& primes = std::nullopt);
std::vector<AuxPrime> default_aux_primes(const TModule& G, const Poly& beta, const std::vector<FqElem>& exclude = {});

// count_G and count_Lie, plus Q_β when with_q (skipped with ReductionFailure at bad primes).
LocalFactor local_factor(const TModule& G, const Poly& beta, bool with_q, LocalFactorCache* cache = nullptr);

// Q_β(1)/Q_β(0) in F_q(t)
RationalFn dual_factor_at_one(const LocalFactor& lf);
// P_β(β(θ)^{-n})^{-1} exactly, with P_β(X) = X^r Q_β(1/X)
RationalFn goss_factor_rational(const LocalFactor& lf, int n);
// the same mod θ^{-M}; DomainError unless it is a 1-unit
LaurentSeries goss_factor(const LocalFactor& lf, int n, std::int64_t M);

// Π_{good β, deg β <= D} P_β(β^{-n})^{-1} mod θ^{-M}
LValue goss_L(const TModule& G, int n, int D, std::int64_t M, LocalFactorCache* cache = nullptr);

struct TorsionData {
    int extension_degree = 0;  // s
    std::vector<std::vector<FqElem>> basis;  // F_q-coordinates in (F_{β^s})^d
    // matrix of τ^{deg β} on an F_q[t]/(v^k)-basis, entries as polynomials in t of degree < k
    std::vector<std::vector<Poly>> frobenius;
};
// G[v^k] in (F_{β^s})^d for the smallest s <= s_max with full F_q-dimension r·k.
TorsionData torsion_kernel(const TModule& G, const Poly& beta, const AuxPrime& v, int s_max = 12);
// characteristic polynomial of TorsionData::frobenius over F_q[t]/(v^k)
std::vector<Poly> torsion_charpoly(const FieldPtr& F, const TorsionData& T, const AuxPrime& v);

struct TransformReport {
    bool ok = false;
    std::vector<Poly> q_phi, q_tilde, q_prime;
    std::vector<Poly> expected_tilde, expected_prime;
    std::string detail;
};
// Q_β of make_g_tilde(φ, n) and make_g_prime(φ, n) against the root transforms
// β^{n+1} α_i / (α_1...α_r) and β^{n+1}/α_i of Q_β(φ).
TransformReport eigenvalue_transform_check(const TModule& phi, int n, const Poly& beta);

// Elementary symmetric functions e_0..e_r of the roots of a monic polynomial and back.
std::vector<RationalFn> elementary_symmetric(const std::vector<Poly>& monic_coeffs);
std::vector<RationalFn> from_elementary_symmetric(const std::vector<RationalFn>& e);

// Invariant factors of t Id - m over F_q[t] (Smith form), monic, non-unit ones only.
std::vector<Poly> smith_invariant_factors(const FieldPtr& F, const FqMatrix& m);
// |N|_A by enumerating all q^n vectors: Π over irreducible π of π^{e} with q^{e deg π} = |N[π^∞]|.
Poly brute_force_count(const FieldPtr& F, const FqMatrix& m);

// Monic irreducibles of degree 1..D in the deterministic order.
std::vector<Poly> primes_up_to(const FieldPtr& F, int D);

}  // namespace drinfeld

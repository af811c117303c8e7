#pragma once

#include <map>
#include <vector>

#include "drinfeld/tate.hpp"
#include "drinfeld/tmodule.hpp"

namespace drinfeld {

enum class SeriesKind { exp, log };

// Exp_G = Σ α_k τ^k or Log_G = Σ β_k τ^k; coefficient k is num[k] / den[k] (den not
// necessarily reduced against num).
struct ExpLogSeries {
    SeriesKind kind = SeriesKind::exp;
    std::vector<PMat> num;
    std::vector<Poly> den;

    int computed_to() const { return static_cast<int>(num.size()) - 1; }
    KMat coeff(int k) const;
};

// Exp: α_k A_0^{(k)} - A_0 α_k = Σ_{j>=1} A_j α_{k-j}^{(j)}.
// Log: β_k A_0^{(k)} - A_0 β_k = -Σ_{j>=1} β_{k-j} A_j^{(k-j)}.
// Both need A_0 - θ Id over A.
ExpLogSeries exp_series(const TModule& G, int kmax);
ExpLogSeries log_series(const TModule& G, int kmax);
ExpLogSeries extend_series(const TModule& G, const ExpLogSeries& s, int kmax);

// The defining identity checked exactly over K for k = 1..computed_to.
bool series_residual_zero(const TModule& G, const ExpLogSeries& s);
// Σ_{i+j=k} β_i α_j^{(i)} = 0 for 1 <= k <= min(computed_to).
bool log_exp_telescopes(const ExpLogSeries& exp, const ExpLogSeries& log);

// Evaluates Exp_G or Log_G on Lie vectors over K_∞ or K_∞(η). The sum stops once the
// last three term valuations increase strictly and the extrapolated next term is below
// the target; the output precision is min(target, extrapolated tail).
class SeriesEvaluator {
public:
    SeriesEvaluator(TModule G, SeriesKind kind, int kmax = 24);

    LieVec operator()(const LieVec& x, std::int64_t theta_prec);
    const ExpLogSeries& series() const { return s_; }
    const TModule& module() const { return G_; }

private:
    const std::vector<LaurentSeries>& coeff_laurent(int k, std::int64_t prec, int ram);

    TModule G_;
    ExpLogSeries s_;
    int kmax_;
    struct Cached {
        std::int64_t prec = 0;
        std::vector<LaurentSeries> entries;
    };
    std::map<std::pair<int, int>, Cached> cache_;
};

LieVec exp_eval(const TModule& G, const LieVec& x, std::int64_t theta_prec);
LieVec log_eval(const TModule& G, const LieVec& x, std::int64_t theta_prec);

// 𝒢_w(t) = Σ_i Exp_G(A_0^{-i-1} w) t^i, one Tate series per coordinate.
struct AGFVector {
    std::vector<TateSeries> series;
    int t_precision = 0;
    std::int64_t theta_precision = 0;
};

AGFVector agf(const TModule& G, const LieVec& w, int t_prec, std::int64_t theta_prec, SeriesEvaluator* exp = nullptr);
// φ(t)·𝒢_w = t 𝒢_w + Exp_G(w) through t^T modulo θ^{-M}
bool agf_identity_holds(const TModule& G, const AGFVector& g, const LieVec& exp_w, std::int64_t theta_prec);

// Rows [-λ_j, f_{λ_j}^{(1)}(θ), ..., f_{λ_j}^{(r-1)}(θ)] for a Drinfeld module of rank r.
struct PeriodMatrix {
    std::vector<std::vector<LaurentSeries>> rows;
    std::int64_t theta_precision = 0;
};
PeriodMatrix quasi_periods(const TModule& phi, const std::vector<LaurentSeries>& lambdas, std::int64_t theta_prec);

LaurentSeries determinant(const std::vector<std::vector<LaurentSeries>>& m);

// det(𝒫)·π̃^{-1} with an attempt to recognise it as an element of K.
struct LegendreRatio {
    LaurentSeries value;
    bool in_kinf = false;
    Reconstruction reconstruction;
};
LegendreRatio legendre_ratio(const PeriodMatrix& P, int dmax);

}  // namespace drinfeld

#include "drinfeld/matrix.hpp"

namespace drinfeld {

LieVec apply(const KMat& m, const LieVec& x, std::int64_t prec, int ram) {
    if (m.cols() != x.size()) throw DomainError("matrix-vector size mismatch");
    const FieldPtr& F = m.field();
    LieVec r(m.rows(), LaurentSeries::zero(F, LaurentSeries::kExact, ram));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j].is_exact_zero()) continue;
        const std::int64_t v = x[j].is_zero() ? x[j].precision() : x[j].valuation();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (m(i, j).is_zero()) continue;
            r[i] += LaurentSeries::from_rational(m(i, j), prec - v, ram) * x[j];
        }
    }
    for (auto& y : r) y = y.truncated(prec);
    return r;
}

std::string mat_str(const KMat& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ", ";
        s += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += m(i, j).str();
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace drinfeld

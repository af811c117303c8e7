#pragma once

// Dense matrices over A = F_q[θ] (Poly) and K = F_q(θ) (RationalFn).

#include <string>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/laurent.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

template <class T>
struct Scalars;

template <>
struct Scalars<Poly> {
    static Poly zero(const FieldPtr& F) { return Poly(F); }
    static Poly one(const FieldPtr& F) { return Poly::constant(F, F->one()); }
};

template <>
struct Scalars<RationalFn> {
    static RationalFn zero(const FieldPtr& F) { return RationalFn::zero(F); }
    static RationalFn one(const FieldPtr& F) { return RationalFn::one(F); }
};

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr F, std::size_t rows, std::size_t cols)
        : F_(std::move(F)), r_(rows), c_(cols), a_(rows * cols, Scalars<T>::zero(F_)) {}

    static Mat identity(const FieldPtr& F, std::size_t n) { return scalar(F, n, Scalars<T>::one(F)); }
    static Mat scalar(const FieldPtr& F, std::size_t n, const T& s) {
        Mat m(F, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }

    const FieldPtr& field() const { return F_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<T>& entries() const { return a_; }

    Mat& operator+=(const Mat& b) {
        check_same(b);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
        return *this;
    }
    Mat& operator-=(const Mat& b) {
        check_same(b);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
        return *this;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw DomainError("matrix size mismatch in product");
        Mat r(a.F_ ? a.F_ : b.F_, a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

    Mat scaled(const T& s) const {
        Mat r = *this;
        for (auto& x : r.a_)
            if (!x.is_zero()) x = x * s;
        return r;
    }
    Mat twist(int j) const {
        Mat r = *this;
        for (auto& x : r.a_) x = x.twist(j);
        return r;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    // smallest k >= 1 with M^k = 0, or 0 if the matrix is not nilpotent
    int nilpotency_index() const {
        if (r_ != c_) throw DomainError("nilpotency of a non-square matrix");
        Mat p = *this;
        for (std::size_t k = 1; k <= r_ + 1; ++k) {
            if (p.is_zero()) return static_cast<int>(k);
            p = p * *this;
        }
        return 0;
    }

private:
    void check_same(const Mat& b) const {
        if (r_ != b.r_ || c_ != b.c_) throw DomainError("matrix size mismatch");
    }

    FieldPtr F_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using PMat = Mat<Poly>;
using KMat = Mat<RationalFn>;

inline KMat to_kmat(const PMat& m) {
    KMat r(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RationalFn(m(i, j));
    return r;
}

// Entries in A, or throws DomainError.
inline PMat to_pmat(const KMat& m) {
    PMat r(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_polynomial()) throw DomainError("matrix entry is not in A");
            r(i, j) = m(i, j).num();
        }
    return r;
}

inline bool is_integral(const KMat& m) {
    for (const auto& x : m.entries())
        if (!x.is_polynomial()) return false;
    return true;
}

// monic lcm of the entry denominators
inline Poly common_denominator(const KMat& m) {
    Poly d = Scalars<Poly>::one(m.field());
    for (const auto& x : m.entries()) d = lcm(d, x.den());
    return d;
}

using LieVec = std::vector<LaurentSeries>;

// m·x with the entries of m expanded to precision prec (ϖ-units of ram)
LieVec apply(const KMat& m, const LieVec& x, std::int64_t prec, int ram);

// Row-major nested representation, e.g. "[[θ, 1], [0, θ]]".
std::string mat_str(const KMat& m);

}  // namespace drinfeld

#pragma once

#include <albaxter/core.hpp>

#include <algorithm>
#include <cmath>

namespace albaxter {

/// 2x2 matrix over a ring. Entry products keep left-right order, so T may be
/// non-commutative (operators, operator-valued Laurent polynomials).
template <class T>
struct Mat2 {
    T a11{}, a12{}, a21{}, a22{};

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
    }

    T trace() const { return a11 + a22; }

    /// Only meaningful for commutative T.
    T det() const { return a11 * a22 - a12 * a21; }

    const T& operator()(int i, int j) const {
        return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
    }
    T& operator()(int i, int j) {
        return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
    }
};

template <class T>
Mat2<T> identity2(T one, T zero) {
    return {one, zero, zero, one};
}

using CMat2 = Mat2<cplx>;

inline double max_abs(const CMat2& m) {
    return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

inline CMat2 inverse(const CMat2& m) {
    const cplx d = m.det();
    if (d == cplx(0.0)) throw DomainError("inverse: singular 2x2 matrix");
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

} // namespace albaxter

#pragma once

// Forward-mode dual numbers carrying exact first partials with respect to a
// fixed list of complex variables. Used to take Poisson brackets of
// observables without finite differences.

#include <albaxter/core.hpp>

#include <cmath>
#include <vector>

namespace albaxter {

class MultiDual {
public:
    MultiDual() = default;
    MultiDual(cplx value, std::size_t nvars) : value_(value), partials_(nvars, cplx(0.0)) {}
    // Constants are implicitly promoted; their partial vector is empty and
    // behaves as all zeros.
    MultiDual(cplx value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    MultiDual(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    /// Independent variable `index` out of `nvars`.
    static MultiDual variable(cplx value, std::size_t index, std::size_t nvars) {
        MultiDual d(value, nvars);
        d.partials_.at(index) = 1.0;
        return d;
    }

    cplx value() const { return value_; }
    std::size_t size() const { return partials_.size(); }
    cplx partial(std::size_t i) const { return i < partials_.size() ? partials_[i] : cplx(0.0); }
    const std::vector<cplx>& partials() const { return partials_; }

    MultiDual& operator+=(const MultiDual& o) {
        value_ += o.value_;
        axpy(cplx(1.0), o);
        return *this;
    }
    MultiDual& operator-=(const MultiDual& o) {
        value_ -= o.value_;
        axpy(cplx(-1.0), o);
        return *this;
    }
    MultiDual& operator*=(const MultiDual& o) {
        for (auto& p : partials_) p *= o.value_;
        axpy(value_, o);
        value_ *= o.value_;
        return *this;
    }
    MultiDual& operator/=(const MultiDual& o) {
        const cplx inv = 1.0 / o.value_;
        const cplx quot = value_ * inv;
        for (auto& p : partials_) p *= inv;
        axpy(-quot * inv, o);
        value_ = quot;
        return *this;
    }

    friend MultiDual operator+(MultiDual a, const MultiDual& b) { return a += b; }
    friend MultiDual operator-(MultiDual a, const MultiDual& b) { return a -= b; }
    friend MultiDual operator*(MultiDual a, const MultiDual& b) { return a *= b; }
    friend MultiDual operator/(MultiDual a, const MultiDual& b) { return a /= b; }
    friend MultiDual operator-(MultiDual a) {
        a.value_ = -a.value_;
        for (auto& p : a.partials_) p = -p;
        return a;
    }

    /// Apply a holomorphic scalar function with known derivative.
    MultiDual chain(cplx fvalue, cplx fprime) const {
        MultiDual out(fvalue, partials_.size());
        for (std::size_t i = 0; i < partials_.size(); ++i) out.partials_[i] = fprime * partials_[i];
        return out;
    }

private:
    // this.partials += s * o.partials
    void axpy(cplx s, const MultiDual& o) {
        if (o.partials_.size() > partials_.size()) partials_.resize(o.partials_.size(), cplx(0.0));
        for (std::size_t i = 0; i < o.partials_.size(); ++i) partials_[i] += s * o.partials_[i];
    }

    cplx value_{0.0};
    std::vector<cplx> partials_;
};

inline MultiDual exp(const MultiDual& x) {
    const cplx e = std::exp(x.value());
    return x.chain(e, e);
}
inline MultiDual log(const MultiDual& x) { return x.chain(std::log(x.value()), 1.0 / x.value()); }
inline MultiDual sqrt(const MultiDual& x) {
    const cplx s = std::sqrt(x.value());
    return x.chain(s, 0.5 / s);
}
inline MultiDual sin(const MultiDual& x) { return x.chain(std::sin(x.value()), std::cos(x.value())); }
inline MultiDual cos(const MultiDual& x) { return x.chain(std::cos(x.value()), -std::sin(x.value())); }
inline MultiDual pow(const MultiDual& x, int n) {
    if (n == 0) return MultiDual(cplx(1.0));
    return x.chain(std::pow(x.value(), n), double(n) * std::pow(x.value(), n - 1));
}

/// Scalar value extraction that works for both plain complex numbers and duals.
inline cplx value_of(const cplx& x) { return x; }
inline cplx value_of(const MultiDual& x) { return x.value(); }

} // namespace albaxter

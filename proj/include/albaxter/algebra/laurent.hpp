#pragma once

// Sparse Laurent polynomials in the spectral parameter with coefficients in a
// (possibly non-commutative) ring. Coefficients are kept ordered by exponent so
// that iteration, printing and equality are deterministic.

#include <albaxter/core.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <utility>

namespace albaxter {

inline double coeff_magnitude(const cplx& c) { return std::abs(c); }

template <class C>
class Laurent {
public:
    using coeff_type = C;
    using storage = std::map<int, C>;

    Laurent() = default;
    Laurent(std::initializer_list<std::pair<const int, C>> terms) : terms_(terms) { prune(); }
    explicit Laurent(storage terms) : terms_(std::move(terms)) { prune(); }

    static Laurent monomial(int exponent, C coeff) {
        storage s;
        s.emplace(exponent, std::move(coeff));
        return Laurent(std::move(s));
    }

    const storage& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool has_negative_exponents() const { return !terms_.empty() && terms_.begin()->first < 0; }
    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    /// Coefficient at `exponent`, or `zero` if absent.
    C coeff(int exponent, C zero = C{}) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? zero : it->second;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end())
                terms_.emplace(e, c);
            else
                it->second = it->second + c;
        }
        prune();
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += o * cplx(-1.0); }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    /// Ordered product: coefficient products keep this-on-the-left.
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        storage out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                int e = 0;
                if (__builtin_add_overflow(ea, eb, &e))
                    throw DomainError("Laurent exponent overflow");
                auto it = out.find(e);
                if (it == out.end())
                    out.emplace(e, ca * cb);
                else
                    it->second = it->second + ca * cb;
            }
        }
        return Laurent(std::move(out));
    }

    friend Laurent operator*(const Laurent& a, const cplx& s) {
        storage out;
        for (const auto& [e, c] : a.terms_) out.emplace(e, c * s);
        return Laurent(std::move(out));
    }
    friend Laurent operator*(const cplx& s, const Laurent& a) { return a * s; }

    /// Sum of c_e x^e. Throws DomainError at x == 0 when negative exponents are present.
    C eval(cplx x, C zero = C{}) const {
        if (x == cplx(0.0) && has_negative_exponents())
            throw DomainError("Laurent::eval: zero argument with negative exponents");
        C acc = zero;
        for (const auto& [e, c] : terms_) acc = acc + c * std::pow(x, e);
        return acc;
    }

private:
    void prune() {
        double mx = 0.0;
        for (const auto& [e, c] : terms_) mx = std::max(mx, coeff_magnitude(c));
        const double cut = std::max(1e-300, 1e-15 * mx);
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (coeff_magnitude(it->second) < cut)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    storage terms_;
};

using LaurentPoly = Laurent<cplx>;

/// The spectral parameter itself, lambda^1.
inline LaurentPoly lambda_pow(int e, cplx c = 1.0) { return LaurentPoly::monomial(e, c); }

} // namespace albaxter

#include <albaxter/classical.hpp>

#include <algorithm>
#include <cmath>

namespace albaxter {

ChainState::ChainState(std::vector<cplx> q, std::vector<cplx> r) : q_(std::move(q)), r_(std::move(r)) {
    if (q_.empty()) throw DomainError("ChainState: need at least one site");
    if (q_.size() != r_.size()) throw DomainError("ChainState: q and r differ in length");
    for (std::size_t k = 0; k < q_.size(); ++k) {
        if (!std::isfinite(q_[k].real()) || !std::isfinite(q_[k].imag()) || !std::isfinite(r_[k].real()) ||
            !std::isfinite(r_[k].imag()))
            throw DomainError("ChainState: non-finite value at site " + std::to_string(k + 1));
        if (std::abs(1.0 - q_[k] * r_[k]) < kDegeneracyGuard)
            throw DomainError("ChainState: degenerate site " + std::to_string(k + 1) + " (1 - q r = 0)");
    }
}

ChainState ChainState::rotated(long shift) const {
    std::vector<cplx> q(size()), r(size());
    for (std::size_t k = 0; k < size(); ++k) {
        q[wrap(static_cast<long>(k) + shift, size())] = q_[k];
        r[wrap(static_cast<long>(k) + shift, size())] = r_[k];
    }
    return ChainState(std::move(q), std::move(r));
}

namespace {

// Dense Laurent coefficients for exponents -N..N, index e + N.
template <class T>
using DenseLaurent = std::vector<T>;

template <class T>
Mat2<DenseLaurent<T>> monodromy_coeffs(std::span<const T> q, std::span<const T> r) {
    const std::size_t n = q.size();
    const std::size_t width = 2 * n + 1;
    const auto zero = [&] { return DenseLaurent<T>(width, T(0.0)); };
    Mat2<DenseLaurent<T>> m{zero(), zero(), zero(), zero()};
    m.a11[n] = T(1.0);
    m.a22[n] = T(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        // L_k * m with L_k = (lambda, q; r, 1/lambda)
        Mat2<DenseLaurent<T>> next{zero(), zero(), zero(), zero()};
        for (int row = 0; row < 2; ++row) {
            for (int col = 0; col < 2; ++col) {
                auto& out = next(row, col);
                const auto& top = m(0, col);
                const auto& bottom = m(1, col);
                for (std::size_t e = 0; e < width; ++e) {
                    if (row == 0) {
                        if (e >= 1) out[e] += top[e - 1];  // lambda shifts up
                        out[e] += q[k] * bottom[e];
                    } else {
                        out[e] += r[k] * top[e];
                        if (e + 1 < width) out[e] += bottom[e + 1];  // 1/lambda shifts down
                    }
                }
            }
        }
        m = std::move(next);
    }
    return m;
}

template <class T>
std::vector<T> trace_coeffs(std::span<const T> q, std::span<const T> r) {
    auto m = monodromy_coeffs(q, r);
    const std::size_t n = q.size();
    std::vector<T> h(n + 1, T(0.0));
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t idx = n + n - 2 * i;  // exponent N - 2i
        h[i] = m.a11[idx] + m.a22[idx];
    }
    return h;
}

} // namespace

Mat2<LaurentPoly> local_lax(const ChainState& s, std::size_t k) {
    if (k >= s.size()) throw DomainError("local_lax: site index out of range");
    return {lambda_pow(1), LaurentPoly::monomial(0, s.q(static_cast<long>(k))),
            LaurentPoly::monomial(0, s.r(static_cast<long>(k))), lambda_pow(-1)};
}

Mat2<LaurentPoly> monodromy(const ChainState& s) {
    Mat2<LaurentPoly> m{lambda_pow(0), LaurentPoly{}, LaurentPoly{}, lambda_pow(0)};
    for (std::size_t k = 0; k < s.size(); ++k) m = local_lax(s, k) * m;
    return m;
}

CMat2 monodromy_at(const ChainState& s, cplx lambda) { return monodromy_at<cplx>(s.q(), s.r(), lambda); }

ConservedSet conserved_quantities(const ChainState& s) {
    ConservedSet out;
    out.H = trace_coeffs<cplx>(s.q(), s.r());
    out.det = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) out.det *= 1.0 - s.q(static_cast<long>(k)) * s.r(static_cast<long>(k));
    return out;
}

ChainDerivative eom_rhs(const ChainState& s) {
    const long n = static_cast<long>(s.size());
    ChainDerivative d{std::vector<cplx>(s.size()), std::vector<cplx>(s.size())};
    for (long k = 0; k < n; ++k) {
        const cplx qk = s.q(k), rk = s.r(k);
        const cplx qsum = s.q(k + 1) + s.q(k - 1);
        const cplx rsum = s.r(k + 1) + s.r(k - 1);
        d.dq[static_cast<std::size_t>(k)] = qsum - 2.0 * qk - qk * rk * qsum;
        d.dr[static_cast<std::size_t>(k)] = -rsum + 2.0 * rk + qk * rk * rsum;
    }
    return d;
}

ChainState rk4_step(const ChainState& s, double dt) {
    if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
    const std::size_t n = s.size();
    auto shifted = [&](const ChainDerivative& k, double h) {
        std::vector<cplx> q(n), r(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = s.q(static_cast<long>(i)) + h * k.dq[i];
            r[i] = s.r(static_cast<long>(i)) + h * k.dr[i];
        }
        return ChainState(std::move(q), std::move(r));
    };
    const auto k1 = eom_rhs(s);
    const auto k2 = eom_rhs(shifted(k1, dt / 2));
    const auto k3 = eom_rhs(shifted(k2, dt / 2));
    const auto k4 = eom_rhs(shifted(k3, dt));
    std::vector<cplx> q(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = s.q(static_cast<long>(i)) + dt / 6.0 * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);
        r[i] = s.r(static_cast<long>(i)) + dt / 6.0 * (k1.dr[i] + 2.0 * k2.dr[i] + 2.0 * k3.dr[i] + k4.dr[i]);
    }
    return ChainState(std::move(q), std::move(r));
}

std::pair<std::vector<MultiDual>, std::vector<MultiDual>> dual_variables(const ChainState& s) {
    const std::size_t n = s.size();
    std::vector<MultiDual> q, r;
    q.reserve(n);
    r.reserve(n);
    for (std::size_t k = 0; k < n; ++k) q.push_back(MultiDual::variable(s.q(static_cast<long>(k)), k, 2 * n));
    for (std::size_t k = 0; k < n; ++k) r.push_back(MultiDual::variable(s.r(static_cast<long>(k)), n + k, 2 * n));
    return {std::move(q), std::move(r)};
}

cplx poisson_bracket(const MultiDual& f, const MultiDual& g, const ChainState& s) {
    const std::size_t n = s.size();
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx w = 1.0 - s.q(static_cast<long>(k)) * s.r(static_cast<long>(k));
        acc += (f.partial(k) * g.partial(n + k) - f.partial(n + k) * g.partial(k)) * w;
    }
    return acc;
}

cplx poisson_bracket(const Observable& f, const Observable& g, const ChainState& s) {
    const auto [q, r] = dual_variables(s);
    return poisson_bracket(f(q, r), g(q, r), s);
}

Observable observable_q(std::size_t k) {
    return [k](std::span<const MultiDual> q, std::span<const MultiDual>) { return q[k]; };
}

Observable observable_r(std::size_t k) {
    return [k](std::span<const MultiDual>, std::span<const MultiDual> r) { return r[k]; };
}

Observable observable_H(std::size_t i) {
    return [i](std::span<const MultiDual> q, std::span<const MultiDual> r) {
        if (i > q.size()) throw DomainError("observable_H: index exceeds N");
        return trace_coeffs<MultiDual>(q, r)[i];
    };
}

Observable observable_det() {
    return [](std::span<const MultiDual> q, std::span<const MultiDual> r) {
        MultiDual d(1.0);
        for (std::size_t k = 0; k < q.size(); ++k) d *= MultiDual(1.0) - q[k] * r[k];
        return d;
    };
}

Observable observable_trace(cplx lambda) {
    return [lambda](std::span<const MultiDual> q, std::span<const MultiDual> r) {
        return monodromy_at<MultiDual>(q, r, MultiDual(lambda)).trace();
    };
}

Mat4 classical_rmatrix(cplx lambda, cplx nu) {
    const cplx l2 = lambda * lambda, n2 = nu * nu;
    if (std::abs(n2 - l2) < 1e-14 * std::max(1.0, std::abs(l2)))
        throw DomainError("classical_rmatrix: lambda^2 == nu^2");
    const cplx diag = 0.5 * (n2 + l2) / (n2 - l2);
    const cplx off = lambda * nu / (n2 - l2);
    Mat4 m = Mat4::Zero();
    m(0, 0) = diag;
    m(1, 1) = -0.5;
    m(1, 2) = off;
    m(2, 1) = off;
    m(2, 2) = 0.5;
    m(3, 3) = diag;
    return m;
}

Mat4 swap_operator() {
    Mat4 p = Mat4::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) p(2 * a + b, 2 * b + a) = 1.0;
    return p;
}

Mat4 kron(const CMat2& a, const CMat2& b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

double rmatrix_relation_residual(const ChainState& s, cplx lambda, cplx nu) {
    if (lambda == cplx(0.0) || nu == cplx(0.0)) throw DomainError("rmatrix_relation_residual: zero spectral parameter");
    const Mat4 rm = classical_rmatrix(lambda, nu);
    const auto [q, r] = dual_variables(s);
    const auto ll = monodromy_at<MultiDual>(q, r, MultiDual(lambda));
    const auto ln = monodromy_at<MultiDual>(q, r, MultiDual(nu));

    Mat4 bracket;
    CMat2 vl, vn;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            vl(i, j) = ll(i, j).value();
            vn(i, j) = ln(i, j).value();
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) bracket(2 * i + k, 2 * j + l) = poisson_bracket(ll(i, j), ln(k, l), s);
        }
    const Mat4 tensor = kron(vl, vn);
    const Mat4 diff = bracket - (rm * tensor - tensor * rm);
    return diff.cwiseAbs().maxCoeff();
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw DomainError("complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::json to_json(const ChainState& s) {
    nlohmann::json q = nlohmann::json::array(), r = nlohmann::json::array();
    for (const auto& z : s.q()) q.push_back(complex_to_json(z));
    for (const auto& z : s.r()) r.push_back(complex_to_json(z));
    return {{"N", s.size()}, {"q", q}, {"r", r}};
}

ChainState chain_state_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("N").get<std::size_t>();
        std::vector<cplx> q, r;
        for (const auto& z : j.at("q")) q.push_back(complex_from_json(z));
        for (const auto& z : j.at("r")) r.push_back(complex_from_json(z));
        if (q.size() != n || r.size() != n) throw DomainError("state JSON: N does not match array lengths");
        return ChainState(std::move(q), std::move(r));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("state JSON: ") + e.what());
    }
}

} // namespace albaxter

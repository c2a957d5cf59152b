#include <albaxter/qcalc.hpp>

#include <cmath>
#include <string>

namespace albaxter {

QParam::QParam(cplx alpha, bool allow_complex) : alpha_(alpha) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw DomainError("QParam: alpha not finite");
    if (!allow_complex) {
        if (alpha.imag() != 0.0 || !(alpha.real() > 0.0 && alpha.real() < 1.0))
            throw DomainError("QParam: alpha must be real in (0, 1) (complex alpha needs the explicit flag)");
    } else if (!(std::abs(alpha) > 0.0 && std::abs(alpha) < 1.0)) {
        throw DomainError("QParam: complex alpha needs 0 < |alpha| < 1");
    }
    eta_ = 1.0 / alpha_ - 1.0;
    sqrt_alpha_ = std::sqrt(alpha_);
}

QParam QParam::from_eta(cplx eta, bool allow_complex) { return QParam(1.0 / (1.0 + eta), allow_complex); }

cplx qpochhammer_inf(cplx x, cplx alpha) {
    if (!(std::abs(alpha) < 1.0)) throw DomainError("qpochhammer_inf: |alpha| must be < 1");
    // Enough for alpha = 1 - 1e-5 with |x| ~ 1; beyond that the product is not
    // a desk-scale object anyway.
    constexpr long kMaxFactors = 50'000'000;
    cplx prod = 1.0;
    cplx term = x;
    for (long p = 0; std::abs(term) >= 1e-17; ++p) {
        if (p >= kMaxFactors) throw ConvergenceError("qpochhammer_inf: too many factors");
        prod *= 1.0 - term;
        term *= alpha;
    }
    return prod;
}

cplx jackson_derivative(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point) {
    const cplx rk = point[k];
    if (rk == cplx(0.0)) throw DomainError("jackson_derivative: r_k = 0");
    const auto shifted = scale_point(point, k, a.alpha());
    return (f(shifted) - f(point)) / (a.alpha() * rk - rk);
}

cplx q_action(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point) {
    const cplx rk = point[k];
    if (rk == cplx(0.0)) throw DomainError("q_action: r_k = 0");
    const auto shifted = scale_point(point, k, a.alpha());
    return (f(point) - f(shifted)) / rk;
}

cplx jackson_integral(const PointFn& f, std::size_t k, const QParam& a, cplx b, std::span<const cplx> point,
                      const JacksonOptions& opts) {
    if (k >= point.size()) throw DomainError("jackson_integral: site outside the point");
    if (b == cplx(0.0)) return 0.0;
    std::vector<cplx> x(point.begin(), point.end());
    cplx sum = 0.0;
    cplx node = b;  // alpha^n b
    int small = 0;
    for (int n = 0; n < opts.max_terms; ++n) {
        x[k] = node;
        const cplx term = node * f(x);
        sum += term;
        if (std::abs(term) <= opts.rel_tol * std::abs(sum)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
        node *= a.alpha();
    }
    throw ConvergenceError("jackson_integral: series tail did not decay within " + std::to_string(opts.max_terms) +
                           " terms");
}

cplx jackson_integral(const PointFn& f, std::size_t k, const QParam& a, cplx lo, cplx hi,
                      std::span<const cplx> point, const JacksonOptions& opts) {
    return jackson_integral(f, k, a, hi, point, opts) - jackson_integral(f, k, a, lo, point, opts);
}

cplx q_inverse(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point,
               const JacksonOptions& opts) {
    return jackson_integral(f, k, a, point[k], point, opts);
}

// --- Kernels -------------------------------------------------------------------

namespace {

cplx checked_qpoch(cplx x, const QParam& a, const char* who) {
    const cplx p = qpochhammer_inf(x, a);
    if (std::abs(p) < 1e-13) throw DomainError(std::string(who) + ": pole (vanishing q-Pochhammer factor)");
    return p;
}

void require_nonzero(cplx z, const char* who) {
    if (z == cplx(0.0)) throw DomainError(std::string(who) + ": zero parameter");
}

double rel_gap(cplx lhs, cplx rhs) {
    const double s = std::max(std::abs(lhs), std::abs(rhs));
    return s > 0.0 ? std::abs(lhs - rhs) / s : 0.0;
}

} // namespace

cplx rho_site(const KernelSite& ks, const QParam& a, cplx r) {
    require_nonzero(ks.mu, "rho_site");
    require_nonzero(ks.rtilde_k, "rho_site");
    require_nonzero(ks.rtilde_km1, "rho_site");
    const cplx p1 = checked_qpoch(r / ks.rtilde_km1, a, "rho_site");
    const cplx p2 = checked_qpoch(-r / (ks.mu * ks.mu * ks.rtilde_k), a, "rho_site");
    return ks.normalization / (p1 * p2);
}

double rho_functional_residual(const KernelSite& ks, const QParam& a, cplx r) {
    const cplx mu2 = ks.mu * ks.mu;
    const cplx lhs = rho_site(ks, a, r);
    const cplx rhs = mu2 * ks.rtilde_k * ks.rtilde_km1 / ((mu2 * ks.rtilde_k + r) * (ks.rtilde_km1 - r)) *
                     rho_site(ks, a, a.alpha() * r);
    return rel_gap(lhs, rhs);
}

cplx ghat(cplx z, const QParam& a) {
    if (z.imag() == 0.0 && z.real() <= 0.0) throw BranchError("ghat: argument on the closed negative real axis");
    const cplx lz = std::log(z);
    return std::exp(-lz * lz / (2.0 * std::log(a.alpha())) + 0.5 * lz);
}

cplx g_kernel(cplx x, cplx y, cplx mu, const QParam& a) {
    require_nonzero(x, "g_kernel");
    require_nonzero(y, "g_kernel");
    require_nonzero(mu, "g_kernel");
    const cplx z = x / y;
    if (z.imag() == 0.0 && z.real() <= 0.0) throw BranchError("g_kernel: x/y on the negative real axis");
    const cplx expo = 2.0 * std::log(mu) / std::log(a.alpha());
    return std::exp(expo * std::log(z)) * ghat(z, a) / y;
}

cplx kernel_f(cplx x, cplx y, cplx r, cplx mu, const QParam& a, cplx normalization) {
    const cplx g = g_kernel(x, y, mu, a);
    const cplx p1 = checked_qpoch(-r / (mu * mu * y), a, "kernel_f");
    const cplx p2 = checked_qpoch(a.alpha() * r / x, a, "kernel_f");
    return normalization * g / (p1 * p2);
}

std::array<double, 4> feq_residuals(cplx c, cplx c1, cplx r, cplx mu, const QParam& a) {
    const cplx al = a.alpha(), mu2 = mu * mu;
    auto F = [&](cplx x, cplx y, cplx rr) { return kernel_f(x, y, rr, mu, a); };
    const cplx f_base = F(al * c, c1, r);        // F(alpha c, c', r)
    const cplx f_yshift = F(al * c, al * c1, r); // F(alpha c, alpha c', r)
    const cplx f_yr = F(al * c, al * c1, al * r);
    const cplx f_plain = F(c, c1, r);
    const cplx f_r = F(al * c, c1, al * r);
    return {
        rel_gap(r * f_base + mu2 * al * c1 * f_yr, (r + mu2 * al * c1) * f_yshift),
        rel_gap((r - c) * f_base, r * f_plain - c * f_r),
        rel_gap(c * f_base, (r + mu2 * al * c1) * f_yshift),
        rel_gap((c - r) * f_base, mu2 * c1 * f_plain),
    };
}

cplx qhat_kernel(cplx mu, const QParam& a, std::span<const cplx> rtilde, std::span<const cplx> r, cplx normalization) {
    const std::size_t n = r.size();
    if (rtilde.size() != n || n == 0) throw DomainError("qhat_kernel: size mismatch");
    require_nonzero(mu, "qhat_kernel");
    cplx denom = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx rt = rtilde[k], rtm = rtilde[wrap(long(k) - 1, n)];
        require_nonzero(rt, "qhat_kernel");
        require_nonzero(rtm, "qhat_kernel");
        denom *= rt * checked_qpoch(r[k] / rtm, a, "qhat_kernel") * checked_qpoch(-r[k] / (mu * mu * rt), a, "qhat_kernel");
    }
    return normalization / denom;
}

} // namespace albaxter

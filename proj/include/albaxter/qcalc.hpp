#pragma once

// q-calculus: the deformation parameter, q-Pochhammer symbols, Jackson
// derivative and integral, and the kernel functions of the Baxter operator.

#include <albaxter/core.hpp>
#include <albaxter/funcexpr.hpp>

#include <algorithm>
#include <array>
#include <span>

namespace albaxter {

class QParam {
public:
    /// alpha real in (0, 1) unless allow_complex, in which case 0 < |alpha| < 1.
    explicit QParam(cplx alpha, bool allow_complex = false);
    static QParam from_eta(cplx eta, bool allow_complex = false);

    cplx alpha() const { return alpha_; }
    cplx eta() const { return eta_; }              ///< 1/alpha - 1
    cplx sqrt_alpha() const { return sqrt_alpha_; } ///< principal branch
    bool is_real() const { return alpha_.imag() == 0.0; }

private:
    cplx alpha_, eta_, sqrt_alpha_;
};

/// (x; alpha)_inf, truncated once |x alpha^p| < 1e-17.
cplx qpochhammer_inf(cplx x, cplx alpha);
inline cplx qpochhammer_inf(cplx x, const QParam& a) { return qpochhammer_inf(x, a.alpha()); }

/// (f(.. alpha r_k ..) - f(r)) / (alpha r_k - r_k). Throws DomainError at r_k = 0.
cplx jackson_derivative(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point);

/// q_k f = (f(r) - f(.. alpha r_k ..)) / r_k = (1 - alpha) D_{alpha,k} f.
cplx q_action(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point);

struct JacksonOptions {
    int max_terms = 10000;
    double rel_tol = 1e-17;  ///< stop once two consecutive terms fall below rel_tol * |sum|
};

/// int_0^b d_alpha r_k f = sum_n alpha^n b f(.. alpha^n b ..), other coordinates from point.
cplx jackson_integral(const PointFn& f, std::size_t k, const QParam& a, cplx b, std::span<const cplx> point,
                      const JacksonOptions& opts = {});
/// int_lo^hi = int_0^hi - int_0^lo.
cplx jackson_integral(const PointFn& f, std::size_t k, const QParam& a, cplx lo, cplx hi,
                      std::span<const cplx> point, const JacksonOptions& opts = {});
/// (q_k)^{-1} f at point: the indefinite form with upper limit r_k.
cplx q_inverse(const PointFn& f, std::size_t k, const QParam& a, std::span<const cplx> point,
               const JacksonOptions& opts = {});

// --- Kernel functions ----------------------------------------------------

struct KernelSite {
    cplx mu;
    cplx rtilde_k;
    cplx rtilde_km1;
    cplx normalization = 1.0;
};

/// G / ((r/r~_{k-1}; alpha)_inf (-r/(mu^2 r~_k); alpha)_inf). DomainError at a pole.
cplx rho_site(const KernelSite& ks, const QParam& a, cplx r);

/// Relative residual of rho(r) = mu^2 r~_k r~_{k-1} / ((mu^2 r~_k + r)(r~_{k-1} - r)) rho(alpha r).
double rho_functional_residual(const KernelSite& ks, const QParam& a, cplx r);

/// G-hat(z) = exp(-(ln z)^2 / (2 ln alpha) + (ln z)/2); solves G(z) = z G(alpha z).
/// BranchError on the closed negative real axis.
cplx ghat(cplx z, const QParam& a);

/// G(x, y) = (1/y) (x/y)^{2 ln mu / ln alpha} G-hat(x/y); homogeneous of degree -1.
cplx g_kernel(cplx x, cplx y, cplx mu, const QParam& a);

/// F evaluated at (x, y, r) where x plays the role of alpha c_k:
/// A G(x, y) / ((-r/(mu^2 y); alpha)_inf (alpha r / x; alpha)_inf).
cplx kernel_f(cplx x, cplx y, cplx r, cplx mu, const QParam& a, cplx normalization = 1.0);

/// Relative residuals of the four functional equations satisfied by F at (c_k, c_{k+1}, r_k).
std::array<double, 4> feq_residuals(cplx ck, cplx ck1, cplx r, cplx mu, const QParam& a);

/// A prod_k [ r~_k (r_k/r~_{k-1}; alpha)_inf (-r_k/(mu^2 r~_k); alpha)_inf ]^{-1}
cplx qhat_kernel(cplx mu, const QParam& a, std::span<const cplx> rtilde, std::span<const cplx> r,
                 cplx normalization = 1.0);

/// max(|a - b|) / max(1, |b|): the mixed absolute/relative gap used by every residual here.
inline double scaled_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace albaxter

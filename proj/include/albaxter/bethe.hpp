#pragma once

// Bethe equations of the quantum chain, the transfer-matrix eigenvalue on
// Bethe states and the q-difference (Baxter) form of that eigenvalue.

#include <albaxter/algebra/laurent.hpp>
#include <albaxter/core.hpp>
#include <albaxter/qcalc.hpp>

#include <span>
#include <vector>

namespace albaxter {

struct HomotopyStep {
    double s = 0.0;        ///< path parameter: eta(s) = s * eta
    double step = 0.0;     ///< accepted step size
    int newton_iters = 0;
    double residual = 0.0;
};

struct BetheConfig {
    std::size_t N = 0;
    std::size_t m = 0;
    QParam alpha{0.5};
    std::vector<int> seed_indices;  ///< lambda_k(eta = 0) = exp(i pi j_k / N)
    std::vector<cplx> roots;
    double residual = 0.0;          ///< max of bethe_residuals
    std::vector<HomotopyStep> homotopy_path;
};

struct BetheOptions {
    double tol = 1e-12;
    int max_newton = 30;
    double initial_step = 0.1;
    double min_step = 1e-6;
};

/// Distinct seed indices j in [0, 2N) whose squares exp(2 i pi j / N) also
/// differ. Throws DomainError if m > N.
std::vector<int> default_seed_selection(std::size_t N, std::size_t m);

/// Log-form Newton along eta(s) = s eta from the free point s = 0.
/// DomainError for invalid seeds, ConvergenceError on path failure.
BetheConfig solve_bethe(std::size_t N, std::size_t m, const QParam& a, std::vector<int> seed_indices,
                        const BetheOptions& opts = {});
BetheConfig solve_bethe(std::size_t N, std::size_t m, const QParam& a, const BetheOptions& opts = {});

/// Per root |Log(prod_{j != k} ratio_jk / lambda_k^{2N})| (principal log).
std::vector<double> bethe_residuals(std::span<const cplx> roots, std::size_t N, const QParam& a);
std::vector<double> bethe_residuals(const BetheConfig& cfg);

/// Eigenvalue of Tr L(nu) on the Bethe state built from `roots`.
/// Throws DomainError at nu^2 = lambda_j^2 or nu = 0.
cplx transfer_eigenvalue(std::span<const cplx> roots, std::size_t N, const QParam& a, cplx nu);
cplx transfer_eigenvalue(const BetheConfig& cfg, cplx nu);

/// prod_j (nu^2 - lambda_j^2) as a Laurent polynomial in nu.
LaurentPoly psi_poly(std::span<const cplx> roots);

/// The transfer eigenvalue as a Laurent polynomial in nu: nu^{-N} times the
/// quotient of delta x^N psi(x/alpha) + psi(alpha x) by psi(x) in x = nu^2.
/// `remainder_norm` receives the max |coefficient| of the division remainder,
/// which vanishes exactly on-shell.
LaurentPoly transfer_polynomial(std::span<const cplx> roots, std::size_t N, const QParam& a,
                                double* remainder_norm = nullptr);

/// max over nu of the residuals of
///   t psi(nu) = delta nu^N psi(nu/sqrt a) + nu^{-N} psi(nu sqrt a)
/// and of its psi-hat = psi nu^{-2m} form, using t = transfer_polynomial.
/// Each residual is scaled by max(1, |right-hand side terms|).
double baxter_qdiff_residual(std::span<const cplx> roots, std::size_t N, const QParam& a,
                             std::span<const cplx> nu_samples);

struct SemiclassicalSplit {
    cplx branch_plus;          ///< nu^N-branch of the eigenvalue
    cplx branch_minus;         ///< nu^{-N}-branch
    double sum_residual = 0.0; ///< |branch_plus + branch_minus - t(mu)|
    double product_mismatch = 0.0; ///< |branch_plus * branch_minus - delta|
};

/// Two-branch decomposition of t(mu) behind the classical trace formula.
SemiclassicalSplit semiclassical_split(std::span<const cplx> roots, std::size_t N, const QParam& a, cplx mu);

} // namespace albaxter

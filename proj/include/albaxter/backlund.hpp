#pragma once

// Elementary Baecklund transformation of the classical chain with parameter mu.
//
// The map is defined through r~ (the new r variables) as unknowns:
//   1 - q_k r_k   = (r~_{k-1} - r_k)(mu^2 r~_k + r_k) / (mu^2 r~_k r~_{k-1})
//   1 - q~_k r~_k = (r~_k - r_{k+1})(mu^2 r~_k + r_k) / (mu^2 r~_{k+1} r~_{k-1})
// The first line is solved for r~ by damped Newton with continuation in |mu|,
// then q~ is read off the second line.

#include <albaxter/algebra/mat2.hpp>
#include <albaxter/classical.hpp>
#include <albaxter/core.hpp>

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace albaxter {

struct BTOptions {
    double tol = 1e-12;           ///< max relative residual of the first map line
    int max_iter = 100;           ///< Newton iterations per continuation stage
    double mu_seed = 1e-3;        ///< |mu| at which continuation starts
    double max_stage_ratio = 1.5; ///< |mu| growth per continuation stage
    /// Warm start for r~; skips continuation when set.
    std::optional<std::vector<cplx>> initial_guess;
};

struct BTResult {
    cplx mu;
    ChainState source;
    ChainState target;
    std::vector<cplx> gamma;  ///< gamma_k = mu (1 - q_k r~_{k-1})
    int newton_iters = 0;     ///< summed over continuation stages
    double residual = 0.0;    ///< max over both map lines and sites
};

/// Residual of both map lines (relative to the size of the terms).
double bt_map_residual(const ChainState& source, const ChainState& target, cplx mu);

/// Throws DomainError (bad input), ConvergenceError (Newton failure).
BTResult bt_apply(const ChainState& state, cplx mu, const BTOptions& opts = {});

/// D_k(lambda) with b_k = q_k and c_k = r~_{k-1}.
CMat2 dressing_matrix(const BTResult& bt, long k, cplx lambda);

/// max_k |L~_k(lambda) D_k(lambda) - D_{k+1}(lambda) L_k(lambda)|
double intertwining_residual(const BTResult& bt, cplx lambda);

struct SpectralityReport {
    std::vector<cplx> gamma_k;   ///< least-squares proportionality factors
    cplx gamma;                  ///< product of gamma_k
    double collinearity = 0.0;   ///< max_k |L_k(mu) w_k - gamma_k w_{k+1}|
    double trace_residual = 0.0; ///< |Tr L(mu) - det L(mu)/gamma - gamma|
};

SpectralityReport spectrality(const BTResult& bt);

/// Kernel vector w_k = (1, -mu r~_{k-1}) of D_k(mu).
std::array<cplx, 2> kernel_vector(const BTResult& bt, long k);

struct ClassicalBaxterReport {
    cplx phi;               ///< (2/mu) sum_k log((mu^2 r~_k + r_k)/(mu^2 r~_k))
    double residual = 0.0;  ///< |Tr L(mu) - mu^N e^{mu phi/2} - det mu^{-N} e^{-mu phi/2}|
    double consistency = 0.0; ///< |mu^N e^{mu phi/2} - det/gamma|
};

/// Rejects (DomainError) inputs where gamma, det or a log argument vanishes.
ClassicalBaxterReport classical_baxter_check(const BTResult& bt);

// --- Generating function (real-positive data only) --------------------

struct GeneratingFunctionOptions {
    double fd_step = 1e-6;
    double quad_tol = 1e-11;
};

/// F(r, r~; mu). Throws BranchError unless every logarithm stays on the
/// positive real axis along the straight integration paths.
double generating_function(std::span<const double> r, std::span<const double> rt, double mu,
                           const GeneratingFunctionOptions& opts = {});

/// Same integrals with the higher-order Gauss-Kronrod rule; used to bound
/// quadrature error.
double generating_function_refined(std::span<const double> r, std::span<const double> rt, double mu,
                                   const GeneratingFunctionOptions& opts = {});

struct GeneratingFunctionReport {
    double F = 0.0;
    double grad_residual_r = 0.0;      ///< max_k |dF/dr_k + ln(1 - q_k r_k)/r_k|
    double grad_residual_rtilde = 0.0; ///< max_k |dF/dr~_k - ln(1 - q~_k r~_k)/r~_k|
    double phi_residual = 0.0;         ///< |dF/dmu - (2/mu) sum ln((mu^2 r~+r)/(mu^2 r~))|
    double refinement_delta = 0.0;     ///< |F(GK15) - F(GK31)|
};

GeneratingFunctionReport generating_function_check(const BTResult& bt, const GeneratingFunctionOptions& opts = {});

// --- Canonicity ---------------------------------------------------------

struct CanonicityReport {
    double deviation = 0.0;  ///< max deviation of transformed brackets from canonical form
    double step = 0.0;
};

/// Jacobian of (q, r) -> (q~, r~) by central differences, brackets pushed forward.
CanonicityReport canonicity_check(const ChainState& state, cplx mu, double step = 1e-6, const BTOptions& opts = {});

} // namespace albaxter

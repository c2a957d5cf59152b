#pragma once

// Classical Ablowitz-Ladik chain on a periodic lattice: Lax and monodromy
// matrices, conserved quantities, equations of motion, Poisson brackets and
// the classical r-matrix relation.
//
// Sites are 0-based internally; the monodromy is the ordered product
// L_{N-1} ... L_1 L_0, i.e. the highest site sits leftmost.

#include <albaxter/algebra/laurent.hpp>
#include <albaxter/algebra/mat2.hpp>
#include <albaxter/algebra/multidual.hpp>
#include <albaxter/core.hpp>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace albaxter {

/// Minimum |1 - q_k r_k| accepted for a chain state.
inline constexpr double kDegeneracyGuard = 1e-10;

class ChainState {
public:
    /// Throws DomainError if sizes differ, N == 0, or some |1 - q_k r_k| < 1e-10.
    ChainState(std::vector<cplx> q, std::vector<cplx> r);

    std::size_t size() const { return q_.size(); }
    /// Periodic accessors: any integer site is reduced mod N.
    cplx q(long k) const { return q_[wrap(k, q_.size())]; }
    cplx r(long k) const { return r_[wrap(k, r_.size())]; }
    std::span<const cplx> q() const { return q_; }
    std::span<const cplx> r() const { return r_; }

    /// Relabel sites k -> k + shift.
    ChainState rotated(long shift) const;

private:
    std::vector<cplx> q_;
    std::vector<cplx> r_;
};

struct ConservedSet {
    std::vector<cplx> H;  // H_0 .. H_N
    cplx det;
};

// --- Lax structure -----------------------------------------------------

Mat2<LaurentPoly> local_lax(const ChainState& s, std::size_t k);
Mat2<LaurentPoly> monodromy(const ChainState& s);

/// Site Lax matrix (lambda, q; r, 1/lambda) over any scalar type.
template <class T>
Mat2<T> lax_at(const T& q, const T& r, const T& lambda) {
    return {lambda, q, r, T(1.0) / lambda};
}

/// Monodromy evaluated at a numeric spectral parameter over any scalar type.
template <class T>
Mat2<T> monodromy_at(std::span<const T> q, std::span<const T> r, const T& lambda) {
    Mat2<T> m{T(1.0), T(0.0), T(0.0), T(1.0)};
    for (std::size_t k = 0; k < q.size(); ++k) m = lax_at(q[k], r[k], lambda) * m;
    return m;
}

CMat2 monodromy_at(const ChainState& s, cplx lambda);

ConservedSet conserved_quantities(const ChainState& s);

// --- Dynamics ----------------------------------------------------------

struct ChainDerivative {
    std::vector<cplx> dq;
    std::vector<cplx> dr;
};

ChainDerivative eom_rhs(const ChainState& s);
/// Classical fourth-order Runge-Kutta step of eom_rhs.
ChainState rk4_step(const ChainState& s, double dt);

// --- Poisson structure -------------------------------------------------

/// Observable over the phase space; partials come from MultiDual inputs laid
/// out as (q_0..q_{N-1}, r_0..r_{N-1}).
using Observable = std::function<MultiDual(std::span<const MultiDual> q, std::span<const MultiDual> r)>;

/// Sum_k (df/dq_k dg/dr_k - df/dr_k dg/dq_k)(1 - q_k r_k)
cplx poisson_bracket(const Observable& f, const Observable& g, const ChainState& s);

/// The bracket of two already-differentiated values (partials in the same layout).
cplx poisson_bracket(const MultiDual& f, const MultiDual& g, const ChainState& s);

/// Seeds the 2N phase-space variables as MultiDual independents.
std::pair<std::vector<MultiDual>, std::vector<MultiDual>> dual_variables(const ChainState& s);

Observable observable_q(std::size_t k);
Observable observable_r(std::size_t k);
/// H_i via the MultiDual monodromy trace (Laurent coefficient extraction by
/// evaluating on a ring of 2N+2 points).
Observable observable_H(std::size_t i);
Observable observable_det();
Observable observable_trace(cplx lambda);

using Mat4 = Eigen::Matrix<cplx, 4, 4>;

/// Classical r-matrix r(lambda, nu). Throws DomainError when lambda^2 == nu^2.
Mat4 classical_rmatrix(cplx lambda, cplx nu);

/// Swap operator P on C^2 (x) C^2.
Mat4 swap_operator();

/// Kronecker product of two 2x2 matrices with the (i k),(j l) row/col layout.
Mat4 kron(const CMat2& a, const CMat2& b);

/// max |{L(lambda) (x) L(nu)} - [r, L(lambda) (x) L(nu)]|
double rmatrix_relation_residual(const ChainState& s, cplx lambda, cplx nu);

// --- Serialization ------------------------------------------------------

nlohmann::json to_json(const ChainState& s);
ChainState chain_state_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

} // namespace albaxter

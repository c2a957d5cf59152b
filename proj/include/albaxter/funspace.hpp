#pragma once

// Operators of the quantum chain acting on functions of r_1..r_N through the
// Jackson realization: r_k multiplies, q_k f = (f(r) - f(.. alpha r_k ..)) / r_k.
// Application is evaluation-driven: every q_k spawns a rescaled evaluation and
// base-function values are memoized per scaling multi-index.

#include <albaxter/algebra/mat2.hpp>
#include <albaxter/core.hpp>
#include <albaxter/funcexpr.hpp>
#include <albaxter/qcalc.hpp>

#include <memory>
#include <span>
#include <vector>

namespace albaxter {

class OpExpr {
public:
    struct Node;

    /// The zero operator.
    OpExpr();
    static OpExpr identity();
    /// c * lambda^power (lambda is bound when the operator is applied).
    static OpExpr scalar(cplx c, int lambda_power = 0);
    static OpExpr mul_r(std::size_t k);
    static OpExpr apply_q(std::size_t k);

    friend OpExpr operator+(const OpExpr& a, const OpExpr& b);
    friend OpExpr operator-(const OpExpr& a, const OpExpr& b);
    /// Composition: (a * b) f = a(b(f)).
    friend OpExpr operator*(const OpExpr& a, const OpExpr& b);

    bool is_zero() const;
    const Node& node() const { return *node_; }

private:
    explicit OpExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// (op f)(point) with lambda = lambda0. Throws DomainError when a q_k acts at r_k = 0.
cplx apply_opexpr(const OpExpr& op, const PointFn& f, std::span<const cplx> point, cplx lambda0, const QParam& a);

/// Number of base-function evaluations the last apply_opexpr call on this thread needed.
std::size_t last_apply_evaluations();

/// L_k = (lambda, q_k; r_k, 1/lambda) with operator entries.
Mat2<OpExpr> lax_opexpr(std::size_t k);
/// L_{N-1} ... L_0.
Mat2<OpExpr> monodromy_opexpr(std::size_t n);
/// prod_k (1 - r_k q_k)
OpExpr quantum_determinant_opexpr(std::size_t n);

/// rho(mu, r) = prod_k rho_k(mu, r_k) as an expression in r.
FuncExpr rho_product(cplx mu, const QParam& a, std::span<const cplx> rtilde);

enum class BaxterShift {
    SqrtAlpha,  ///< the identity: mu/sqrt(alpha), mu sqrt(alpha)
    Alpha,      ///< negative control: mu/alpha, mu alpha
};

/// max over points of |(Tr L(mu) rho_mu)(r) - mu^N rho_{mu/s}(r) - mu^{-N} rho_{mu s}(alpha r)|
/// scaled by max(1, |Tr L rho|). Limited to N <= 10.
double baxter_action_residual(cplx mu, const QParam& a, std::span<const cplx> rtilde,
                              const std::vector<std::vector<cplx>>& points, BaxterShift shift = BaxterShift::SqrtAlpha);

/// max over points of |(Delta rho)(r) - rho(alpha r)| / max(1, |rho(alpha r)|).
double delta_action_residual(cplx mu, const QParam& a, std::span<const cplx> rtilde,
                             const std::vector<std::vector<cplx>>& points);

struct TriangularReport {
    double upper_right = 0.0;  ///< |(L^_k rho_k)_{12}|, the defining condition of rho_k
    double upper_left = 0.0;   ///< against (mu r~_k / r~_{k-1}) rho_k(mu/sqrt(alpha), r_k)
    double lower_right = 0.0;  ///< against (r~_{k-1}/(mu r~_k)) rho_k(mu sqrt(alpha), alpha r_k)
    double det_m = 0.0;        ///< |det M_k - 1|
};

/// L^_k = M_{k+1}^{-1} L_k(mu) M_k with M_k = ((0, 1), (-1, -mu r~_{k-1})), applied to rho_k at r_k.
TriangularReport triangular_check(cplx mu, const QParam& a, std::span<const cplx> rtilde, std::size_t k, cplx r_k);

} // namespace albaxter

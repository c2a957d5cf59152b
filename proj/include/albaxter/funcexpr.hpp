#pragma once

// Immutable expression trees over r_0..r_{N-1}. They are the carriers on which
// the Jackson-calculus operators act; the only structural operation needed is
// rescaling a variable, r_k -> s r_k.

#include <albaxter/core.hpp>

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace albaxter {

/// Anything evaluable at a point of C^N.
using PointFn = std::function<cplx(std::span<const cplx>)>;

class FuncExpr {
public:
    struct Node;

    /// The zero constant.
    FuncExpr();
    static FuncExpr constant(cplx c);
    static FuncExpr variable(std::size_t k);
    /// 1 / (arg; alpha)_inf. Evaluation throws DomainError at a pole.
    static FuncExpr qpoch_inv(const FuncExpr& arg, cplx alpha);

    friend FuncExpr operator+(const FuncExpr& a, const FuncExpr& b);
    friend FuncExpr operator-(const FuncExpr& a, const FuncExpr& b);
    friend FuncExpr operator*(const FuncExpr& a, const FuncExpr& b);
    friend FuncExpr operator/(const FuncExpr& a, const FuncExpr& b);
    friend FuncExpr pow(const FuncExpr& a, int n);

    cplx eval(std::span<const cplx> point) const;
    cplx operator()(std::span<const cplx> point) const { return eval(point); }

    /// The same expression with r_k replaced by factor * r_k.
    FuncExpr scaled(std::size_t k, cplx factor) const;

    /// 1 + largest variable index referenced (0 for constants).
    std::size_t arity() const;

private:
    explicit FuncExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// point with point[k] multiplied by s.
std::vector<cplx> scale_point(std::span<const cplx> point, std::size_t k, cplx s);

} // namespace albaxter

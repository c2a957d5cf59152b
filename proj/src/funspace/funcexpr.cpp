#include <albaxter/funcexpr.hpp>
#include <albaxter/qcalc.hpp>

#include <algorithm>
#include <variant>

namespace albaxter {

namespace fx {

enum class Op { Add, Sub, Mul, Div };

struct Const { cplx c; };
struct Var { std::size_t k; cplx scale; };
struct Binary { Op op; FuncExpr a, b; };
struct Power { FuncExpr base; int n; };
struct QPochInv { FuncExpr arg; cplx alpha; };

} // namespace fx

using namespace fx;

struct FuncExpr::Node {
    std::variant<Const, Var, Binary, Power, QPochInv> v;
};

FuncExpr::FuncExpr() : node_(std::make_shared<const Node>(Node{Const{0.0}})) {}

FuncExpr FuncExpr::constant(cplx c) { return FuncExpr(std::make_shared<const Node>(Node{Const{c}})); }
FuncExpr FuncExpr::variable(std::size_t k) { return FuncExpr(std::make_shared<const Node>(Node{Var{k, 1.0}})); }
FuncExpr FuncExpr::qpoch_inv(const FuncExpr& arg, cplx alpha) {
    if (!(std::abs(alpha) < 1.0)) throw DomainError("qpoch_inv: |alpha| must be < 1");
    return FuncExpr(std::make_shared<const Node>(Node{QPochInv{arg, alpha}}));
}

FuncExpr operator+(const FuncExpr& a, const FuncExpr& b) {
    return FuncExpr(std::make_shared<const FuncExpr::Node>(FuncExpr::Node{Binary{Op::Add, a, b}}));
}
FuncExpr operator-(const FuncExpr& a, const FuncExpr& b) {
    return FuncExpr(std::make_shared<const FuncExpr::Node>(FuncExpr::Node{Binary{Op::Sub, a, b}}));
}
FuncExpr operator*(const FuncExpr& a, const FuncExpr& b) {
    return FuncExpr(std::make_shared<const FuncExpr::Node>(FuncExpr::Node{Binary{Op::Mul, a, b}}));
}
FuncExpr operator/(const FuncExpr& a, const FuncExpr& b) {
    return FuncExpr(std::make_shared<const FuncExpr::Node>(FuncExpr::Node{Binary{Op::Div, a, b}}));
}
FuncExpr pow(const FuncExpr& a, int n) {
    return FuncExpr(std::make_shared<const FuncExpr::Node>(FuncExpr::Node{Power{a, n}}));
}

cplx FuncExpr::eval(std::span<const cplx> point) const {
    return std::visit(
        [&](const auto& n) -> cplx {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Const>) {
                return n.c;
            } else if constexpr (std::is_same_v<T, Var>) {
                if (n.k >= point.size()) throw DomainError("FuncExpr: variable index outside the point");
                return n.scale * point[n.k];
            } else if constexpr (std::is_same_v<T, Binary>) {
                const cplx x = n.a.eval(point), y = n.b.eval(point);
                switch (n.op) {
                case Op::Add: return x + y;
                case Op::Sub: return x - y;
                case Op::Mul: return x * y;
                case Op::Div:
                    if (y == cplx(0.0)) throw DomainError("FuncExpr: division by zero");
                    return x / y;
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, Power>) {
                const cplx x = n.base.eval(point);
                if (x == cplx(0.0) && n.n < 0) throw DomainError("FuncExpr: zero to a negative power");
                cplx acc = 1.0, b = n.n < 0 ? 1.0 / x : x;
                for (int e = std::abs(n.n); e > 0; e >>= 1, b *= b)
                    if (e & 1) acc *= b;
                return acc;
            } else {
                const cplx p = qpochhammer_inf(n.arg.eval(point), n.alpha);
                if (std::abs(p) < 1e-300) throw DomainError("FuncExpr: pole of 1/(x; alpha)_inf");
                return 1.0 / p;
            }
        },
        node_->v);
}

FuncExpr FuncExpr::scaled(std::size_t k, cplx factor) const {
    return std::visit(
        [&](const auto& n) -> FuncExpr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Const>) {
                return *this;
            } else if constexpr (std::is_same_v<T, Var>) {
                if (n.k != k) return *this;
                return FuncExpr(std::make_shared<const Node>(Node{Var{n.k, n.scale * factor}}));
            } else if constexpr (std::is_same_v<T, Binary>) {
                return FuncExpr(
                    std::make_shared<const Node>(Node{Binary{n.op, n.a.scaled(k, factor), n.b.scaled(k, factor)}}));
            } else if constexpr (std::is_same_v<T, Power>) {
                return pow(n.base.scaled(k, factor), n.n);
            } else {
                return qpoch_inv(n.arg.scaled(k, factor), n.alpha);
            }
        },
        node_->v);
}

std::size_t FuncExpr::arity() const {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Const>) return 0;
            else if constexpr (std::is_same_v<T, Var>) return n.k + 1;
            else if constexpr (std::is_same_v<T, Binary>) return std::max(n.a.arity(), n.b.arity());
            else if constexpr (std::is_same_v<T, Power>) return n.base.arity();
            else return n.arg.arity();
        },
        node_->v);
}

std::vector<cplx> scale_point(std::span<const cplx> point, std::size_t k, cplx s) {
    std::vector<cplx> out(point.begin(), point.end());
    out.at(k) *= s;
    return out;
}

} // namespace albaxter

#include <albaxter/funspace.hpp>

#include <map>
#include <variant>

namespace albaxter {

namespace ox {

struct Zero {};
struct Identity {};
struct Scalar { cplx c; int power; };
struct MulR { std::size_t k; };
struct ApplyQ { std::size_t k; };
struct Sum { OpExpr a, b; };
struct Compose { OpExpr outer, inner; };

} // namespace ox

using namespace ox;

struct OpExpr::Node {
    std::variant<Zero, Identity, Scalar, MulR, ApplyQ, Sum, Compose> v;
};

OpExpr::OpExpr() : node_(std::make_shared<const Node>(Node{Zero{}})) {}
OpExpr OpExpr::identity() { return OpExpr(std::make_shared<const Node>(Node{Identity{}})); }
OpExpr OpExpr::scalar(cplx c, int lambda_power) {
    if (c == cplx(0.0)) return OpExpr();
    if (c == cplx(1.0) && lambda_power == 0) return identity();
    return OpExpr(std::make_shared<const Node>(Node{Scalar{c, lambda_power}}));
}
OpExpr OpExpr::mul_r(std::size_t k) { return OpExpr(std::make_shared<const Node>(Node{MulR{k}})); }
OpExpr OpExpr::apply_q(std::size_t k) { return OpExpr(std::make_shared<const Node>(Node{ApplyQ{k}})); }

bool OpExpr::is_zero() const { return std::holds_alternative<Zero>(node_->v); }

OpExpr operator+(const OpExpr& a, const OpExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return OpExpr(std::make_shared<const OpExpr::Node>(OpExpr::Node{Sum{a, b}}));
}

OpExpr operator-(const OpExpr& a, const OpExpr& b) { return a + OpExpr::scalar(-1.0) * b; }

OpExpr operator*(const OpExpr& a, const OpExpr& b) {
    if (a.is_zero() || b.is_zero()) return OpExpr();
    if (std::holds_alternative<Identity>(a.node_->v)) return b;
    if (std::holds_alternative<Identity>(b.node_->v)) return a;
    const auto* sa = std::get_if<Scalar>(&a.node_->v);
    const auto* sb = std::get_if<Scalar>(&b.node_->v);
    if (sa && sb) return OpExpr::scalar(sa->c * sb->c, sa->power + sb->power);
    return OpExpr(std::make_shared<const OpExpr::Node>(OpExpr::Node{Compose{a, b}}));
}

namespace {

thread_local std::size_t g_last_evaluations = 0;

// Evaluates operator chains at points r0 * alpha^idx (componentwise).
class Evaluator {
public:
    Evaluator(const PointFn& f, std::span<const cplx> r0, cplx lambda0, cplx alpha)
        : f_(f), r0_(r0.begin(), r0.end()), lambda0_(lambda0), alpha_(alpha) {}

    struct Cont {
        const OpExpr::Node* node;
        const Cont* next;
    };

    cplx eval(const OpExpr::Node& n, const Cont* inner, std::vector<int>& idx) {
        return std::visit(
            [&](const auto& v) -> cplx {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Zero>) {
                    return 0.0;
                } else if constexpr (std::is_same_v<T, Identity>) {
                    return next(inner, idx);
                } else if constexpr (std::is_same_v<T, Scalar>) {
                    if (v.power < 0 && lambda0_ == cplx(0.0)) throw DomainError("apply_opexpr: lambda = 0");
                    return v.c * std::pow(lambda0_, v.power) * next(inner, idx);
                } else if constexpr (std::is_same_v<T, MulR>) {
                    return coord(v.k, idx) * next(inner, idx);
                } else if constexpr (std::is_same_v<T, ApplyQ>) {
                    const cplx rk = coord(v.k, idx);
                    if (rk == cplx(0.0)) throw DomainError("apply_opexpr: q_k applied at r_k = 0");
                    const cplx here = next(inner, idx);
                    ++idx[v.k];
                    const cplx there = next(inner, idx);
                    --idx[v.k];
                    return (here - there) / rk;
                } else if constexpr (std::is_same_v<T, Sum>) {
                    return eval(v.a.node(), inner, idx) + eval(v.b.node(), inner, idx);
                } else {
                    const Cont c{&v.inner.node(), inner};
                    return eval(v.outer.node(), &c, idx);
                }
            },
            n.v);
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    cplx coord(std::size_t k, const std::vector<int>& idx) const {
        if (k >= r0_.size()) throw DomainError("apply_opexpr: operator site outside the point");
        return r0_[k] * std::pow(alpha_, idx[k]);
    }

    cplx next(const Cont* inner, std::vector<int>& idx) {
        if (inner) return eval(*inner->node, inner->next, idx);
        auto it = memo_.find(idx);
        if (it != memo_.end()) return it->second;
        std::vector<cplx> x(r0_.size());
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = coord(k, idx);
        const cplx val = f_(x);
        ++evaluations_;
        memo_.emplace(idx, val);
        return val;
    }

    const PointFn& f_;
    std::vector<cplx> r0_;
    cplx lambda0_;
    cplx alpha_;
    std::map<std::vector<int>, cplx> memo_;
    std::size_t evaluations_ = 0;
};

} // namespace

cplx apply_opexpr(const OpExpr& op, const PointFn& f, std::span<const cplx> point, cplx lambda0, const QParam& a) {
    Evaluator ev(f, point, lambda0, a.alpha());
    std::vector<int> idx(point.size(), 0);
    const cplx out = ev.eval(op.node(), nullptr, idx);
    g_last_evaluations = ev.evaluations();
    return out;
}

std::size_t last_apply_evaluations() { return g_last_evaluations; }

Mat2<OpExpr> lax_opexpr(std::size_t k) {
    return {OpExpr::scalar(1.0, 1), OpExpr::apply_q(k), OpExpr::mul_r(k), OpExpr::scalar(1.0, -1)};
}

Mat2<OpExpr> monodromy_opexpr(std::size_t n) {
    Mat2<OpExpr> m{OpExpr::identity(), OpExpr(), OpExpr(), OpExpr::identity()};
    for (std::size_t k = 0; k < n; ++k) m = lax_opexpr(k) * m;
    return m;
}

OpExpr quantum_determinant_opexpr(std::size_t n) {
    OpExpr d = OpExpr::identity();
    for (std::size_t k = 0; k < n; ++k) d = d * (OpExpr::identity() - OpExpr::mul_r(k) * OpExpr::apply_q(k));
    return d;
}

FuncExpr rho_product(cplx mu, const QParam& a, std::span<const cplx> rtilde) {
    const std::size_t n = rtilde.size();
    if (n == 0) throw DomainError("rho_product: empty r~");
    if (mu == cplx(0.0)) throw DomainError("rho_product: mu = 0");
    for (const cplx rt : rtilde)
        if (rt == cplx(0.0)) throw DomainError("rho_product: r~_k = 0");
    FuncExpr rho = FuncExpr::constant(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const FuncExpr r = FuncExpr::variable(k);
        const cplx rt = rtilde[k], rtm = rtilde[wrap(long(k) - 1, n)];
        rho = rho * FuncExpr::qpoch_inv(r * FuncExpr::constant(1.0 / rtm), a.alpha()) *
              FuncExpr::qpoch_inv(r * FuncExpr::constant(-1.0 / (mu * mu * rt)), a.alpha());
    }
    return rho;
}

namespace {

void check_points(std::size_t n, const std::vector<std::vector<cplx>>& points) {
    if (n > 10) throw DomainError("function-space checks are limited to N <= 10");
    for (const auto& p : points)
        if (p.size() != n) throw DomainError("sample point has the wrong dimension");
}

} // namespace

double baxter_action_residual(cplx mu, const QParam& a, std::span<const cplx> rtilde,
                              const std::vector<std::vector<cplx>>& points, BaxterShift shift) {
    const std::size_t n = rtilde.size();
    check_points(n, points);
    const cplx s = shift == BaxterShift::SqrtAlpha ? a.sqrt_alpha() : a.alpha();
    const FuncExpr rho = rho_product(mu, a, rtilde);
    const FuncExpr rho_up = rho_product(mu / s, a, rtilde);
    const FuncExpr rho_down = rho_product(mu * s, a, rtilde);
    const OpExpr tr = monodromy_opexpr(n).trace();
    const cplx mun = std::pow(mu, int(n));
    double worst = 0.0;
    for (const auto& p : points) {
        std::vector<cplx> scaled(p);
        for (auto& x : scaled) x *= a.alpha();
        const cplx lhs = apply_opexpr(tr, rho, p, mu, a);
        const cplx rhs = mun * rho_up(p) + rho_down(scaled) / mun;
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return worst;
}

double delta_action_residual(cplx mu, const QParam& a, std::span<const cplx> rtilde,
                             const std::vector<std::vector<cplx>>& points) {
    const std::size_t n = rtilde.size();
    check_points(n, points);
    const FuncExpr rho = rho_product(mu, a, rtilde);
    const OpExpr delta = quantum_determinant_opexpr(n);
    double worst = 0.0;
    for (const auto& p : points) {
        std::vector<cplx> scaled(p);
        for (auto& x : scaled) x *= a.alpha();
        worst = std::max(worst, scaled_gap(apply_opexpr(delta, rho, p, mu, a), rho(scaled)));
    }
    return worst;
}

TriangularReport triangular_check(cplx mu, const QParam& a, std::span<const cplx> rtilde, std::size_t k, cplx r_k) {
    const std::size_t n = rtilde.size();
    if (k >= n) throw DomainError("triangular_check: site out of range");
    const cplx rt = rtilde[k], rtm = rtilde[wrap(long(k) - 1, n)];
    // Single-site problem in the variable r_k (index 0 of a 1-point).
    const KernelSite ks{mu, rt, rtm};
    const PointFn rho = [&](std::span<const cplx> x) { return rho_site(ks, a, x[0]); };
    auto rho_at = [&](cplx m, cplx r) { return rho_site(KernelSite{m, rt, rtm}, a, r); };

    const CMat2 m_k{0.0, 1.0, -1.0, -mu * rtm};
    const CMat2 m_next_inv{-mu * rt, -1.0, 1.0, 0.0};
    auto lift = [](const CMat2& m) {
        return Mat2<OpExpr>{OpExpr::scalar(m.a11), OpExpr::scalar(m.a12), OpExpr::scalar(m.a21),
                            OpExpr::scalar(m.a22)};
    };
    const Mat2<OpExpr> lhat = lift(m_next_inv) * lax_opexpr(0) * lift(m_k);

    const std::vector<cplx> pt{r_k};
    const cplx rho0 = rho(pt);
    TriangularReport rep;
    rep.upper_right = std::abs(apply_opexpr(lhat.a12, rho, pt, mu, a)) / std::max(1.0, std::abs(rho0));
    rep.upper_left = scaled_gap(apply_opexpr(lhat.a11, rho, pt, mu, a), mu * rt / rtm * rho_at(mu / a.sqrt_alpha(), r_k));
    rep.lower_right = scaled_gap(apply_opexpr(lhat.a22, rho, pt, mu, a),
                                 rtm / (mu * rt) * rho_at(mu * a.sqrt_alpha(), a.alpha() * r_k));
    rep.det_m = std::abs(m_k.det() - 1.0);
    return rep;
}

} // namespace albaxter

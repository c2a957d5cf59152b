#include <albaxter/funspace.hpp>
#include <albaxter/sampling.hpp>

#include <doctest.h>

using namespace albaxter;

namespace {

std::vector<std::vector<cplx>> points(std::size_t n, Rng& rng, int count = 6) {
    auto p = std::vector<std::vector<cplx>>(std::size_t(count), std::vector<cplx>(n));
    for (auto& x : p)
        for (auto& v : x) v = rng.uniform(0.1, 0.9);
    return p;
}

} // namespace

TEST_CASE("trace acts on rho by the shifted-argument relation") {
    Rng rng(41);
    const QParam a(0.5);
    for (std::size_t n : {1, 2, 3, 4}) {
        std::vector<cplx> rt(n);
        for (auto& x : rt) x = rng.uniform(1.5, 3.0);
        const auto pts = points(n, rng);
        CHECK(baxter_action_residual(1.3, a, rt, pts) < 1e-10);
        // negative control: integer shifts in alpha instead of half shifts
        CHECK(baxter_action_residual(1.3, a, rt, pts, BaxterShift::Alpha) > 1e-2);
        CHECK(delta_action_residual(1.3, a, rt, pts) < 1e-12);
    }
}

TEST_CASE("triangularization") {
    const QParam a(0.4);
    const std::vector<cplx> rt{2.0, 1.7, 2.4};
    for (std::size_t k = 0; k < 3; ++k) {
        const TriangularReport t = triangular_check(0.8, a, rt, k, 0.45);
        CHECK(t.upper_right < 1e-12);
        CHECK(t.upper_left < 1e-11);
        CHECK(t.lower_right < 1e-11);
        CHECK(t.det_m < 1e-15);
    }
}

TEST_CASE("function realization of the q-boson relation") {
    // q r f = f - alpha f(alpha r) and r q f = f - f(alpha r), so
    // [q, r] f = (1 - alpha) f(alpha r) = eta (1 - q r) f.
    const QParam a(0.6);
    const FuncExpr f = FuncExpr::constant(0.3) + pow(FuncExpr::variable(0), 3) - FuncExpr::variable(0);
    const std::vector<cplx> pt{0.55};
    const OpExpr q = OpExpr::apply_q(0), r = OpExpr::mul_r(0);
    const cplx comm = apply_opexpr(q * r - r * q, f, pt, 1.0, a);
    const cplx rhs = a.eta() * apply_opexpr(OpExpr::identity() - q * r, f, pt, 1.0, a);
    CHECK(std::abs(comm - rhs) < 1e-13);
    CHECK(std::abs(comm - (1.0 - a.alpha()) * f(std::vector<cplx>{0.6 * 0.55})) < 1e-13);
}

TEST_CASE("operator algebra simplifications") {
    const OpExpr z;
    CHECK(z.is_zero());
    CHECK((z * OpExpr::apply_q(0)).is_zero());
    const FuncExpr f = FuncExpr::variable(0);
    const std::vector<cplx> pt{0.5};
    CHECK(apply_opexpr(OpExpr::scalar(2.0, 1) * OpExpr::identity(), f, pt, 3.0, QParam(0.5)) == cplx(3.0));
    CHECK_THROWS_AS(apply_opexpr(OpExpr::apply_q(0), f, std::vector<cplx>{0.0}, 1.0, QParam(0.5)), DomainError);
}

TEST_CASE("function expressions") {
    const FuncExpr x = FuncExpr::variable(0), y = FuncExpr::variable(1);
    const FuncExpr e = (x * y + FuncExpr::constant(1.0)) / (x - y);
    const std::vector<cplx> pt{0.3, 0.2};
    CHECK(std::abs(e(pt) - (0.06 + 1.0) / 0.1) < 1e-13);
    CHECK(e.arity() == 2);
    CHECK(std::abs(e.scaled(1, 0.5)(pt) - e(std::vector<cplx>{0.3, 0.1})) < 1e-13);
    const FuncExpr p = FuncExpr::qpoch_inv(x, 0.5);
    CHECK(std::abs(p(std::vector<cplx>{0.5}) - 1.0 / qpochhammer_inf(0.5, 0.5)) < 1e-14);
}

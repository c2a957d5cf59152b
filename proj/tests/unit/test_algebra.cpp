#include <albaxter/algebra/laurent.hpp>
#include <albaxter/algebra/mat2.hpp>
#include <albaxter/algebra/multidual.hpp>

#include <doctest.h>

using namespace albaxter;

TEST_CASE("laurent arithmetic and evaluation") {
    const LaurentPoly a{{-1, 2.0}, {1, 1.0}};  // 2/x + x
    const LaurentPoly b{{1, 3.0}, {2, cplx(0, 1)}};
    const cplx x(0.7, -0.4);
    CHECK(std::abs((a * b).eval(x) - a.eval(x) * b.eval(x)) < 1e-14);
    CHECK(std::abs((a + b).eval(x) - a.eval(x) - b.eval(x)) < 1e-15);
    CHECK((a - a).is_zero());
    CHECK(a.min_exponent() == -1);
    CHECK(a.has_negative_exponents());
    CHECK((a * b).coeff(0) == cplx(6.0));
}

TEST_CASE("mat2 keeps operand order") {
    const CMat2 m{1.0, 2.0, 3.0, 4.0}, n{0.0, 1.0, 1.0, 0.0};
    const CMat2 mn = m * n;
    CHECK(mn.a11 == cplx(2.0));
    CHECK(mn.a12 == cplx(1.0));
    CHECK(m.det() == cplx(-2.0));
    const CMat2 id = m * inverse(m);
    CHECK(max_abs(id - CMat2{1.0, 0.0, 0.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(inverse(CMat2{1.0, 2.0, 2.0, 4.0}), DomainError);
}

TEST_CASE("multidual partials match finite differences") {
    const cplx x0(0.3, 0.2), y0(-0.5, 0.1);
    auto f = [](const auto& x, const auto& y) { return log(x * y + 2.0) * exp(x) / (1.0 - y); };
    const MultiDual x = MultiDual::variable(x0, 0, 2), y = MultiDual::variable(y0, 1, 2);
    const MultiDual v = f(x, y);
    auto fc = [](cplx x, cplx y) { return std::log(x * y + 2.0) * std::exp(x) / (1.0 - y); };
    const double h = 1e-6;
    const cplx dx = (fc(x0 + h, y0) - fc(x0 - h, y0)) / (2 * h);
    const cplx dy = (fc(x0, y0 + h) - fc(x0, y0 - h)) / (2 * h);
    CHECK(std::abs(v.partial(0) - dx) < 1e-8);
    CHECK(std::abs(v.partial(1) - dy) < 1e-8);
    CHECK(std::abs(v.value() - fc(x0, y0)) < 1e-15);
}

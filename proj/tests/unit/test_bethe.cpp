#include <albaxter/bethe.hpp>

#include <doctest.h>

#include <numbers>

using namespace albaxter;

TEST_CASE("single root sits on a 2N-th root of unity for every alpha") {
    for (std::size_t n = 1; n <= 6; ++n)
        for (double al : {0.1, 0.3, 0.5, 0.8, 0.95}) {
            const BetheConfig c = solve_bethe(n, 1, QParam(al));
            REQUIRE(c.roots.size() == 1);
            CHECK(std::abs(std::pow(c.roots[0], int(2 * n)) - 1.0) < 1e-14);
            CHECK(c.residual < 1e-14);
        }
}

TEST_CASE("homotopy solves the two-root systems") {
    for (std::size_t n : {2, 3})
        for (double al : {0.3, 0.5, 0.8}) {
            const QParam a(al);
            const BetheConfig c = solve_bethe(n, 2, a);
            CHECK(c.residual < 1e-12);
            CHECK(!c.homotopy_path.empty());
            for (const double r : bethe_residuals(c)) CHECK(r < 1e-12);
            std::vector<cplx> nus{cplx(0.9, 0.2), cplx(1.2, -0.5), cplx(0.6, 0.6)};
            CHECK(baxter_qdiff_residual(c.roots, n, a, nus) < 1e-10);
            std::vector<cplx> off = c.roots;
            for (auto& x : off) x *= 1.1;
            CHECK(baxter_qdiff_residual(off, n, a, nus) > 1e-2);
        }
}

TEST_CASE("transfer eigenvalue is a Laurent polynomial on shell") {
    const QParam a(0.5);
    const BetheConfig c = solve_bethe(3, 2, a);
    double rem = 1.0;
    const LaurentPoly t = transfer_polynomial(c.roots, 3, a, &rem);
    CHECK(rem < 1e-12);
    const cplx nu(0.8, 0.35);
    CHECK(std::abs(t.eval(nu) - transfer_eigenvalue(c, nu)) < 1e-10);
}

TEST_CASE("seed validation") {
    const QParam a(0.5);
    CHECK(default_seed_selection(3, 2) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(default_seed_selection(2, 3), DomainError);
    CHECK_THROWS_AS(solve_bethe(3, 2, a, std::vector<int>{1, 1}), DomainError);
    CHECK_THROWS_AS(solve_bethe(3, 2, a, std::vector<int>{0, 3}), DomainError);
}

TEST_CASE("semiclassical branches") {
    const QParam a(1.0 - 1e-3);
    const BetheConfig c = solve_bethe(2, 1, a);
    const SemiclassicalSplit s = semiclassical_split(c.roots, 2, a, 1.3);
    CHECK(s.sum_residual < 1e-12);
    CHECK(s.product_mismatch < 1e-4);
}

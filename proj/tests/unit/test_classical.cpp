#include <albaxter/classical.hpp>
#include <albaxter/sampling.hpp>

#include <doctest.h>

using namespace albaxter;

namespace {

// H = sum_k (q_{k+1} r_k + q_k r_{k+1}) + 2 log prod(1 - q_k r_k), written out
// independently of the library's monodromy machinery.
Observable chain_hamiltonian() {
    return [](std::span<const MultiDual> q, std::span<const MultiDual> r) {
        const long n = long(q.size());
        MultiDual h(0.0);
        for (long k = 0; k < n; ++k) {
            const auto kp = wrap(k + 1, q.size()), kk = std::size_t(k);
            h = h + q[kp] * r[kk] + q[kk] * r[kp] + 2.0 * log(1.0 - q[kk] * r[kk]);
        }
        return h;
    };
}

} // namespace

TEST_CASE("conserved quantities of small chains in closed form") {
    const ChainState s({cplx(0.1, 0.2), cplx(-0.3, 0.1)}, {cplx(0.2, -0.1), cplx(0.4, 0.3)});
    const ConservedSet c = conserved_quantities(s);
    REQUIRE(c.H.size() == 3);
    CHECK(std::abs(c.H[0] - 1.0) < 1e-14);
    CHECK(std::abs(c.H[2] - 1.0) < 1e-14);
    const cplx h1 = s.q(1) * s.r(0) + s.q(0) * s.r(1);
    CHECK(std::abs(c.H[1] - h1) < 1e-14);
    CHECK(std::abs(c.det - (1.0 - s.q(0) * s.r(0)) * (1.0 - s.q(1) * s.r(1))) < 1e-15);
}

TEST_CASE("equations of motion are the Hamiltonian flow") {
    Rng rng(3);
    for (std::size_t n : {1, 2, 3, 5}) {
        const ChainState s = random_state(n, rng);
        const ChainDerivative d = eom_rhs(s);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(d.dq[k] - poisson_bracket(observable_q(k), chain_hamiltonian(), s)) < 1e-13);
            CHECK(std::abs(d.dr[k] - poisson_bracket(observable_r(k), chain_hamiltonian(), s)) < 1e-13);
        }
    }
}

TEST_CASE("canonical brackets") {
    Rng rng(4);
    const ChainState s = random_state(3, rng);
    CHECK(std::abs(poisson_bracket(observable_q(1), observable_r(1), s) - (1.0 - s.q(1) * s.r(1))) < 1e-15);
    CHECK(std::abs(poisson_bracket(observable_q(0), observable_r(1), s)) == 0.0);
}

TEST_CASE("r-matrix relation and involution") {
    Rng rng(8);
    for (std::size_t n : {1, 2, 3}) {
        const ChainState s = random_state(n, rng);
        CHECK(rmatrix_relation_residual(s, cplx(0.8, 0.3), cplx(1.1, -0.2)) < 1e-12);
        CHECK(std::abs(poisson_bracket(observable_trace(0.7), observable_trace(cplx(1.2, 0.4)), s)) < 1e-12);
    }
    CHECK_THROWS_AS(classical_rmatrix(0.5, -0.5), DomainError);
}

TEST_CASE("rk4 conserves invariants to high order and leaves zero fixed") {
    Rng rng(9);
    const ChainState s0 = random_state(3, rng, 0.2);
    const ConservedSet c0 = conserved_quantities(s0);
    auto drift = [&](int steps) {
        ChainState s = s0;
        for (int i = 0; i < steps; ++i) s = rk4_step(s, 1.0 / steps);
        const ConservedSet c1 = conserved_quantities(s);
        return std::max(std::abs(c1.det - c0.det), std::abs(c1.H[1] - c0.H[1]));
    };
    const double d1 = drift(100), d2 = drift(200);
    CHECK(d1 < 1e-7);
    CHECK(d1 / d2 > 10.0);  // about 16 for a fourth-order method

    ChainState z(std::vector<cplx>(2), std::vector<cplx>(2));
    z = rk4_step(z, 0.1);
    CHECK(z.q(0) == cplx(0.0));
    CHECK(z.r(1) == cplx(0.0));
}

TEST_CASE("state validation and json round trip") {
    CHECK_THROWS_AS(ChainState({2.0}, {0.5}), DomainError);
    CHECK_THROWS_AS(ChainState({}, {}), DomainError);
    CHECK_THROWS_AS(ChainState({0.1, 0.2}, {0.1}), DomainError);
    Rng rng(1);
    const ChainState s = random_state(4, rng);
    const ChainState t = chain_state_from_json(to_json(s));
    for (long k = 0; k < 4; ++k) {
        CHECK(t.q(k) == s.q(k));
        CHECK(t.r(k) == s.r(k));
    }
    CHECK(s.rotated(1).q(0) == s.q(-1));
}

TEST_CASE("seeded draws are reproducible and label-separated") {
    Rng a = Rng::derived(7, "x"), b = Rng::derived(7, "x"), c = Rng::derived(7, "y");
    const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
    CHECK(va == vb);
    CHECK(va != vc);
}

#include <albaxter/backlund.hpp>
#include <albaxter/sampling.hpp>

#include <doctest.h>

using namespace albaxter;

namespace {

double invariant_gap(const ChainState& a, const ChainState& b) {
    const ConservedSet x = conserved_quantities(a), y = conserved_quantities(b);
    double w = std::abs(x.det - y.det);
    for (std::size_t i = 0; i < x.H.size(); ++i) w = std::max(w, std::abs(x.H[i] - y.H[i]));
    return w;
}

} // namespace

TEST_CASE("map residuals and conservation over N and mu") {
    Rng rng(21);
    for (std::size_t n : {1, 2, 3, 4})
        for (double mu : {0.1, 0.3, 1.3}) {
            const BTResult bt = bt_apply(random_state(n, rng), mu);
            CHECK(bt.residual < 1e-12);
            CHECK(bt_map_residual(bt.source, bt.target, mu) < 1e-12);
            CHECK(invariant_gap(bt.source, bt.target) < 1e-10);
            CHECK(intertwining_residual(bt, cplx(0.6, 0.9)) < 1e-10);
        }
}

TEST_CASE("complex mu") {
    Rng rng(22);
    const BTResult bt = bt_apply(random_state(3, rng), cplx(0.4, 0.3));
    CHECK(bt.residual < 1e-12);
    CHECK(invariant_gap(bt.source, bt.target) < 1e-10);
    const SpectralityReport sp = spectrality(bt);
    CHECK(sp.collinearity < 1e-10);
    CHECK(sp.trace_residual < 1e-10);
}

TEST_CASE("second map line with r~_k r~_{k-1} in the denominator breaks conservation") {
    Rng rng(23);
    const BTResult bt = bt_apply(random_state(3, rng), 0.3);
    const ChainState& s = bt.source;
    const ChainState& t = bt.target;
    const cplx mu2 = 0.09;
    std::vector<cplx> qv(3), rt(3);
    for (long k = 0; k < 3; ++k) {
        const cplx rhs = (t.r(k) - s.r(k + 1)) * (mu2 * t.r(k) + s.r(k)) / (mu2 * t.r(k) * t.r(k - 1));
        qv[std::size_t(k)] = (1.0 - rhs) / t.r(k);
        rt[std::size_t(k)] = t.r(k);
    }
    const ChainState variant(qv, rt);
    CHECK(invariant_gap(s, t) < 1e-10);
    CHECK(invariant_gap(s, variant) > 1e-3);
}

TEST_CASE("dressing matrix is singular at lambda = mu") {
    Rng rng(24);
    const BTResult bt = bt_apply(random_state(2, rng), 0.7);
    for (long k = 0; k < 2; ++k) {
        CHECK(std::abs(dressing_matrix(bt, k, bt.mu).det()) < 1e-12);
        const auto w = kernel_vector(bt, k);
        const CMat2 d = dressing_matrix(bt, k, bt.mu);
        CHECK(std::abs(d.a11 * w[0] + d.a12 * w[1]) < 1e-12);
        CHECK(std::abs(d.a21 * w[0] + d.a22 * w[1]) < 1e-12);
    }
}

TEST_CASE("classical Baxter form and gamma") {
    Rng rng(25);
    const BTResult bt = bt_apply(random_state(3, rng), 0.3);
    const ClassicalBaxterReport r = classical_baxter_check(bt);
    CHECK(r.residual < 1e-10);
    CHECK(r.consistency < 1e-10);
    cplx g = 1.0;
    for (const cplx x : bt.gamma) g *= x;
    CHECK(std::abs(g - spectrality(bt).gamma) < 1e-10 * std::max(1.0, std::abs(g)));
}

TEST_CASE("canonicity is finite-difference limited with second order") {
    Rng rng(26);
    const ChainState s = random_state(2, rng);
    CHECK(canonicity_check(s, 0.3, 1e-6).deviation < 1e-5);
    const double d1 = canonicity_check(s, 0.3, 0.02).deviation, d2 = canonicity_check(s, 0.3, 0.01).deviation;
    CHECK(std::abs(std::log2(d1 / d2) - 2.0) < 0.3);
}

TEST_CASE("generating function on real-positive data") {
    Rng rng(27);
    int done = 0;
    for (int attempt = 0; attempt < 50 && done < 3; ++attempt) {
        const BTResult bt = bt_apply(random_real_state(3, rng), 0.3);
        try {
            const GeneratingFunctionReport g = generating_function_check(bt);
            CHECK(g.grad_residual_r < 1e-6);
            CHECK(g.grad_residual_rtilde < 1e-6);
            CHECK(g.phi_residual < 1e-6);
            CHECK(g.refinement_delta < 1e-10);
            ++done;
        } catch (const BranchError&) {
        }
    }
    CHECK(done == 3);

    const BTResult complex_bt = bt_apply(random_state(2, rng), 0.3);
    CHECK_THROWS_AS(generating_function_check(complex_bt), BranchError);
}

TEST_CASE("input validation") {
    Rng rng(28);
    const ChainState s = random_state(2, rng);
    CHECK_THROWS_AS(bt_apply(s, 0.0), DomainError);
    BTOptions bad;
    bad.tol = -1.0;
    CHECK_THROWS_AS(bt_apply(s, 0.3, bad), DomainError);
}

TEST_CASE("warm start reproduces the continuation result") {
    Rng rng(29);
    const BTResult a = bt_apply(random_state(3, rng), 0.3);
    BTOptions warm;
    warm.initial_guess = std::vector<cplx>(a.target.r().begin(), a.target.r().end());
    const BTResult b = bt_apply(a.source, 0.3, warm);
    for (long k = 0; k < 3; ++k) CHECK(std::abs(a.target.r(k) - b.target.r(k)) < 1e-12);
}

#include <albaxter/bethe.hpp>
#include <albaxter/fock.hpp>

#include <doctest.h>

using namespace albaxter;

TEST_CASE("q-boson relations on the truncated space") {
    for (double al : {0.3, 0.5, 0.8}) {
        const FockRep rep(2, 5, QParam(al));
        CHECK(commutation_residual(rep) < 1e-12);
        CHECK(rep.dim() == 36);
    }
}

TEST_CASE("yang-baxter and exchange relations") {
    CHECK(ybe_residual(cplx(0.8, 0.3), cplx(1.2, -0.4), cplx(0.2, 0.1)) < 1e-12);
    const FockRep rep(2, 6, QParam(0.5));
    CHECK(rll_residual(rep, cplx(0.9, 0.2), cplx(1.3, -0.1)) < 1e-11);
    CHECK(transfer_commutator_residual(rep, cplx(0.9, 0.2), cplx(1.3, -0.1)) < 1e-10);
}

TEST_CASE("quantum determinant forms") {
    const FockRep rep(2, 5, QParam(0.5));
    const QDetReport q = quantum_determinant_check(rep, cplx(0.8, 0.3));
    CHECK(q.pairwise < 1e-11);
    CHECK(q.to_product < 1e-11);
    CHECK(qdet_transfer_commutator_residual(rep, cplx(0.8, 0.3), 1.1) < 1e-10);
}

TEST_CASE("pseudo-vacuum") {
    const FockRep rep(3, 4, QParam(0.5));
    const auto vac = rep.vacuum();
    const OpMat2 m = evaluate(operator_monodromy(rep), 0.7);
    const auto bv = m.a12.apply(vac);
    CHECK(vector_norm(bv) == 0.0);
    // m = 0: the eigenvalue is nu^N + nu^-N
    CHECK(eigen_residual(rep, vac, {}, cplx(0.9, 0.1)) < 1e-14);
}

TEST_CASE("transfer matrix preserves the total occupation") {
    const FockRep rep(2, 4, QParam(0.5));
    CHECK(preserves_occupation(rep, transfer_matrix(rep, 0.8)));
    CHECK_FALSE(preserves_occupation(rep, rep.q(0)));
}

TEST_CASE("bethe vectors are eigenvectors only on shell") {
    const QParam a(0.5);
    const BetheConfig cfg = solve_bethe(3, 2, a);
    const FockRep rep(3, 5, a);
    const auto st = bethe_state(rep, cfg.roots);
    CHECK(eigen_residual(rep, st, cfg.roots, cplx(0.7, 0.4)) < 1e-10);
    CHECK(qdet_eigen_residual(rep, st, 2, cplx(0.7, 0.4)) < 1e-10);

    std::vector<cplx> off = cfg.roots;
    for (auto& x : off) x *= 1.1;
    const auto st_off = bethe_state(rep, off);
    CHECK(eigen_residual(rep, st_off, off, cplx(0.7, 0.4)) > 1e-2);
}

TEST_CASE("truncation limits") {
    const FockRep rep(2, 3, QParam(0.5));
    const std::vector<cplx> roots{0.5, 0.7};
    CHECK_THROWS_AS(bethe_state(rep, roots), DomainError);
    CHECK_THROWS_AS(FockRep(8, 10, QParam(0.5), 1000), DomainError);
}

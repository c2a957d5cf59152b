#include <albaxter/fock.hpp>
#include <albaxter/sampling.hpp>
#include <albaxter/sparse.hpp>

#include <doctest.h>

using namespace albaxter;

namespace {

SparseOp random_op(std::size_t rows, std::size_t cols, double density, Rng& rng) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng.uniform() < density) t.push_back({i, j, rng.complex_box(1.0)});
    return SparseOp::from_triplets(rows, cols, std::move(t));
}

bool bitwise_equal(const SparseOp& a, const SparseOp& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.nnz() != b.nnz()) return false;
    for (std::size_t i = 0; i < a.nnz(); ++i)
        if (a.col_idx()[i] != b.col_idx()[i] || a.values()[i] != b.values()[i]) return false;
    for (std::size_t i = 0; i <= a.rows(); ++i)
        if (a.row_ptr()[i] != b.row_ptr()[i]) return false;
    return true;
}

} // namespace

TEST_CASE("serial and openmp kernels agree bitwise") {
    Rng rng(11);
    const SparseOp a = random_op(300, 200, 0.05, rng), b = random_op(200, 250, 0.05, rng);
    const SparseOp c = random_op(300, 200, 0.03, rng);
    CHECK(bitwise_equal(kernels::serial::spgemm(a, b), kernels::omp::spgemm(a, b)));
    CHECK(bitwise_equal(kernels::serial::axpby(2.0, a, cplx(0, 1), c), kernels::omp::axpby(2.0, a, cplx(0, 1), c)));
    std::vector<cplx> x(200);
    for (auto& v : x) v = rng.complex_box(1.0);
    std::vector<cplx> y1(300), y2(300);
    kernels::serial::spmv(a, x, y1);
    kernels::omp::spmv(a, x, y2);
    CHECK(y1 == y2);
}

TEST_CASE("fock operator products agree across kernels") {
    const FockRep rep(3, 6, QParam(0.5));
    const SparseOp p = rep.q(0) * rep.r(1);
    CHECK(bitwise_equal(kernels::serial::spgemm(p, rep.q(2)), kernels::omp::spgemm(p, rep.q(2))));
}

TEST_CASE("dense reference for products") {
    Rng rng(5);
    const SparseOp a = random_op(20, 15, 0.3, rng), b = random_op(15, 10, 0.3, rng);
    const SparseOp c = a * b;
    double worst = 0.0;
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < 15; ++k) s += a.entry(i, k) * b.entry(k, j);
            worst = std::max(worst, std::abs(s - c.entry(i, j)));
        }
    CHECK(worst < 1e-14);
}

TEST_CASE("shapeless operator is a universal zero") {
    const SparseOp id = SparseOp::identity(4), z;
    CHECK(z.shapeless());
    CHECK((id + z).nnz() == 4);
    CHECK((z * id).max_abs() == 0.0);
    CHECK((id - id).nnz() == 0);
    CHECK(commutator(id, id).max_abs() == 0.0);
}

TEST_CASE("triplets sum duplicates and drop zeros") {
    const SparseOp a = SparseOp::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 1, 0.0}});
    CHECK(a.nnz() == 1);
    CHECK(a.entry(0, 0) == cplx(3.0));
}

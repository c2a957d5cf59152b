// Serial vs OpenMP sparse kernels on transfer-matrix-sized Fock operators.
// Reports median wall time over repeats and checks the outputs agree bitwise.

#include <albaxter/fock.hpp>
#include <albaxter/sparse.hpp>

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

using namespace albaxter;

namespace {

double median_ms(int reps, const std::function<void()>& f) {
    std::vector<double> t;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

bool same(const SparseOp& a, const SparseOp& b) {
    return a.nnz() == b.nnz() && std::equal(a.values().begin(), a.values().end(), b.values().begin()) &&
           std::equal(a.col_idx().begin(), a.col_idx().end(), b.col_idx().begin());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse kernel benchmark"};
    int sites = 4, n_max = 8, reps = 5, threads = 0;
    app.add_option("--sites", sites);
    app.add_option("--nmax", n_max);
    app.add_option("--reps", reps);
    app.add_option("--threads", threads, "0 = runtime default");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) omp_set_num_threads(threads);

    const FockRep rep(std::size_t(sites), n_max, QParam(0.5), 10'000'000);
    const SparseOp t = transfer_matrix(rep, cplx(0.9, 0.2));
    const SparseOp u = transfer_matrix(rep, cplx(1.1, -0.3));
    std::vector<cplx> x(rep.dim(), cplx(1.0, 0.5)), y1(rep.dim()), y2(rep.dim());

    std::printf("dim=%zu nnz(T)=%zu threads=%d\n", rep.dim(), t.nnz(), omp_get_max_threads());
    std::printf("%-8s %12s %12s %8s %s\n", "kernel", "serial_ms", "omp_ms", "speedup", "bitwise");

    const double s1 = median_ms(reps, [&] { kernels::serial::spmv(t, x, y1); });
    const double o1 = median_ms(reps, [&] { kernels::omp::spmv(t, x, y2); });
    bool ok = y1 == y2;
    std::printf("%-8s %12.3f %12.3f %8.2f %s\n", "spmv", s1, o1, s1 / o1, y1 == y2 ? "yes" : "NO");

    SparseOp ps, po;
    const double s2 = median_ms(reps, [&] { ps = kernels::serial::spgemm(t, u); });
    const double o2 = median_ms(reps, [&] { po = kernels::omp::spgemm(t, u); });
    std::printf("%-8s %12.3f %12.3f %8.2f %s\n", "spgemm", s2, o2, s2 / o2, same(ps, po) ? "yes" : "NO");
    ok = ok && same(ps, po);

    const double s3 = median_ms(reps, [&] { ps = kernels::serial::axpby(2.0, t, cplx(0, 1), u); });
    const double o3 = median_ms(reps, [&] { po = kernels::omp::axpby(2.0, t, cplx(0, 1), u); });
    std::printf("%-8s %12.3f %12.3f %8.2f %s\n", "axpby", s3, o3, s3 / o3, same(ps, po) ? "yes" : "NO");
    return ok && same(ps, po) ? 0 : 1;
}

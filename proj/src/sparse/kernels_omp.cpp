// Row-parallel OpenMP kernels. Each output row is produced by exactly one
// thread, visiting contributions in the serial order.

#include <albaxter/sparse.hpp>

#include <algorithm>

namespace albaxter::kernels::omp {

namespace {

struct RowBuffer {
    std::vector<std::size_t> cols;
    std::vector<cplx> vals;
};

SparseOp assemble(std::size_t rows, std::size_t cols, std::vector<RowBuffer>& buf) {
    std::vector<std::size_t> rp(rows + 1, 0);
    for (std::size_t i = 0; i < rows; ++i) rp[i + 1] = rp[i] + buf[i].vals.size();
    std::vector<std::size_t> ci(rp[rows]);
    std::vector<cplx> vals(rp[rows]);
    const long n = static_cast<long>(rows);
#pragma omp parallel for schedule(static)
    for (long ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        std::copy(buf[i].cols.begin(), buf[i].cols.end(), ci.begin() + static_cast<long>(rp[i]));
        std::copy(buf[i].vals.begin(), buf[i].vals.end(), vals.begin() + static_cast<long>(rp[i]));
    }
    return SparseOp::from_csr(rows, cols, std::move(rp), std::move(ci), std::move(vals));
}

} // namespace

void spmv(const SparseOp& a, std::span<const cplx> x, std::span<cplx> y) {
    const auto rp = a.row_ptr();
    const auto ci = a.col_idx();
    const auto v = a.values();
    const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        cplx acc = 0.0;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) acc += v[k] * x[ci[k]];
        y[i] = acc;
    }
}

SparseOp spgemm(const SparseOp& a, const SparseOp& b) {
    const auto arp = a.row_ptr();
    const auto aci = a.col_idx();
    const auto av = a.values();
    const auto brp = b.row_ptr();
    const auto bci = b.col_idx();
    const auto bv = b.values();
    std::vector<RowBuffer> rows(a.rows());
    const long n = static_cast<long>(a.rows());

#pragma omp parallel
    {
        std::vector<cplx> acc(b.cols(), cplx(0.0));
        std::vector<char> seen(b.cols(), 0);
        std::vector<std::size_t> touched;
#pragma omp for schedule(dynamic, 32)
        for (long ii = 0; ii < n; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            touched.clear();
            for (std::size_t ka = arp[i]; ka < arp[i + 1]; ++ka) {
                const std::size_t j = aci[ka];
                for (std::size_t kb = brp[j]; kb < brp[j + 1]; ++kb) {
                    const std::size_t c = bci[kb];
                    if (!seen[c]) {
                        seen[c] = 1;
                        touched.push_back(c);
                    }
                    acc[c] += av[ka] * bv[kb];
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& out = rows[i];
            for (const std::size_t c : touched) {
                if (acc[c] != cplx(0.0)) {
                    out.cols.push_back(c);
                    out.vals.push_back(acc[c]);
                }
                acc[c] = 0.0;
                seen[c] = 0;
            }
        }
    }
    return assemble(a.rows(), b.cols(), rows);
}

SparseOp axpby(cplx alpha, const SparseOp& a, cplx beta, const SparseOp& b) {
    const auto arp = a.row_ptr();
    const auto aci = a.col_idx();
    const auto av = a.values();
    const auto brp = b.row_ptr();
    const auto bci = b.col_idx();
    const auto bv = b.values();
    std::vector<RowBuffer> rows(a.rows());
    const long n = static_cast<long>(a.rows());

#pragma omp parallel for schedule(static)
    for (long ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        auto& out = rows[i];
        std::size_t ka = arp[i], kb = brp[i];
        while (ka < arp[i + 1] || kb < brp[i + 1]) {
            std::size_t c;
            cplx v;
            if (kb == brp[i + 1] || (ka < arp[i + 1] && aci[ka] < bci[kb])) {
                c = aci[ka];
                v = alpha * av[ka++];
            } else if (ka == arp[i + 1] || bci[kb] < aci[ka]) {
                c = bci[kb];
                v = beta * bv[kb++];
            } else {
                c = aci[ka];
                v = alpha * av[ka++] + beta * bv[kb++];
            }
            if (v != cplx(0.0)) {
                out.cols.push_back(c);
                out.vals.push_back(v);
            }
        }
    }
    return assemble(a.rows(), a.cols(), rows);
}

} // namespace albaxter::kernels::omp

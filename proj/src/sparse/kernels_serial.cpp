// Serial reference kernels. The OpenMP versions in kernels_omp.cpp must
// reproduce these bit for bit.

#include <albaxter/sparse.hpp>

#include <algorithm>

namespace albaxter::kernels::serial {

void spmv(const SparseOp& a, std::span<const cplx> x, std::span<cplx> y) {
    const auto rp = a.row_ptr();
    const auto ci = a.col_idx();
    const auto v = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
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

    std::vector<std::size_t> rp(a.rows() + 1, 0), ci;
    std::vector<cplx> vals;
    std::vector<cplx> acc(b.cols(), cplx(0.0));
    std::vector<char> seen(b.cols(), 0);
    std::vector<std::size_t> touched;

    for (std::size_t i = 0; i < a.rows(); ++i) {
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
        for (const std::size_t c : touched) {
            if (acc[c] != cplx(0.0)) {
                ci.push_back(c);
                vals.push_back(acc[c]);
            }
            acc[c] = 0.0;
            seen[c] = 0;
        }
        rp[i + 1] = vals.size();
    }
    return SparseOp::from_csr(a.rows(), b.cols(), std::move(rp), std::move(ci), std::move(vals));
}

SparseOp axpby(cplx alpha, const SparseOp& a, cplx beta, const SparseOp& b) {
    const auto arp = a.row_ptr();
    const auto aci = a.col_idx();
    const auto av = a.values();
    const auto brp = b.row_ptr();
    const auto bci = b.col_idx();
    const auto bv = b.values();

    std::vector<std::size_t> rp(a.rows() + 1, 0), ci;
    std::vector<cplx> vals;
    for (std::size_t i = 0; i < a.rows(); ++i) {
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
                ci.push_back(c);
                vals.push_back(v);
            }
        }
        rp[i + 1] = vals.size();
    }
    return SparseOp::from_csr(a.rows(), a.cols(), std::move(rp), std::move(ci), std::move(vals));
}

} // namespace albaxter::kernels::serial

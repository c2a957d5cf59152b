#include <albaxter/sparse.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace albaxter {

namespace {
std::atomic<std::size_t> g_parallel_rows{512};

void check_same_shape(const SparseOp& a, const SparseOp& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError(std::string(what) + ": operator shape mismatch");
}
} // namespace

std::size_t parallel_row_threshold() { return g_parallel_rows.load(); }
void set_parallel_row_threshold(std::size_t rows) { g_parallel_rows.store(rows); }

void set_max_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SparseOp::SparseOp(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseOp SparseOp::identity(std::size_t n) {
    std::vector<std::size_t> rp(n + 1), ci(n);
    std::vector<cplx> v(n, cplx(1.0));
    for (std::size_t i = 0; i <= n; ++i) rp[i] = i;
    for (std::size_t i = 0; i < n; ++i) ci[i] = i;
    return from_csr(n, n, std::move(rp), std::move(ci), std::move(v));
}

SparseOp SparseOp::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
    for (const auto& t : entries)
        if (t.row >= rows || t.col >= cols) throw DomainError("from_triplets: index out of range");
    std::sort(entries.begin(), entries.end(), [](const Triplet& x, const Triplet& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    SparseOp op(rows, cols);
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        while (k < entries.size() && entries[k].row == i) {
            const std::size_t j = entries[k].col;
            cplx v = 0.0;
            while (k < entries.size() && entries[k].row == i && entries[k].col == j) v += entries[k++].value;
            if (v != cplx(0.0)) {
                op.col_idx_.push_back(j);
                op.values_.push_back(v);
            }
        }
        op.row_ptr_[i + 1] = op.values_.size();
    }
    return op;
}

SparseOp SparseOp::from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                            std::vector<std::size_t> col_idx, std::vector<cplx> values) {
    if (row_ptr.size() != rows + 1 || col_idx.size() != values.size() || row_ptr.back() != values.size())
        throw DomainError("from_csr: inconsistent CSR arrays");
    SparseOp op;
    op.rows_ = rows;
    op.cols_ = cols;
    op.row_ptr_ = std::move(row_ptr);
    op.col_idx_ = std::move(col_idx);
    op.values_ = std::move(values);
    return op;
}

cplx SparseOp::entry(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DomainError("SparseOp::entry: index out of range");
    const auto first = col_idx_.begin() + static_cast<long>(row_ptr_[i]);
    const auto last = col_idx_.begin() + static_cast<long>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

double SparseOp::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SparseOp::max_abs_in_columns(const std::vector<char>& mask) const {
    if (mask.size() != cols_) throw DomainError("max_abs_in_columns: mask size mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (mask[col_idx_[k]]) m = std::max(m, std::abs(values_[k]));
    return m;
}

std::vector<cplx> SparseOp::apply(std::span<const cplx> x) const {
    if (x.size() != cols_) throw DomainError("SparseOp::apply: vector size mismatch");
    std::vector<cplx> y(rows_);
    if (rows_ >= parallel_row_threshold())
        kernels::omp::spmv(*this, x, y);
    else
        kernels::serial::spmv(*this, x, y);
    return y;
}

SparseOp operator+(const SparseOp& a, const SparseOp& b) {
    if (a.shapeless()) return b;
    if (b.shapeless()) return a;
    check_same_shape(a, b, "operator+");
    return a.rows() >= parallel_row_threshold() ? kernels::omp::axpby(1.0, a, 1.0, b)
                                                : kernels::serial::axpby(1.0, a, 1.0, b);
}

SparseOp operator-(const SparseOp& a, const SparseOp& b) {
    if (b.shapeless()) return a;
    if (a.shapeless()) return b * cplx(-1.0);
    check_same_shape(a, b, "operator-");
    return a.rows() >= parallel_row_threshold() ? kernels::omp::axpby(1.0, a, -1.0, b)
                                                : kernels::serial::axpby(1.0, a, -1.0, b);
}

SparseOp operator*(const SparseOp& a, const SparseOp& b) {
    if (a.shapeless() || b.shapeless()) return SparseOp{};
    if (a.cols() != b.rows()) throw DomainError("operator*: inner dimension mismatch");
    return a.rows() >= parallel_row_threshold() ? kernels::omp::spgemm(a, b) : kernels::serial::spgemm(a, b);
}

SparseOp operator*(const SparseOp& a, cplx s) {
    if (s == cplx(0.0)) return SparseOp(a.rows(), a.cols());
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& x : v) x *= s;
    return SparseOp::from_csr(a.rows(), a.cols(), {a.row_ptr().begin(), a.row_ptr().end()},
                              {a.col_idx().begin(), a.col_idx().end()}, std::move(v));
}

SparseOp commutator(const SparseOp& a, const SparseOp& b) { return a * b - b * a; }

} // namespace albaxter

#pragma once

// Compressed-row complex operators on truncated Fock spaces.
//
// Every kernel exists twice: a serial reference in kernels::serial and an
// OpenMP version in kernels::omp. Both visit each output row's contributions
// in the same order, so their results are bitwise identical; the test suite
// holds them to that. SparseOp's operators dispatch to the OpenMP kernels
// above `parallel_row_threshold()` rows.

#include <albaxter/core.hpp>

#include <span>
#include <vector>

namespace albaxter {

struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
};

class SparseOp {
public:
    /// The 0x0 operator acts as an additive zero of any shape.
    SparseOp() = default;
    SparseOp(std::size_t rows, std::size_t cols);

    static SparseOp identity(std::size_t n);
    /// Duplicate (row, col) pairs are summed; exact zeros are dropped.
    static SparseOp from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
    /// Raw CSR constructor; rows must be sorted by column without duplicates.
    static SparseOp from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                             std::vector<std::size_t> col_idx, std::vector<cplx> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }
    bool shapeless() const { return rows_ == 0 && cols_ == 0; }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::size_t> col_idx() const { return col_idx_; }
    std::span<const cplx> values() const { return values_; }

    cplx entry(std::size_t i, std::size_t j) const;
    double max_abs() const;
    /// Largest |entry| over columns with mask[col] != 0.
    double max_abs_in_columns(const std::vector<char>& mask) const;

    std::vector<cplx> apply(std::span<const cplx> x) const;

    friend SparseOp operator+(const SparseOp& a, const SparseOp& b);
    friend SparseOp operator-(const SparseOp& a, const SparseOp& b);
    friend SparseOp operator*(const SparseOp& a, const SparseOp& b);
    friend SparseOp operator*(const SparseOp& a, cplx s);
    friend SparseOp operator*(cplx s, const SparseOp& a) { return a * s; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<cplx> values_;
};

inline double coeff_magnitude(const SparseOp& op) { return op.max_abs(); }

/// a*b - b*a
SparseOp commutator(const SparseOp& a, const SparseOp& b);

namespace kernels {

namespace serial {
void spmv(const SparseOp& a, std::span<const cplx> x, std::span<cplx> y);
SparseOp spgemm(const SparseOp& a, const SparseOp& b);
SparseOp axpby(cplx alpha, const SparseOp& a, cplx beta, const SparseOp& b);
} // namespace serial

namespace omp {
void spmv(const SparseOp& a, std::span<const cplx> x, std::span<cplx> y);
SparseOp spgemm(const SparseOp& a, const SparseOp& b);
SparseOp axpby(cplx alpha, const SparseOp& a, cplx beta, const SparseOp& b);
} // namespace omp

} // namespace kernels

/// Rows at or above which SparseOp dispatches to the OpenMP kernels.
std::size_t parallel_row_threshold();
void set_parallel_row_threshold(std::size_t rows);

/// Caps OpenMP threads (0 leaves the runtime default).
void set_max_threads(int threads);
int max_threads();

} // namespace albaxter

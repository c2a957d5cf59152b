#pragma once

// Truncated q-boson Fock representation of the quantum chain.
//
// Basis |n_0 .. n_{N-1}>, 0 <= n_k <= n_max, index sum_k n_k (n_max+1)^k.
// r_k raises n_k (annihilating at n_max); q_k |n> = (1 - alpha^{n_k}) |n - e_k>.
// The cutoff breaks the algebra at n_k = n_max, so identities are checked on
// input columns with enough headroom below the cutoff: an identity whose
// terms apply at most h+1 site operators per site is exact on columns with
// every n_k <= n_max - h.

#include <albaxter/algebra/laurent.hpp>
#include <albaxter/algebra/mat2.hpp>
#include <albaxter/classical.hpp>
#include <albaxter/core.hpp>
#include <albaxter/qcalc.hpp>
#include <albaxter/sparse.hpp>

#include <span>
#include <vector>

namespace albaxter {

class FockRep {
public:
    /// Throws DomainError when (n_max+1)^N exceeds cap.
    FockRep(std::size_t sites, int n_max, const QParam& a, std::size_t cap = 200000);

    std::size_t sites() const { return sites_; }
    int n_max() const { return n_max_; }
    std::size_t dim() const { return dim_; }
    const QParam& qparam() const { return a_; }

    const SparseOp& q(std::size_t k) const { return q_.at(k); }
    const SparseOp& r(std::size_t k) const { return r_.at(k); }
    const SparseOp& identity() const { return id_; }

    int occupation(std::size_t index, std::size_t k) const;
    int total_occupation(std::size_t index) const;
    std::size_t index_of(std::span<const int> occ) const;

    /// mask[i] != 0 iff every n_k <= n_max - headroom at basis state i.
    std::vector<char> safe_columns(int headroom) const;
    std::vector<cplx> vacuum() const;

private:
    std::size_t sites_;
    int n_max_;
    QParam a_;
    std::size_t dim_;
    std::vector<SparseOp> q_, r_;
    SparseOp id_;
};

using OpLaurent = Laurent<SparseOp>;
using OperatorMonodromy = Mat2<OpLaurent>;
using OpMat2 = Mat2<SparseOp>;

/// L_{N-1} ... L_0 with L_k = (lambda, q_k; r_k, 1/lambda).
OperatorMonodromy operator_monodromy(const FockRep& rep);
OpMat2 evaluate(const OperatorMonodromy& m, cplx lambda);
SparseOp transfer_matrix(const FockRep& rep, cplx lambda);

/// Quantum R-matrix with c = lambda^2/(lambda^2 - nu^2), b = lambda nu/(lambda^2 - nu^2).
Mat4 quantum_rmatrix(cplx lambda, cplx nu, cplx eta);

/// Index-contracted Yang-Baxter residual R12(l/n) R13(l) R23(n) vs R23(n) R13(l) R12(l/n).
double ybe_residual(cplx lambda, cplx nu, cplx eta);

/// max |[q_j, r_k] - eta (1 - q_j r_j) delta_jk|, |[q_j, q_k]|, |[r_j, r_k]| on columns with headroom 1.
double commutation_residual(const FockRep& rep);

/// R(l/n) L1(l) L2(n) - L2(n) L1(l) R(l/n), columns with headroom 1.
double rll_residual(const FockRep& rep, cplx lambda, cplx nu);

/// [Tr L(lambda), Tr L(nu)], columns with headroom 1.
double transfer_commutator_residual(const FockRep& rep, cplx lambda, cplx nu);

/// prod_k (1 - r_k q_k)
SparseOp qdet_product(const FockRep& rep);
/// Delta(lambda) from form i in {0,1,2,3} of the quantum determinant, divided by sqrt(alpha)^{N-1}.
SparseOp quantum_determinant(const FockRep& rep, const OperatorMonodromy& m, cplx lambda, int form);

struct QDetReport {
    double pairwise = 0.0;    ///< max over pairs of forms
    double to_product = 0.0;  ///< max over forms of |form - prod(1 - r q)|
};
QDetReport quantum_determinant_check(const FockRep& rep, cplx lambda);

/// [Delta(lambda), Tr L(mu)] on columns with headroom 2.
double qdet_transfer_commutator_residual(const FockRep& rep, cplx lambda, cplx mu);

/// true iff op maps each total-occupation block into itself.
bool preserves_occupation(const FockRep& rep, const SparseOp& op);

/// C(lambda_m) ... C(lambda_1)|0>. Requires m <= n_max - 2; DomainError on a zero vector.
std::vector<cplx> bethe_state(const FockRep& rep, std::span<const cplx> roots);

/// |Tr L(nu) v - t(nu) v| / |v| with t from the eigenvalue formula.
double eigen_residual(const FockRep& rep, std::span<const cplx> state, std::span<const cplx> roots, cplx nu);

/// max of |Delta v - alpha^m v| / |v| over the product form and the first determinant form at lambda.
double qdet_eigen_residual(const FockRep& rep, std::span<const cplx> state, std::size_t m, cplx lambda);

double vector_norm(std::span<const cplx> v);

} // namespace albaxter

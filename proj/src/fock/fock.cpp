#include <albaxter/bethe.hpp>
#include <albaxter/fock.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace albaxter {

FockRep::FockRep(std::size_t sites, int n_max, const QParam& a, std::size_t cap)
    : sites_(sites), n_max_(n_max), a_(a), dim_(1) {
    if (sites == 0) throw DomainError("FockRep: need at least one site");
    if (n_max < 1) throw DomainError("FockRep: n_max must be >= 1");
    for (std::size_t k = 0; k < sites; ++k) {
        dim_ *= std::size_t(n_max + 1);
        if (dim_ > cap)
            throw DomainError("FockRep: basis size exceeds the cap of " + std::to_string(cap) + " states");
    }
    id_ = SparseOp::identity(dim_);
    std::size_t stride = 1;
    for (std::size_t k = 0; k < sites; ++k) {
        std::vector<Triplet> qt, rt;
        for (std::size_t i = 0; i < dim_; ++i) {
            const int n = int((i / stride) % std::size_t(n_max + 1));
            if (n < n_max) rt.push_back({i + stride, i, 1.0});
            if (n > 0) qt.push_back({i - stride, i, 1.0 - std::pow(a.alpha(), n)});
        }
        q_.push_back(SparseOp::from_triplets(dim_, dim_, std::move(qt)));
        r_.push_back(SparseOp::from_triplets(dim_, dim_, std::move(rt)));
        stride *= std::size_t(n_max + 1);
    }
}

int FockRep::occupation(std::size_t index, std::size_t k) const {
    std::size_t stride = 1;
    for (std::size_t j = 0; j < k; ++j) stride *= std::size_t(n_max_ + 1);
    return int((index / stride) % std::size_t(n_max_ + 1));
}

int FockRep::total_occupation(std::size_t index) const {
    int total = 0;
    for (std::size_t k = 0; k < sites_; ++k) {
        total += int(index % std::size_t(n_max_ + 1));
        index /= std::size_t(n_max_ + 1);
    }
    return total;
}

std::size_t FockRep::index_of(std::span<const int> occ) const {
    if (occ.size() != sites_) throw DomainError("FockRep::index_of: wrong number of sites");
    std::size_t idx = 0, stride = 1;
    for (std::size_t k = 0; k < sites_; ++k) {
        if (occ[k] < 0 || occ[k] > n_max_) throw DomainError("FockRep::index_of: occupation out of range");
        idx += std::size_t(occ[k]) * stride;
        stride *= std::size_t(n_max_ + 1);
    }
    return idx;
}

std::vector<char> FockRep::safe_columns(int headroom) const {
    std::vector<char> mask(dim_, 1);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t rest = i;
        for (std::size_t k = 0; k < sites_; ++k) {
            if (int(rest % std::size_t(n_max_ + 1)) > n_max_ - headroom) mask[i] = 0;
            rest /= std::size_t(n_max_ + 1);
        }
    }
    return mask;
}

std::vector<cplx> FockRep::vacuum() const {
    std::vector<cplx> v(dim_, 0.0);
    v[0] = 1.0;
    return v;
}

OperatorMonodromy operator_monodromy(const FockRep& rep) {
    const SparseOp& id = rep.identity();
    OperatorMonodromy m{OpLaurent::monomial(0, id), OpLaurent(), OpLaurent(), OpLaurent::monomial(0, id)};
    for (std::size_t k = 0; k < rep.sites(); ++k) {
        const OperatorMonodromy l{OpLaurent::monomial(1, id), OpLaurent::monomial(0, rep.q(k)),
                                  OpLaurent::monomial(0, rep.r(k)), OpLaurent::monomial(-1, id)};
        m = l * m;
    }
    return m;
}

OpMat2 evaluate(const OperatorMonodromy& m, cplx lambda) {
    return {m.a11.eval(lambda), m.a12.eval(lambda), m.a21.eval(lambda), m.a22.eval(lambda)};
}

SparseOp transfer_matrix(const FockRep& rep, cplx lambda) {
    return operator_monodromy(rep).trace().eval(lambda);
}

Mat4 quantum_rmatrix(cplx lambda, cplx nu, cplx eta) {
    const cplx l2 = lambda * lambda, n2 = nu * nu;
    if (std::abs(l2 - n2) < 1e-14 * std::max(1.0, std::abs(l2)))
        throw DomainError("quantum_rmatrix: lambda^2 == nu^2");
    const cplx c = l2 / (l2 - n2), b = lambda * nu / (l2 - n2);
    Mat4 r = Mat4::Zero();
    r(0, 0) = 1.0 + eta * c;
    r(1, 1) = 1.0 + eta;
    r(1, 2) = eta * b;
    r(2, 1) = eta * b;
    r(2, 2) = 1.0;
    r(3, 3) = 1.0 + eta * c;
    return r;
}

double ybe_residual(cplx lambda, cplx nu, cplx eta) {
    const Mat4 r12 = quantum_rmatrix(lambda / nu, 1.0, eta);
    const Mat4 r13 = quantum_rmatrix(lambda, 1.0, eta);
    const Mat4 r23 = quantum_rmatrix(nu, 1.0, eta);
    // R_{ab,cd} = M(2a + c, 2b + d)
    auto R = [](const Mat4& m, int a, int b, int c, int d) { return m(2 * a + c, 2 * b + d); };
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m)
                    for (int n = 0; n < 2; ++n)
                        for (int rr = 0; rr < 2; ++rr) {
                            cplx lhs = 0.0, rhs = 0.0;
                            for (int c = 0; c < 2; ++c)
                                for (int a = 0; a < 2; ++a)
                                    for (int b = 0; b < 2; ++b) {
                                        lhs += R(r12, i, c, j, a) * R(r13, c, m, k, b) * R(r23, a, n, b, rr);
                                        rhs += R(r23, j, a, k, b) * R(r13, i, c, b, rr) * R(r12, c, m, a, n);
                                    }
                            worst = std::max(worst, std::abs(lhs - rhs));
                        }
    return worst;
}

namespace {

using OpMat4 = std::array<SparseOp, 16>;

OpMat4 mul(const OpMat4& x, const OpMat4& y) {
    OpMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            SparseOp acc;
            for (int k = 0; k < 4; ++k) {
                const SparseOp& a = x[std::size_t(4 * i + k)];
                const SparseOp& b = y[std::size_t(4 * k + j)];
                if (a.shapeless() || b.shapeless()) continue;
                acc = acc + a * b;
            }
            out[std::size_t(4 * i + j)] = acc;
        }
    return out;
}

OpMat4 lift(const Mat4& r, const SparseOp& id) {
    OpMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (r(i, j) != cplx(0.0)) out[std::size_t(4 * i + j)] = id * r(i, j);
    return out;
}

// L (x) 1 and 1 (x) L with the (i k),(j l) -> (2i+k, 2j+l) layout.
OpMat4 first_factor(const OpMat2& l) {
    OpMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out[std::size_t(4 * (2 * i + k) + (2 * j + k))] = l(i, j);
    return out;
}
OpMat4 second_factor(const OpMat2& l) {
    OpMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int m = 0; m < 2; ++m) out[std::size_t(4 * (2 * i + k) + (2 * i + m))] = l(k, m);
    return out;
}

double masked(const SparseOp& op, const std::vector<char>& mask) {
    return op.shapeless() ? 0.0 : op.max_abs_in_columns(mask);
}

} // namespace

double commutation_residual(const FockRep& rep) {
    const auto mask = rep.safe_columns(1);
    const cplx eta = rep.qparam().eta();
    double worst = 0.0;
    for (std::size_t j = 0; j < rep.sites(); ++j)
        for (std::size_t k = 0; k < rep.sites(); ++k) {
            SparseOp d = commutator(rep.q(j), rep.r(k));
            if (j == k) d = d - eta * (rep.identity() - rep.q(j) * rep.r(j));
            worst = std::max({worst, masked(d, mask), masked(commutator(rep.q(j), rep.q(k)), mask),
                              masked(commutator(rep.r(j), rep.r(k)), mask)});
        }
    return worst;
}

double rll_residual(const FockRep& rep, cplx lambda, cplx nu) {
    const OperatorMonodromy m = operator_monodromy(rep);
    const OpMat4 r = lift(quantum_rmatrix(lambda, nu, rep.qparam().eta()), rep.identity());
    const OpMat4 l1 = first_factor(evaluate(m, lambda));
    const OpMat4 l2 = second_factor(evaluate(m, nu));
    const OpMat4 lhs = mul(mul(r, l1), l2);
    const OpMat4 rhs = mul(mul(l2, l1), r);
    const auto mask = rep.safe_columns(1);
    double worst = 0.0;
    for (std::size_t e = 0; e < 16; ++e) worst = std::max(worst, masked(lhs[e] - rhs[e], mask));
    return worst;
}

double transfer_commutator_residual(const FockRep& rep, cplx lambda, cplx nu) {
    const OpLaurent tr = operator_monodromy(rep).trace();
    return masked(commutator(tr.eval(lambda), tr.eval(nu)), rep.safe_columns(1));
}

SparseOp qdet_product(const FockRep& rep) {
    SparseOp d = rep.identity();
    for (std::size_t k = 0; k < rep.sites(); ++k) d = d * (rep.identity() - rep.r(k) * rep.q(k));
    return d;
}

SparseOp quantum_determinant(const FockRep& rep, const OperatorMonodromy& m, cplx lambda, int form) {
    const cplx s = rep.qparam().sqrt_alpha(), al = rep.qparam().alpha();
    const OpMat2 x = evaluate(m, lambda), y = evaluate(m, lambda * s);
    auto prod = [](const SparseOp& a, const SparseOp& b) { return a.shapeless() || b.shapeless() ? SparseOp() : a * b; };
    SparseOp f;
    switch (form) {
    case 0: f = prod(x.a11, y.a22) * (1.0 / s) - prod(x.a12, y.a21) * (1.0 / al); break;
    case 1: f = prod(x.a22, y.a11) * (1.0 / s) - prod(x.a21, y.a12); break;
    case 2: f = prod(y.a11, x.a22) * (1.0 / s) - prod(y.a21, x.a12); break;
    case 3: f = prod(y.a22, x.a11) * (1.0 / s) - prod(y.a12, x.a21) * (1.0 / al); break;
    default: throw DomainError("quantum_determinant: form must be 0..3");
    }
    return f * (1.0 / std::pow(s, int(rep.sites()) - 1));
}

QDetReport quantum_determinant_check(const FockRep& rep, cplx lambda) {
    if (lambda == cplx(0.0)) throw DomainError("quantum_determinant_check: lambda = 0");
    const OperatorMonodromy m = operator_monodromy(rep);
    const auto mask = rep.safe_columns(1);
    std::array<SparseOp, 4> forms;
    for (int i = 0; i < 4; ++i) forms[std::size_t(i)] = quantum_determinant(rep, m, lambda, i);
    const SparseOp prod = qdet_product(rep);
    QDetReport out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.to_product = std::max(out.to_product, masked(forms[i] - prod, mask));
        for (std::size_t j = i + 1; j < 4; ++j) out.pairwise = std::max(out.pairwise, masked(forms[i] - forms[j], mask));
    }
    return out;
}

double qdet_transfer_commutator_residual(const FockRep& rep, cplx lambda, cplx mu) {
    const OperatorMonodromy m = operator_monodromy(rep);
    const SparseOp delta = quantum_determinant(rep, m, lambda, 0);
    return masked(commutator(delta, m.trace().eval(mu)), rep.safe_columns(2));
}

bool preserves_occupation(const FockRep& rep, const SparseOp& op) {
    for (std::size_t i = 0; i < op.rows(); ++i)
        for (std::size_t p = op.row_ptr()[i]; p < op.row_ptr()[i + 1]; ++p)
            if (rep.total_occupation(i) != rep.total_occupation(op.col_idx()[p])) return false;
    return true;
}

double vector_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx x : v) s += std::norm(x);
    return std::sqrt(s);
}

std::vector<cplx> bethe_state(const FockRep& rep, std::span<const cplx> roots) {
    if (int(roots.size()) > rep.n_max() - 2)
        throw DomainError("bethe_state: need m <= n_max - 2 for headroom");
    const OperatorMonodromy m = operator_monodromy(rep);
    std::vector<cplx> v = rep.vacuum();
    for (const cplx lam : roots) {
        if (lam == cplx(0.0)) throw DomainError("bethe_state: zero root");
        v = m.a21.eval(lam).apply(v);
    }
    if (vector_norm(v) < 1e-300) throw DomainError("bethe_state: state vanishes (degenerate roots)");
    return v;
}

double eigen_residual(const FockRep& rep, std::span<const cplx> state, std::span<const cplx> roots, cplx nu) {
    const cplx t = transfer_eigenvalue(roots, rep.sites(), rep.qparam(), nu);
    const std::vector<cplx> tv = transfer_matrix(rep, nu).apply(state);
    double s = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) s += std::norm(tv[i] - t * state[i]);
    return std::sqrt(s) / vector_norm(state);
}

double qdet_eigen_residual(const FockRep& rep, std::span<const cplx> state, std::size_t m, cplx lambda) {
    const cplx expect = std::pow(rep.qparam().alpha(), int(m));
    const OperatorMonodromy mono = operator_monodromy(rep);
    const SparseOp ops[] = {qdet_product(rep), quantum_determinant(rep, mono, lambda, 0)};
    double worst = 0.0;
    for (const SparseOp& d : ops) {
        const std::vector<cplx> dv = d.apply(state);
        double s = 0.0;
        for (std::size_t i = 0; i < dv.size(); ++i) s += std::norm(dv[i] - expect * state[i]);
        worst = std::max(worst, std::sqrt(s) / vector_norm(state));
    }
    return worst;
}

} // namespace albaxter

#include <albaxter/bethe.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace albaxter {

std::vector<int> default_seed_selection(std::size_t N, std::size_t m) {
    if (m > N) throw DomainError("default_seed_selection: at most N roots have distinct squares");
    std::vector<int> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = int(k);
    return out;
}

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Log-form Bethe system in u_k = log(lambda_k):
//   F_k = sum_{j != k} phi_jk - 2N u_k + 2 pi i j_k,
// with phi_jk a continuous logarithm of
//   ratio_jk = (a lambda_j^2 - lambda_k^2) / (lambda_j^2 - a lambda_k^2),  a = 1 + eta.
// phi is unwrapped against a reference value carried along the path, so the
// branch integers fixed at the free point never change.
struct LogSystem {
    std::size_t N;
    std::vector<int> seeds;
    cplx a;                                  // 1 + eta(s)
    std::vector<std::vector<cplx>> phi_ref;  // reference branch per (j, k)

    std::size_t m() const { return seeds.size(); }

    static cplx unwrap(cplx principal, cplx ref) {
        const double turns = std::round((ref.imag() - principal.imag()) / kTwoPi);
        return principal + cplx(0.0, kTwoPi * turns);
    }

    cplx ratio(const std::vector<cplx>& u, std::size_t j, std::size_t k) const {
        const cplx lj2 = std::exp(2.0 * u[j]), lk2 = std::exp(2.0 * u[k]);
        return (a * lj2 - lk2) / (lj2 - a * lk2);
    }

    // false when a denominator or a pair of roots approaches coincidence
    bool regular(const std::vector<cplx>& u) const {
        for (std::size_t j = 0; j < m(); ++j)
            for (std::size_t k = 0; k < m(); ++k) {
                if (j == k) continue;
                const cplx lj2 = std::exp(2.0 * u[j]), lk2 = std::exp(2.0 * u[k]);
                if (std::abs(lj2 - a * lk2) < 1e-8 || std::abs(a * lj2 - lk2) < 1e-8) return false;
                if (std::abs(std::exp(u[j]) - std::exp(u[k])) < 1e-8) return false;
            }
        return true;
    }

    Eigen::VectorXcd residual(const std::vector<cplx>& u, std::vector<std::vector<cplx>>* phi_out = nullptr) const {
        Eigen::VectorXcd f(static_cast<Eigen::Index>(m()));
        for (std::size_t k = 0; k < m(); ++k) {
            cplx s = -2.0 * double(N) * u[k] + cplx(0.0, kTwoPi * seeds[k]);
            for (std::size_t j = 0; j < m(); ++j) {
                if (j == k) continue;
                const cplx phi = unwrap(std::log(ratio(u, j, k)), phi_ref[j][k]);
                if (phi_out) (*phi_out)[j][k] = phi;
                s += phi;
            }
            f(long(k)) = s;
        }
        return f;
    }

    Eigen::MatrixXcd jacobian(const std::vector<cplx>& u) const {
        const long mm = long(m());
        Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(mm, mm);
        for (std::size_t k = 0; k < m(); ++k) {
            jac(long(k), long(k)) = -2.0 * double(N);
            for (std::size_t j = 0; j < m(); ++j) {
                if (j == k) continue;
                const cplx lj2 = std::exp(2.0 * u[j]), lk2 = std::exp(2.0 * u[k]);
                const cplx top = a * lj2 - lk2, bot = lj2 - a * lk2;
                jac(long(k), long(j)) += 2.0 * a * lj2 / top - 2.0 * lj2 / bot;
                jac(long(k), long(k)) += -2.0 * lk2 / top + 2.0 * a * lk2 / bot;
            }
        }
        return jac;
    }
};

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Newton at fixed eta; true on convergence to tol within max_iter.
bool newton(LogSystem& sys, std::vector<cplx>& u, double tol, int max_iter, int& iters, double& res) {
    iters = 0;
    Eigen::VectorXcd f = sys.residual(u);
    res = max_abs(f);
    int polish = 2;
    while (iters < max_iter) {
        if (res < tol && polish-- <= 0) return true;
        if (!sys.regular(u)) return false;
        const Eigen::VectorXcd step = sys.jacobian(u).partialPivLu().solve(f);
        if (!step.allFinite()) return false;
        std::vector<cplx> trial(u);
        for (std::size_t k = 0; k < u.size(); ++k) trial[k] -= step(long(k));
        if (!sys.regular(trial)) return false;
        const Eigen::VectorXcd ft = sys.residual(trial);
        const double rt = max_abs(ft);
        ++iters;
        if (!std::isfinite(rt)) return false;
        if (rt > 2.0 * res && res > tol) return false;  // diverging: caller halves the step
        u = std::move(trial);
        f = ft;
        res = rt;
    }
    return res < tol;
}

} // namespace

BetheConfig solve_bethe(std::size_t N, std::size_t m, const QParam& a, std::vector<int> seed_indices,
                        const BetheOptions& opts) {
    if (N == 0) throw DomainError("solve_bethe: N must be >= 1");
    if (m == 0) throw DomainError("solve_bethe: m must be >= 1");
    if (seed_indices.size() != m) throw DomainError("solve_bethe: need exactly m seed indices");
    std::set<int> seen, squares;
    for (int j : seed_indices) {
        if (j < 0 || j >= int(2 * N)) throw DomainError("solve_bethe: seed index outside [0, 2N)");
        if (!seen.insert(j).second) throw DomainError("solve_bethe: coincident seed roots of unity");
        if (!squares.insert(j % int(N)).second)
            throw DomainError("solve_bethe: seeds with equal squares make the equations singular at eta = 0");
    }

    BetheConfig cfg;
    cfg.N = N;
    cfg.m = m;
    cfg.alpha = a;
    cfg.seed_indices = seed_indices;

    std::vector<cplx> u(m);
    for (std::size_t k = 0; k < m; ++k) u[k] = cplx(0.0, kPi * seed_indices[k] / double(N));

    if (m == 1) {
        // Empty product: lambda^{2N} = 1 for every eta, the seed is exact.
        cfg.roots = {std::polar(1.0, kPi * seed_indices[0] / double(N))};
        cfg.homotopy_path.push_back({1.0, 1.0, 0, 0.0});
        cfg.residual = bethe_residuals(cfg)[0];
        return cfg;
    }

    LogSystem sys{N, seed_indices, 1.0, std::vector<std::vector<cplx>>(m, std::vector<cplx>(m, 0.0))};
    const cplx eta = a.eta();
    double s = 0.0, step = opts.initial_step;
    while (s < 1.0) {
        const double s_next = std::min(1.0, s + step);
        const bool last = s_next == 1.0;
        LogSystem trial_sys = sys;
        trial_sys.a = 1.0 + s_next * eta;
        std::vector<cplx> trial_u = u;
        int iters = 0;
        double res = 0.0;
        const double tol = last ? opts.tol * 1e-2 : std::max(opts.tol, 1e-10);
        if (newton(trial_sys, trial_u, tol, opts.max_newton, iters, res)) {
            std::vector<std::vector<cplx>> phi(m, std::vector<cplx>(m, 0.0));
            trial_sys.residual(trial_u, &phi);
            trial_sys.phi_ref = phi;
            sys = trial_sys;
            u = trial_u;
            s = s_next;
            cfg.homotopy_path.push_back({s, step, iters, res});
            step = std::min(0.25, step * 1.5);
        } else {
            step *= 0.5;
            if (step < opts.min_step)
                throw ConvergenceError("solve_bethe: homotopy step fell below " + std::to_string(opts.min_step) +
                                       " at eta fraction " + std::to_string(s));
        }
    }

    cfg.roots.resize(m);
    for (std::size_t k = 0; k < m; ++k) cfg.roots[k] = std::exp(u[k]);
    const auto res = bethe_residuals(cfg);
    cfg.residual = *std::max_element(res.begin(), res.end());
    if (!(cfg.residual < opts.tol))
        throw ConvergenceError("solve_bethe: final residual " + std::to_string(cfg.residual) + " above tolerance");
    return cfg;
}

BetheConfig solve_bethe(std::size_t N, std::size_t m, const QParam& a, const BetheOptions& opts) {
    return solve_bethe(N, m, a, default_seed_selection(N, m), opts);
}

std::vector<double> bethe_residuals(std::span<const cplx> roots, std::size_t N, const QParam& a) {
    const cplx one_eta = 1.0 + a.eta();
    std::vector<double> out(roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const cplx lk2 = roots[k] * roots[k];
        cplx prod = 1.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == k) continue;
            const cplx lj2 = roots[j] * roots[j];
            prod *= (lj2 * one_eta - lk2) / (lj2 - one_eta * lk2);
        }
        out[k] = std::abs(std::log(prod / std::pow(roots[k], int(2 * N))));
    }
    return out;
}

std::vector<double> bethe_residuals(const BetheConfig& cfg) { return bethe_residuals(cfg.roots, cfg.N, cfg.alpha); }

cplx transfer_eigenvalue(std::span<const cplx> roots, std::size_t N, const QParam& a, cplx nu) {
    if (nu == cplx(0.0)) throw DomainError("transfer_eigenvalue: nu = 0");
    const cplx eta = a.eta(), nu2 = nu * nu;
    cplx p1 = 1.0, p2 = 1.0;
    for (const cplx lam : roots) {
        const cplx l2 = lam * lam;
        if (std::abs(l2 - nu2) < 1e-14 * std::max(1.0, std::abs(nu2)))
            throw DomainError("transfer_eigenvalue: nu^2 coincides with a root");
        p1 *= 1.0 - eta * nu2 / (l2 - nu2);
        p2 *= 1.0 + eta * l2 / (l2 - nu2);
    }
    const cplx norm = std::pow(1.0 + eta, -int(roots.size()));
    return norm * (std::pow(nu, int(N)) * p1 + std::pow(nu, -int(N)) * p2);
}

cplx transfer_eigenvalue(const BetheConfig& cfg, cplx nu) { return transfer_eigenvalue(cfg.roots, cfg.N, cfg.alpha, nu); }

namespace {

// Dense polynomial in x, coefficient i multiplies x^i.
using Poly = std::vector<cplx>;

Poly psi_in_x(std::span<const cplx> roots, cplx scale) {
    // prod_j (scale x - lambda_j^2)
    Poly p{1.0};
    for (const cplx lam : roots) {
        Poly next(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += scale * p[i];
            next[i] -= lam * lam * p[i];
        }
        p = std::move(next);
    }
    return p;
}

cplx horner(const Poly& p, cplx x) {
    cplx acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace

LaurentPoly psi_poly(std::span<const cplx> roots) {
    const Poly p = psi_in_x(roots, 1.0);
    LaurentPoly::storage terms;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != cplx(0.0)) terms.emplace(int(2 * i), p[i]);
    return LaurentPoly(std::move(terms));
}

LaurentPoly transfer_polynomial(std::span<const cplx> roots, std::size_t N, const QParam& a, double* remainder_norm) {
    const std::size_t m = roots.size();
    const cplx al = a.alpha();
    const cplx delta = std::pow(al, int(m));
    // P(x) = delta x^N psi(x/alpha) + psi(alpha x)
    const Poly up = psi_in_x(roots, 1.0 / al), down = psi_in_x(roots, al);
    Poly num(N + m + 1, 0.0);
    for (std::size_t i = 0; i < up.size(); ++i) num[i + N] += delta * up[i];
    for (std::size_t i = 0; i < down.size(); ++i) num[i] += down[i];
    // Long division by the monic psi(x).
    const Poly den = psi_in_x(roots, 1.0);
    Poly quot(N + 1, 0.0);
    for (std::size_t d = num.size(); d-- > m;) {
        const cplx c = num[d];
        quot[d - m] = c;
        for (std::size_t i = 0; i <= m; ++i) num[d - m + i] -= c * den[i];
    }
    if (remainder_norm) {
        double rn = 0.0;
        for (std::size_t i = 0; i < m; ++i) rn = std::max(rn, std::abs(num[i]));
        *remainder_norm = rn;
    }
    LaurentPoly::storage terms;
    for (std::size_t i = 0; i < quot.size(); ++i)
        if (quot[i] != cplx(0.0)) terms.emplace(int(2 * i) - int(N), quot[i]);
    return LaurentPoly(std::move(terms));
}

double baxter_qdiff_residual(std::span<const cplx> roots, std::size_t N, const QParam& a,
                             std::span<const cplx> nu_samples) {
    const std::size_t m = roots.size();
    const cplx s = a.sqrt_alpha();
    const cplx delta = std::pow(a.alpha(), int(m));
    const LaurentPoly t = transfer_polynomial(roots, N, a);
    const Poly psi = psi_in_x(roots, 1.0);
    auto psi_at = [&](cplx nu) { return horner(psi, nu * nu); };
    auto psi_hat_at = [&](cplx nu) { return psi_at(nu) * std::pow(nu, -2 * int(m)); };
    double worst = 0.0;
    for (const cplx nu : nu_samples) {
        if (nu == cplx(0.0)) throw DomainError("baxter_qdiff_residual: nu = 0");
        const cplx tv = t.eval(nu);
        const cplx nun = std::pow(nu, int(N));
        const cplx a1 = delta * nun * psi_at(nu / s), b1 = psi_at(nu * s) / nun;
        const cplx a2 = nun * psi_hat_at(nu / s), b2 = delta * psi_hat_at(nu * s) / nun;
        worst = std::max(worst, std::abs(tv * psi_at(nu) - a1 - b1) / std::max(1.0, std::abs(a1) + std::abs(b1)));
        worst = std::max(worst, std::abs(tv * psi_hat_at(nu) - a2 - b2) / std::max(1.0, std::abs(a2) + std::abs(b2)));
    }
    return worst;
}

SemiclassicalSplit semiclassical_split(std::span<const cplx> roots, std::size_t N, const QParam& a, cplx mu) {
    if (mu == cplx(0.0)) throw DomainError("semiclassical_split: mu = 0");
    const cplx eta = a.eta(), mu2 = mu * mu;
    cplx p1 = 1.0, p2 = 1.0;
    for (const cplx lam : roots) {
        const cplx l2 = lam * lam;
        if (std::abs(l2 - mu2) < 1e-14 * std::max(1.0, std::abs(mu2)))
            throw DomainError("semiclassical_split: mu^2 coincides with a root");
        p1 *= 1.0 - eta * mu2 / (l2 - mu2);
        p2 *= 1.0 + eta * l2 / (l2 - mu2);
    }
    const cplx norm = std::pow(1.0 + eta, -int(roots.size()));
    SemiclassicalSplit out;
    out.branch_plus = norm * std::pow(mu, int(N)) * p1;
    out.branch_minus = norm * std::pow(mu, -int(N)) * p2;
    out.sum_residual = std::abs(out.branch_plus + out.branch_minus - transfer_eigenvalue(roots, N, a, mu));
    out.product_mismatch = std::abs(out.branch_plus * out.branch_minus - std::pow(a.alpha(), int(roots.size())));
    return out;
}

} // namespace albaxter

#include <albaxter/backlund.hpp>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace albaxter {

namespace {

// First map line in polynomial form:
//   f_k = mu^2 q_k t_k t_{k-1} - mu^2 t_k - r_k + t_{k-1}
// (multiply line 1 through by mu^2 t_k t_{k-1} and expand).
struct LineOne {
    std::span<const cplx> q, r;
    cplx mu2;

    std::size_t n() const { return q.size(); }

    cplx value(const std::vector<cplx>& t, std::size_t k) const {
        const cplx tm = t[wrap(long(k) - 1, n())];
        return mu2 * q[k] * t[k] * tm - mu2 * t[k] - r[k] + tm;
    }
    double scale(const std::vector<cplx>& t, std::size_t k) const {
        const cplx tm = t[wrap(long(k) - 1, n())];
        return std::abs(mu2 * q[k] * t[k] * tm) + std::abs(mu2 * t[k]) + std::abs(r[k]) + std::abs(tm);
    }
    double rel_residual(const std::vector<cplx>& t) const {
        double worst = 0.0;
        for (std::size_t k = 0; k < n(); ++k) {
            const double s = scale(t, k);
            worst = std::max(worst, std::abs(value(t, k)) / (s > 0.0 ? s : 1.0));
        }
        return worst;
    }
    double norm(const std::vector<cplx>& t) const {
        double s = 0.0;
        for (std::size_t k = 0; k < n(); ++k) s += std::norm(value(t, k));
        return std::sqrt(s);
    }
    Eigen::MatrixXcd jacobian(const std::vector<cplx>& t) const {
        const std::size_t nn = n();
        Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(long(nn), long(nn));
        for (std::size_t k = 0; k < nn; ++k) {
            const std::size_t km = wrap(long(k) - 1, nn);
            j(long(k), long(k)) += mu2 * q[k] * t[km] - mu2;
            j(long(k), long(km)) += mu2 * q[k] * t[k] + 1.0;
        }
        return j;
    }
};

// Damped Newton at fixed mu. Returns iterations used; t is updated in place.
int newton_stage(const LineOne& eq, std::vector<cplx>& t, double tol, int max_iter, bool polish) {
    const std::size_t n = eq.n();
    int it = 0;
    int polish_left = polish ? 3 : 0;
    for (; it < max_iter; ++it) {
        const double res = eq.rel_residual(t);
        if (res < tol) {
            if (polish_left-- <= 0) return it;
        }
        Eigen::VectorXcd f(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) f(long(k)) = eq.value(t, k);
        const Eigen::MatrixXcd j = eq.jacobian(t);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(j);
        const double cond_guard = std::abs(lu.determinant());
        if (!std::isfinite(cond_guard) || cond_guard == 0.0) throw ConvergenceError("bt_apply: singular Newton Jacobian");
        const Eigen::VectorXcd step = lu.solve(f);

        const double f0 = eq.norm(t);
        double damp = 1.0;
        std::vector<cplx> trial(n);
        for (int h = 0; h < 30; ++h) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = t[k] - damp * step(long(k));
            const double f1 = eq.norm(trial);
            if (std::isfinite(f1) && (f1 < f0 || f0 == 0.0 || res < tol)) break;
            damp *= 0.5;
        }
        double step_size = 0.0, t_size = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            step_size = std::max(step_size, std::abs(trial[k] - t[k]));
            t_size = std::max(t_size, std::abs(t[k]));
        }
        t = trial;
        if (res < tol && step_size <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t_size))
            return it + 1;
    }
    if (eq.rel_residual(t) < tol) return it;
    throw ConvergenceError("bt_apply: Newton did not converge in " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(eq.rel_residual(t)) + ")");
}

double rel_gap(cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

} // namespace

double bt_map_residual(const ChainState& s, const ChainState& t, cplx mu) {
    const long n = long(s.size());
    const cplx mu2 = mu * mu;
    double worst = 0.0;
    for (long k = 0; k < n; ++k) {
        const cplx rt = t.r(k), rtm = t.r(k - 1), rtp = t.r(k + 1);
        const cplx line1 = (rtm - s.r(k)) * (rt * mu2 + s.r(k)) / (mu2 * rt * rtm);
        const cplx line2 = (rt - s.r(k + 1)) * (rt * mu2 + s.r(k)) / (mu2 * rtp * rtm);
        worst = std::max(worst, rel_gap(1.0 - s.q(k) * s.r(k), line1));
        worst = std::max(worst, rel_gap(1.0 - t.q(k) * t.r(k), line2));
    }
    return worst;
}

BTResult bt_apply(const ChainState& state, cplx mu, const BTOptions& opts) {
    if (mu == cplx(0.0) || !std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
        throw DomainError("bt_apply: mu must be finite and nonzero");
    if (!(opts.tol > 0.0) || opts.max_iter < 1 || !(opts.mu_seed > 0.0) || !(opts.max_stage_ratio > 1.0))
        throw DomainError("bt_apply: invalid solver options");
    const std::size_t n = state.size();

    std::vector<cplx> t(n);
    std::vector<cplx> stages;
    if (opts.initial_guess) {
        if (opts.initial_guess->size() != n) throw DomainError("bt_apply: initial guess has wrong size");
        t = *opts.initial_guess;
        stages.push_back(mu);
    } else {
        for (std::size_t k = 0; k < n; ++k) t[k] = state.r(long(k) + 1);
        const double amu = std::abs(mu);
        if (amu <= opts.mu_seed) {
            stages.push_back(mu);
        } else {
            const int count = int(std::ceil(std::log(amu / opts.mu_seed) / std::log(opts.max_stage_ratio)));
            const cplx phase = mu / amu;
            for (int j = 0; j <= count; ++j) {
                const double frac = double(j) / double(count);
                stages.push_back(phase * opts.mu_seed * std::pow(amu / opts.mu_seed, frac));
            }
            stages.back() = mu;
        }
    }

    int iters = 0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const bool last = s + 1 == stages.size();
        const LineOne eq{state.q(), state.r(), stages[s] * stages[s]};
        try {
            iters += newton_stage(eq, t, last ? opts.tol : std::max(opts.tol, 1e-9), opts.max_iter, last);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string(e.what()) + " at continuation stage " + std::to_string(s) + "/" +
                                   std::to_string(stages.size() - 1) + ", |mu| = " +
                                   std::to_string(std::abs(stages[s])));
        }
    }

    const cplx mu2 = mu * mu;
    std::vector<cplx> qt(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx rt = t[k], rtm = t[wrap(long(k) - 1, n)], rtp = t[wrap(long(k) + 1, n)];
        if (std::abs(rt) < 1e-14 || std::abs(rtm) < 1e-14 || std::abs(rtp) < 1e-14)
            throw ConvergenceError("bt_apply: vanishing denominator mu^2 r~_k r~_{k-1}");
        const cplx rhs = (rt - state.r(long(k) + 1)) * (rt * mu2 + state.r(long(k))) / (mu2 * rtp * rtm);
        qt[k] = (1.0 - rhs) / rt;
    }

    ChainState target = [&] {
        try {
            return ChainState(qt, t);
        } catch (const DomainError& e) {
            throw DomainError(std::string("bt_apply: degenerate target state: ") + e.what());
        }
    }();

    BTResult out{mu, state, std::move(target), {}, iters, 0.0};
    out.gamma.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.gamma[k] = mu * (1.0 - state.q(long(k)) * t[wrap(long(k) - 1, n)]);
    out.residual = bt_map_residual(out.source, out.target, mu);
    return out;
}

CMat2 dressing_matrix(const BTResult& bt, long k, cplx lambda) {
    const cplx b = bt.source.q(k);
    const cplx c = bt.target.r(k - 1);
    return {lambda * lambda - bt.mu * bt.mu * (1.0 - b * c), lambda * b, lambda * c, 1.0};
}

double intertwining_residual(const BTResult& bt, cplx lambda) {
    double worst = 0.0;
    const long n = long(bt.source.size());
    for (long k = 0; k < n; ++k) {
        const CMat2 lt = lax_at(bt.target.q(k), bt.target.r(k), lambda);
        const CMat2 l = lax_at(bt.source.q(k), bt.source.r(k), lambda);
        worst = std::max(worst, max_abs(lt * dressing_matrix(bt, k, lambda) - dressing_matrix(bt, k + 1, lambda) * l));
    }
    return worst;
}

std::array<cplx, 2> kernel_vector(const BTResult& bt, long k) { return {1.0, -bt.mu * bt.target.r(k - 1)}; }

SpectralityReport spectrality(const BTResult& bt) {
    const long n = long(bt.source.size());
    SpectralityReport rep;
    rep.gamma = 1.0;
    for (long k = 0; k < n; ++k) {
        const auto w = kernel_vector(bt, k);
        const auto wn = kernel_vector(bt, k + 1);
        const double wn2 = std::norm(wn[0]) + std::norm(wn[1]);
        if (wn2 < 1e-300) throw DomainError("spectrality: kernel vector vanishes");
        const CMat2 l = lax_at(bt.source.q(k), bt.source.r(k), bt.mu);
        const cplx v0 = l.a11 * w[0] + l.a12 * w[1];
        const cplx v1 = l.a21 * w[0] + l.a22 * w[1];
        const cplx g = (std::conj(wn[0]) * v0 + std::conj(wn[1]) * v1) / wn2;
        rep.collinearity = std::max({rep.collinearity, std::abs(v0 - g * wn[0]), std::abs(v1 - g * wn[1])});
        rep.gamma_k.push_back(g);
        rep.gamma *= g;
    }
    if (rep.gamma == cplx(0.0)) throw DomainError("spectrality: gamma vanishes");
    const CMat2 mono = monodromy_at(bt.source, bt.mu);
    const cplx det = conserved_quantities(bt.source).det;
    rep.trace_residual = std::abs(mono.trace() - (det / rep.gamma + rep.gamma));
    return rep;
}

ClassicalBaxterReport classical_baxter_check(const BTResult& bt) {
    const long n = long(bt.source.size());
    const cplx mu = bt.mu, mu2 = mu * mu;
    const cplx det = conserved_quantities(bt.source).det;
    if (std::abs(det) < 1e-300) throw DomainError("classical_baxter_check: det L(mu) vanishes");
    cplx log_sum = 0.0;
    for (long k = 0; k < n; ++k) {
        const cplx rt = bt.target.r(k);
        const cplx arg = (mu2 * rt + bt.source.r(k)) / (mu2 * rt);
        if (std::abs(arg) < 1e-300 || !std::isfinite(std::abs(arg)))
            throw DomainError("classical_baxter_check: vanishing logarithm argument");
        log_sum += std::log(arg);
    }
    ClassicalBaxterReport rep;
    rep.phi = 2.0 / mu * log_sum;
    const cplx up = std::pow(mu, int(n)) * std::exp(log_sum);  // mu^N e^{mu phi/2}
    const cplx down = det * std::pow(mu, -int(n)) * std::exp(-log_sum);
    rep.residual = std::abs(monodromy_at(bt.source, mu).trace() - up - down);
    const SpectralityReport sp = spectrality(bt);
    rep.consistency = std::abs(up - det / sp.gamma);
    return rep;
}

// --- Generating function ----------------------------------------------------

namespace {

template <unsigned Points>
double generating_function_impl(std::span<const double> r, std::span<const double> rt, double mu, double tol) {
    const std::size_t n = r.size();
    if (rt.size() != n || n == 0) throw DomainError("generating_function: size mismatch");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw BranchError("generating_function: mu must be real and positive");
    const double mu2 = mu * mu;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(r[k] > 0.0) || !(rt[k] > 0.0)) throw BranchError("generating_function: r and r~ must be positive");
        if (!(rt[k] > r[wrap(long(k) + 1, n)]))
            throw BranchError("generating_function: ln(z - r_{k+1}) leaves the positive axis (need r~_k > r_{k+1})");
    }
    using boost::math::quadrature::gauss_kronrod;
    double f = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double rn = r[wrap(long(k) + 1, n)];
        const double rk = r[k];
        // Both paths stay on z > 0 and keep the log arguments positive at the
        // endpoints; they are linear in z, hence positive throughout.
        auto g1 = [rn](double z) { return std::log(z - rn) / z; };
        auto g2 = [rk, mu2](double z) { return std::log(mu2 * z + rk) / z; };
        f += gauss_kronrod<double, Points>::integrate(g1, rn + 1.0, rt[k], 15, tol);
        f += gauss_kronrod<double, Points>::integrate(g2, 1.0 / mu2, rt[k], 15, tol);
        f -= std::log(rt[k]) * std::log(mu2 * rt[wrap(long(k) - 1, n)]);
        f -= 2.0 * std::log(mu) * std::log(mu);
    }
    return f;
}

bool is_real(cplx z) { return z.imag() == 0.0; }

} // namespace

double generating_function(std::span<const double> r, std::span<const double> rt, double mu,
                           const GeneratingFunctionOptions& opts) {
    return generating_function_impl<15>(r, rt, mu, opts.quad_tol);
}

double generating_function_refined(std::span<const double> r, std::span<const double> rt, double mu,
                                   const GeneratingFunctionOptions& opts) {
    return generating_function_impl<31>(r, rt, mu, opts.quad_tol);
}

GeneratingFunctionReport generating_function_check(const BTResult& bt, const GeneratingFunctionOptions& opts) {
    const std::size_t n = bt.source.size();
    if (!is_real(bt.mu) || !(bt.mu.real() > 0.0)) throw BranchError("generating_function_check: mu must be real > 0");
    std::vector<double> r(n), rt(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long kk = long(k);
        const cplx vals[] = {bt.source.q(kk), bt.source.r(kk), bt.target.q(kk), bt.target.r(kk)};
        for (const cplx v : vals)
            if (!is_real(v)) throw BranchError("generating_function_check: data must be real");
        r[k] = bt.source.r(kk).real();
        rt[k] = bt.target.r(kk).real();
        if (!(1.0 - (bt.source.q(kk) * bt.source.r(kk)).real() > 0.0) ||
            !(1.0 - (bt.target.q(kk) * bt.target.r(kk)).real() > 0.0))
            throw BranchError("generating_function_check: need 1 - q r > 0 before and after the map");
    }
    const double mu = bt.mu.real();
    const double h = opts.fd_step;

    GeneratingFunctionReport rep;
    rep.F = generating_function(r, rt, mu, opts);
    rep.refinement_delta = std::abs(rep.F - generating_function_refined(r, rt, mu, opts));

    for (std::size_t k = 0; k < n; ++k) {
        const long kk = long(k);
        auto rp = rt, rm = rt;
        rp[k] += h;
        rm[k] -= h;
        const double d_rt = (generating_function(r, rp, mu, opts) - generating_function(r, rm, mu, opts)) / (2 * h);
        const double want_rt = std::log(1.0 - (bt.target.q(kk) * bt.target.r(kk)).real()) / rt[k];
        rep.grad_residual_rtilde = std::max(rep.grad_residual_rtilde, std::abs(d_rt - want_rt));

        auto sp = r, sm = r;
        sp[k] += h;
        sm[k] -= h;
        const double d_r = (generating_function(sp, rt, mu, opts) - generating_function(sm, rt, mu, opts)) / (2 * h);
        const double want_r = -std::log(1.0 - (bt.source.q(kk) * bt.source.r(kk)).real()) / r[k];
        rep.grad_residual_r = std::max(rep.grad_residual_r, std::abs(d_r - want_r));
    }

    const double d_mu =
        (generating_function(r, rt, mu + h, opts) - generating_function(r, rt, mu - h, opts)) / (2 * h);
    double phi = 0.0;
    for (std::size_t k = 0; k < n; ++k) phi += std::log((mu * mu * rt[k] + r[k]) / (mu * mu * rt[k]));
    phi *= 2.0 / mu;
    rep.phi_residual = std::abs(d_mu - phi);
    return rep;
}

// --- Canonicity ---------------------------------------------------------------

CanonicityReport canonicity_check(const ChainState& state, cplx mu, double step, const BTOptions& opts) {
    if (!(step > 0.0)) throw DomainError("canonicity_check: step must be positive");
    const std::size_t n = state.size();
    const BTResult base = bt_apply(state, mu, opts);
    BTOptions warm = opts;
    warm.initial_guess = std::vector<cplx>(base.target.r().begin(), base.target.r().end());

    // jac(out, in): out = (q~_0..q~_{N-1}, r~_0..r~_{N-1}), in = (q.., r..).
    Eigen::MatrixXcd jac(long(2 * n), long(2 * n));
    auto image = [&](std::vector<cplx> q, std::vector<cplx> r) {
        const BTResult b = bt_apply(ChainState(std::move(q), std::move(r)), mu, warm);
        Eigen::VectorXcd v(long(2 * n));
        for (std::size_t k = 0; k < n; ++k) {
            v(long(k)) = b.target.q(long(k));
            v(long(n + k)) = b.target.r(long(k));
        }
        return v;
    };
    const std::vector<cplx> q0(state.q().begin(), state.q().end()), r0(state.r().begin(), state.r().end());
    for (std::size_t i = 0; i < 2 * n; ++i) {
        auto qp = q0, rp = r0, qm = q0, rm = r0;
        if (i < n) {
            qp[i] += step;
            qm[i] -= step;
        } else {
            rp[i - n] += step;
            rm[i - n] -= step;
        }
        jac.col(long(i)) = (image(qp, rp) - image(qm, rm)) / (2.0 * step);
    }

    auto bracket = [&](long a, long b) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const long kq = long(k), kr = long(n + k);
            s += (jac(a, kq) * jac(b, kr) - jac(a, kr) * jac(b, kq)) * (1.0 - q0[k] * r0[k]);
        }
        return s;
    };

    CanonicityReport rep;
    rep.step = step;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx expect = k == j ? 1.0 - base.target.q(long(k)) * base.target.r(long(k)) : cplx(0.0);
            rep.deviation = std::max(rep.deviation, std::abs(bracket(long(k), long(n + j)) - expect));
            rep.deviation = std::max(rep.deviation, std::abs(bracket(long(k), long(j))));
            rep.deviation = std::max(rep.deviation, std::abs(bracket(long(n + k), long(n + j))));
        }
    }
    return rep;
}

} // namespace albaxter

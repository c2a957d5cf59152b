#include <albaxter/backlund.hpp>
#include <albaxter/bethe.hpp>
#include <albaxter/classical.hpp>
#include <albaxter/cli.hpp>
#include <albaxter/fock.hpp>
#include <albaxter/funspace.hpp>
#include <albaxter/qcalc.hpp>
#include <albaxter/sampling.hpp>

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <limits>

namespace albaxter::cli {

using nlohmann::json;

namespace {

struct Outcome {
    Outcome(double r, json p, json art = nullptr) : residual(r), params(std::move(p)), artifact(std::move(art)) {}
    double residual;
    json params;
    json artifact;  ///< merged into Report::artifacts under the check id when non-null
};

struct CheckDef {
    std::string id;
    double tolerance;
    bool exact;  ///< tolerance may be replaced by tolerances.residual
    std::function<Outcome(Rng&)> run;
};

double lower_is_better_max(double a, double b) { return std::isnan(b) ? b : std::max(a, b); }

// lambda, nu on an annulus, with |lambda^2 - nu^2| > 0.1
std::pair<cplx, cplx> spectral_pair(Rng& rng) {
    for (;;) {
        const cplx l = rng.complex_annulus(0.5, 1.5), n = rng.complex_annulus(0.5, 1.5);
        if (std::abs(l * l - n * n) > 0.1) return {l, n};
    }
}

FuncExpr random_polynomial(Rng& rng, std::size_t var, int max_degree) {
    const FuncExpr r = FuncExpr::variable(var);
    FuncExpr p = FuncExpr::constant(rng.uniform(-1.0, 1.0));
    FuncExpr power = FuncExpr::constant(1.0);
    for (int d = 1; d <= max_degree; ++d) {
        power = power * r;
        p = p + FuncExpr::constant(rng.uniform(-1.0, 1.0)) * power;
    }
    return p;
}

std::vector<cplx> uniform_vector(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// --- classical --------------------------------------------------------------

void classical_checks(const RunConfig& c, std::vector<CheckDef>& out) {
    const std::size_t N = std::size_t(c.N);
    const int states = c.sample_counts.states, pairs = c.sample_counts.lambdas;
    const json base{{"N", c.N}, {"states", states}};

    out.push_back({"classical.rmatrix_relation", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int s = 0; s < states; ++s) {
                           const ChainState st = random_state(N, rng);
                           for (int p = 0; p < pairs; ++p) {
                               const auto [l, n] = spectral_pair(rng);
                               w = std::max(w, rmatrix_relation_residual(st, l, n));
                           }
                       }
                       json p = base;
                       p["pairs"] = pairs;
                       return Outcome{w, p};
                   }});
    out.push_back({"classical.involution", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int s = 0; s < states; ++s) {
                           const ChainState st = random_state(N, rng);
                           std::vector<Observable> obs{observable_det()};
                           for (std::size_t i = 1; i < N; ++i) obs.push_back(observable_H(i));
                           for (std::size_t i = 0; i < obs.size(); ++i)
                               for (std::size_t j = i + 1; j < obs.size(); ++j)
                                   w = std::max(w, std::abs(poisson_bracket(obs[i], obs[j], st)));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"classical.trace_involution", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int s = 0; s < states; ++s) {
                           const ChainState st = random_state(N, rng);
                           for (int p = 0; p < pairs; ++p) {
                               const auto [l, n] = spectral_pair(rng);
                               w = std::max(w, std::abs(poisson_bracket(observable_trace(l), observable_trace(n), st)));
                           }
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"classical.conserved_structure", 1e-12, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int s = 0; s < states; ++s) {
                           const ChainState st = random_state(N, rng);
                           const ConservedSet cs = conserved_quantities(st);
                           w = std::max({w, std::abs(cs.H.front() - 1.0), std::abs(cs.H.back() - 1.0)});
                           cplx det = 1.0;
                           for (std::size_t k = 0; k < N; ++k) det *= 1.0 - st.q(long(k)) * st.r(long(k));
                           w = std::max(w, std::abs(cs.det - det));
                           for (long shift = 1; shift < long(N); ++shift) {
                               const ConservedSet rot = conserved_quantities(st.rotated(shift));
                               for (std::size_t i = 0; i < cs.H.size(); ++i)
                                   w = std::max(w, std::abs(rot.H[i] - cs.H[i]));
                           }
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"classical.rk4_order", 0.5, false, [=](Rng& rng) {
                       // Global error at T = 1 for dt and dt/2 against a dt/16 reference;
                       // residual = |observed order - 4|. (Invariant drift cannot serve here:
                       // for N = 1 RK4 keeps them to roundoff.)
                       const ChainState st0 = random_state(N, rng);
                       auto run = [&](int steps) {
                           ChainState s = st0;
                           for (int i = 0; i < steps; ++i) s = rk4_step(s, 1.0 / steps);
                           return s;
                       };
                       const ChainState ref = run(400);
                       auto error = [&](int steps) {
                           const ChainState s = run(steps);
                           double e = 0.0;
                           for (long k = 0; k < long(N); ++k)
                               e = std::max({e, std::abs(s.q(k) - ref.q(k)), std::abs(s.r(k) - ref.r(k))});
                           return e;
                       };
                       const double e1 = error(25), e2 = error(50);
                       const double order = std::log2(e1 / e2);
                       json p = base;
                       p["errors"] = {e1, e2};
                       p["order"] = order;
                       return Outcome{std::abs(order - 4.0), p};
                   }});
}

// --- Backlund ---------------------------------------------------------------

void bt_checks(const RunConfig& c, std::vector<CheckDef>& out) {
    const std::size_t N = std::size_t(c.N);
    const int states = c.sample_counts.states, lambdas = c.sample_counts.lambdas;
    const cplx mu = c.mu;
    BTOptions opts;
    opts.tol = c.tolerances.newton;
    const json base{{"N", c.N}, {"mu", complex_to_json(mu)}, {"states", states}};

    // Runs f on `states` converged BTs drawn from rng and returns the max.
    auto over_bts = [=](auto f) {
        return [=](Rng& rng) {
            double w = 0.0;
            int iters = 0;
            for (int s = 0; s < states; ++s) {
                const BTResult bt = bt_apply(random_state(N, rng), mu, opts);
                iters = std::max(iters, bt.newton_iters);
                w = lower_is_better_max(w, f(bt, rng));
            }
            json p = base;
            p["max_newton_iters"] = iters;
            return Outcome{w, p};
        };
    };

    out.push_back({"bt.map_residual", c.tolerances.newton, false,
                   over_bts([](const BTResult& bt, Rng&) { return bt.residual; })});
    out.push_back({"bt.conservation", 1e-10, true, over_bts([](const BTResult& bt, Rng&) {
                       const ConservedSet a = conserved_quantities(bt.source), b = conserved_quantities(bt.target);
                       double w = rel_diff(b.det, a.det);
                       for (std::size_t i = 0; i < a.H.size(); ++i) w = std::max(w, rel_diff(b.H[i], a.H[i]));
                       return w;
                   })});
    out.push_back({"bt.intertwining", 1e-10, true, over_bts([=](const BTResult& bt, Rng& rng) {
                       double w = intertwining_residual(bt, bt.mu);
                       for (int l = 0; l < lambdas; ++l)
                           w = std::max(w, intertwining_residual(bt, rng.complex_annulus(0.3, 2.0)));
                       return w;
                   })});
    out.push_back({"bt.spectrality", 1e-10, true,
                   over_bts([](const BTResult& bt, Rng&) { return spectrality(bt).collinearity; })});
    out.push_back({"bt.trace_formula", 1e-10, true,
                   over_bts([](const BTResult& bt, Rng&) { return spectrality(bt).trace_residual; })});
    out.push_back({"bt.eigenvalues", 1e-10, true, over_bts([](const BTResult& bt, Rng&) {
                       const SpectralityReport sp = spectrality(bt);
                       const CMat2 m = monodromy_at(bt.source, bt.mu);
                       Eigen::Matrix2cd e;
                       e << m.a11, m.a12, m.a21, m.a22;
                       const Eigen::Vector2cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(e, false).eigenvalues();
                       const cplx g = sp.gamma, h = conserved_quantities(bt.source).det / sp.gamma;
                       const double straight = std::max(std::abs(ev(0) - g), std::abs(ev(1) - h));
                       const double crossed = std::max(std::abs(ev(0) - h), std::abs(ev(1) - g));
                       return std::min(straight, crossed);
                   })});
    out.push_back({"bt.classical_baxter", 1e-10, true, over_bts([](const BTResult& bt, Rng&) {
                       const ClassicalBaxterReport r = classical_baxter_check(bt);
                       return std::max(r.residual, r.consistency);
                   })});
    out.push_back({"bt.commuting_maps", 1e-9, true, over_bts([=](const BTResult& bt, Rng&) {
                       const cplx mu2 = mu * 0.7;
                       const BTResult ab = bt_apply(bt.target, mu2, opts);
                       const BTResult ba = bt_apply(bt_apply(bt.source, mu2, opts).target, mu, opts);
                       const ConservedSet x = conserved_quantities(ab.target), y = conserved_quantities(ba.target);
                       double w = rel_diff(x.det, y.det);
                       for (std::size_t i = 0; i < x.H.size(); ++i) w = std::max(w, rel_diff(x.H[i], y.H[i]));
                       return w;
                   })});
    out.push_back({"bt.canonicity", 1e-5, false, [=](Rng& rng) {
                       double w = 0.0;
                       for (int s = 0; s < states; ++s)
                           w = std::max(w, canonicity_check(random_state(N, rng), mu, 1e-6, opts).deviation);
                       json p = base;
                       p["step"] = 1e-6;
                       return Outcome{w, p};
                   }});
    out.push_back({"bt.canonicity_order", 0.3, false, [=](Rng& rng) {
                       // Central differences: halving the step should quarter the deviation.
                       // Steps halve from 0.2; the first pair that is past the
                       // pre-asymptotic regime (d < 1e-3) and 100x above the noise floor
                       // is used. The floor scales like 1/h and is measured at h = 1e-6.
                       const ChainState st = random_state(N, rng);
                       const double floor = canonicity_check(st, mu, 1e-6, opts).deviation * 1e-6;
                       double h = 0.2, d1 = canonicity_check(st, mu, h, opts).deviation;
                       for (int level = 0; level < 12; ++level, h /= 2) {
                           const double d2 = canonicity_check(st, mu, h / 2, opts).deviation;
                           if (d2 < 100.0 * floor / (h / 2)) break;
                           if (d1 < 1e-3) {
                               const double order = std::log2(d1 / d2);
                               json p = base;
                               p["steps"] = {h, h / 2};
                               p["deviations"] = {d1, d2};
                               p["order"] = order;
                               return Outcome{std::abs(order - 2.0), p};
                           }
                           d1 = d2;
                       }
                       throw ConvergenceError("canonicity deviation never clears the noise floor in the asymptotic range");
                   }});

    // Generating function: real-positive data only; states are redrawn until
    // the map keeps every logarithm on its principal branch.
    auto real_positive_bts = [=](Rng& rng, int wanted) {
        if (mu.imag() != 0.0 || !(mu.real() > 0.0))
            throw DomainError("generating-function checks need real positive mu");
        std::vector<BTResult> bts;
        int attempts = 0;
        while (int(bts.size()) < wanted) {
            if (++attempts > 200) throw DomainError("no real-positive BT instance found in 200 draws");
            const ChainState st = random_real_state(N, rng, 0.1, 0.5, 0.1, 0.5);
            try {
                BTResult bt = bt_apply(st, mu, opts);
                generating_function_check(bt, {});
                bts.push_back(std::move(bt));
            } catch (const BranchError&) {
            } catch (const DomainError&) {
            }
        }
        return bts;
    };
    out.push_back({"bt.generating_function", 1e-6, false, [=](Rng& rng) {
                       double w = 0.0;
                       for (const BTResult& bt : real_positive_bts(rng, states)) {
                           const GeneratingFunctionReport g = generating_function_check(bt);
                           w = std::max({w, g.grad_residual_r, g.grad_residual_rtilde, g.phi_residual});
                       }
                       json p = base;
                       p["fd_step"] = 1e-6;
                       return Outcome{w, p};
                   }});
    out.push_back({"bt.quadrature_refinement", 1e-10, false, [=](Rng& rng) {
                       double w = 0.0;
                       for (const BTResult& bt : real_positive_bts(rng, states))
                           w = std::max(w, generating_function_check(bt).refinement_delta);
                       return Outcome{w, base};
                   }});
}

// --- quantum ------------------------------------------------------------------

void quantum_checks(const RunConfig& c, std::vector<CheckDef>& out) {
    const std::size_t N = std::size_t(c.N);
    const int n_max = c.n_max, pairs = c.sample_counts.lambdas;
    const QParam a(c.alpha, c.complex_alpha);
    const json base{{"N", c.N}, {"n_max", n_max}, {"alpha", complex_to_json(a.alpha())}};

    out.push_back({"quantum.yang_baxter", 1e-12, true, [](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < 100; ++i) {
                           cplx l, n;
                           do {
                               std::tie(l, n) = spectral_pair(rng);
                           } while (std::abs(l * l - 1.0) < 0.1 || std::abs(n * n - 1.0) < 0.1 ||
                                    std::abs(l * l / (n * n) - 1.0) < 0.1);
                           w = std::max(w, ybe_residual(l, n, rng.complex_box(0.5)));
                       }
                       return Outcome{w, json{{"draws", 100}}};
                   }});
    out.push_back({"quantum.rmatrix_classical_limit", 1e-13, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < pairs; ++i) {
                           const auto [l, n] = spectral_pair(rng);
                           const cplx eta = rng.complex_box(0.5);
                           const Mat4 diff = quantum_rmatrix(l, n, eta) -
                                             ((1.0 + eta / 2.0) * Mat4::Identity() - eta * classical_rmatrix(l, n));
                           w = std::max(w, diff.cwiseAbs().maxCoeff());
                       }
                       return Outcome{w, json{{"draws", pairs}}};
                   }});
    out.push_back({"quantum.commutation", 1e-12, true, [=](Rng&) {
                       return Outcome{commutation_residual(FockRep(N, n_max, a)), base};
                   }});
    out.push_back({"quantum.vacuum", 1e-12, true, [=](Rng& rng) {
                       const FockRep rep(N, n_max, a);
                       const OperatorMonodromy m = operator_monodromy(rep);
                       const std::vector<cplx> vac = rep.vacuum();
                       double w = 0.0;
                       for (int i = 0; i < pairs; ++i) {
                           const cplx l = rng.complex_annulus(0.5, 1.5);
                           const OpMat2 e = evaluate(m, l);
                           const auto av = e.a11.apply(vac), bv = e.a12.apply(vac), dv = e.a22.apply(vac);
                           const cplx ln = std::pow(l, int(N));
                           for (std::size_t k = 0; k < vac.size(); ++k) {
                               w = std::max({w, std::abs(av[k] - ln * vac[k]), std::abs(bv[k]),
                                             std::abs(dv[k] - vac[k] / ln)});
                           }
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"quantum.rll", 1e-11, true, [=](Rng& rng) {
                       const FockRep rep(N, n_max, a);
                       double w = 0.0;
                       for (int i = 0; i < std::min(pairs, 4); ++i) {
                           const auto [l, n] = spectral_pair(rng);
                           w = std::max(w, rll_residual(rep, l, n));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"quantum.transfer_commute", 1e-10, true, [=](Rng& rng) {
                       const FockRep rep(N, n_max, a);
                       double w = 0.0;
                       for (int i = 0; i < pairs; ++i) {
                           const auto [l, n] = spectral_pair(rng);
                           w = std::max(w, transfer_commutator_residual(rep, l, n));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"quantum.transfer_grading", 0.5, false, [=](Rng& rng) {
                       const FockRep rep(N, n_max, a);
                       const bool ok = preserves_occupation(rep, transfer_matrix(rep, rng.complex_annulus(0.5, 1.5)));
                       return Outcome{ok ? 0.0 : 1.0, base};
                   }});
    out.push_back({"quantum.qdet_forms", 1e-11, true, [=](Rng& rng) {
                       const FockRep rep(N, n_max, a);
                       double w = 0.0;
                       for (int i = 0; i < std::min(pairs, 4); ++i) {
                           const QDetReport q = quantum_determinant_check(rep, rng.complex_annulus(0.5, 1.5));
                           w = std::max({w, q.pairwise, q.to_product});
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"quantum.qdet_transfer_commute", 1e-10, true, [=](Rng& rng) {
                       if (n_max < 3) throw DomainError("needs n_max >= 3 (headroom 2)");
                       const FockRep rep(N, n_max, a);
                       double w = 0.0;
                       for (int i = 0; i < std::min(pairs, 4); ++i) {
                           const auto [l, n] = spectral_pair(rng);
                           w = std::max(w, qdet_transfer_commutator_residual(rep, l, n));
                       }
                       return Outcome{w, base};
                   }});
}

// --- Bethe --------------------------------------------------------------------

std::vector<cplx> nu_samples(Rng& rng, int count, std::span<const cplx> roots) {
    std::vector<cplx> out;
    while (int(out.size()) < count) {
        const cplx nu = rng.complex_annulus(0.4, 1.6);
        bool ok = true;
        for (const cplx l : roots) ok = ok && std::abs(nu * nu - l * l) > 0.05;
        if (ok) out.push_back(nu);
    }
    return out;
}

void bethe_checks(const RunConfig& c, std::vector<CheckDef>& out) {
    const std::size_t N = std::size_t(c.N), m = std::size_t(c.m);
    const int n_max = c.n_max, nus = c.sample_counts.nus;
    const QParam a(c.alpha, c.complex_alpha);
    BetheOptions bo;
    bo.tol = c.tolerances.newton;
    const json base{{"N", c.N}, {"m", c.m}, {"alpha", complex_to_json(a.alpha())}};

    // m = 0 is the vacuum: no roots to solve for.
    auto roots_for = [=](const QParam& q) {
        return m == 0 ? std::vector<cplx>{} : solve_bethe(N, m, q, bo).roots;
    };

    out.push_back({"bethe.solve", c.tolerances.newton, false, [=](Rng&) {
                       Outcome o{0.0, base};
                       json roots = json::array();
                       if (m > 0) {
                           const BetheConfig cfg = solve_bethe(N, m, a, bo);
                           const auto res = bethe_residuals(cfg);
                           for (std::size_t k = 0; k < m; ++k)
                               roots.push_back({{"k", k}, {"root", complex_to_json(cfg.roots[k])}, {"residual", res[k]}});
                           o.residual = cfg.residual;
                           o.params["seed_indices"] = cfg.seed_indices;
                           o.params["homotopy_steps"] = cfg.homotopy_path.size();
                       }
                       o.artifact = roots;
                       return o;
                   }});
    out.push_back({"bethe.fock_eigenvalue", 1e-10, true, [=](Rng& rng) {
                       const auto roots = roots_for(a);
                       const FockRep rep(N, n_max, a);
                       const auto st = bethe_state(rep, roots);
                       double w = 0.0;
                       for (const cplx nu : nu_samples(rng, 4, roots)) w = std::max(w, eigen_residual(rep, st, roots, nu));
                       json p = base;
                       p["n_max"] = n_max;
                       return Outcome{w, p};
                   }});
    out.push_back({"bethe.qdet_eigenvalue", 1e-10, true, [=](Rng& rng) {
                       const auto roots = roots_for(a);
                       const FockRep rep(N, n_max, a);
                       const auto st = bethe_state(rep, roots);
                       json p = base;
                       p["n_max"] = n_max;
                       return Outcome{qdet_eigen_residual(rep, st, m, rng.complex_annulus(0.5, 1.5)), p};
                   }});
    out.push_back({"bethe.baxter_qdiff", 1e-10, true, [=](Rng& rng) {
                       const auto roots = roots_for(a);
                       const auto samples = nu_samples(rng, nus, roots);
                       json p = base;
                       p["samples"] = nus;
                       return Outcome{baxter_qdiff_residual(roots, N, a, samples), p};
                   }});
    out.push_back({"bethe.transfer_polynomial", 1e-10, true, [=](Rng& rng) {
                       const auto roots = roots_for(a);
                       const LaurentPoly t = transfer_polynomial(roots, N, a);
                       double w = 0.0;
                       for (const cplx nu : nu_samples(rng, nus, roots))
                           w = std::max(w, rel_diff(t.eval(nu), transfer_eigenvalue(roots, N, a, nu)));
                       return Outcome{w, base};
                   }});
    out.push_back({"bethe.root_symmetry", 1e-12, true, [=](Rng&) {
                       auto roots = roots_for(a);
                       for (auto& r : roots) r = -r;
                       double w = 0.0;
                       for (const double r : bethe_residuals(roots, N, a)) w = std::max(w, r);
                       return Outcome{w, base};
                   }});
    out.push_back({"bethe.semiclassical_split", 1e-12, true, [=](Rng&) {
                       const QParam q(1.0 - 1e-3);
                       const auto roots = roots_for(q);
                       const SemiclassicalSplit s = semiclassical_split(roots, N, q, c.mu);
                       json p = base;
                       p["alpha"] = q.alpha().real();
                       return Outcome{s.sum_residual, p};
                   }});
    out.push_back({"bethe.semiclassical_order", 0.2, false, [=](Rng&) {
                       // Per root the branch factors multiply to alpha (1 - alpha eta^2 X), so
                       // |branch product - alpha^m| vanishes quadratically in eta.
                       if (m == 0) return Outcome{0.0, base};
                       const QParam q1(1.0 - 1e-3), q2(1.0 - 5e-4);
                       const double d1 = semiclassical_split(roots_for(q1), N, q1, c.mu).product_mismatch;
                       const double d2 = semiclassical_split(roots_for(q2), N, q2, c.mu).product_mismatch;
                       const double order = std::log2(d1 / d2);
                       json p = base;
                       p["alpha"] = {q1.alpha().real(), q2.alpha().real()};
                       p["mismatch"] = {d1, d2};
                       p["order"] = order;
                       return Outcome{std::abs(order - 2.0), p};
                   }});
}

// --- Baxter kernels and q-calculus --------------------------------------------

void baxter_checks(const RunConfig& c, std::vector<CheckDef>& out) {
    const std::size_t N = std::size_t(c.N);
    const int points = c.sample_counts.points;
    const QParam a(c.alpha, c.complex_alpha);
    const cplx mu = c.mu;
    const json base{{"N", c.N}, {"mu", complex_to_json(mu)}, {"alpha", complex_to_json(a.alpha())}};

    auto draw_points = [=](Rng& rng) {
        auto pts = std::vector<std::vector<cplx>>(std::size_t(points), std::vector<cplx>(N));
        for (auto& p : pts)
            for (auto& x : p) x = rng.uniform(0.1, 0.9);
        return pts;
    };

    out.push_back({"baxter.rho_functional", 1e-12, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       double w = 0.0;
                       for (std::size_t k = 0; k < N; ++k) {
                           const KernelSite ks{mu, rt[k], rt[wrap(long(k) - 1, N)]};
                           for (int i = 0; i < points; ++i)
                               w = std::max(w, rho_functional_residual(ks, a, rng.uniform(0.1, 0.9)));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.triangular_upper_right", 1e-12, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       double w = 0.0;
                       for (std::size_t k = 0; k < N; ++k)
                           for (int i = 0; i < points; ++i) {
                               const TriangularReport t = triangular_check(mu, a, rt, k, rng.uniform(0.1, 0.9));
                               w = std::max({w, t.upper_right, t.det_m});
                           }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.triangular_diagonal", 1e-11, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       double w = 0.0;
                       for (std::size_t k = 0; k < N; ++k)
                           for (int i = 0; i < points; ++i) {
                               const TriangularReport t = triangular_check(mu, a, rt, k, rng.uniform(0.1, 0.9));
                               w = std::max({w, t.upper_left, t.lower_right});
                           }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.kernel_equations", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < points; ++i) {
                           const auto res = feq_residuals(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9),
                                                          rng.uniform(0.1, 0.9), mu, a);
                           for (const double r : res) w = std::max(w, r);
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.kernel_homogeneity", 1e-12, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < points; ++i) {
                           const double x = rng.uniform(0.1, 2.0), y = rng.uniform(0.1, 2.0);
                           const cplx g = g_kernel(x, y, mu, a);
                           w = std::max(w, std::abs(g - a.alpha() * g_kernel(a.alpha() * x, a.alpha() * y, mu, a)) /
                                               std::max(1.0, std::abs(g)));
                           const cplx z = rng.uniform(0.1, 3.0);
                           const cplx gz = ghat(z, a);
                           w = std::max(w, std::abs(gz - z * ghat(a.alpha() * z, a)) / std::max(1.0, std::abs(gz)));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.trace_action", 1e-10, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       json p = base;
                       p["points"] = points;
                       return Outcome{baxter_action_residual(mu, a, rt, draw_points(rng)), p};
                   }});
    out.push_back({"baxter.qdet_action", 1e-12, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       return Outcome{delta_action_residual(mu, a, rt, draw_points(rng)), base};
                   }});
    out.push_back({"baxter.qhat_factorization", 1e-12, true, [=](Rng& rng) {
                       const auto rt = uniform_vector(rng, N, 1.5, 3.0);
                       const FuncExpr rho = rho_product(mu, a, rt);
                       cplx norm = 1.0;
                       for (const cplx x : rt) norm /= x;
                       double w = 0.0;
                       for (const auto& p : draw_points(rng)) {
                           const cplx q = qhat_kernel(mu, a, rt, p);
                           w = std::max(w, std::abs(q - norm * rho(p)) / std::max(1.0, std::abs(q)));
                       }
                       return Outcome{w, base};
                   }});
    out.push_back({"baxter.q_exponential", 1e-3, false, [](Rng&) {
                       const double al = 1.0 - 1e-4;
                       double w = 0.0;
                       for (int i = 0; i <= 20; ++i) {
                           const double x = -1.0 + 0.1 * i;
                           w = std::max(w, std::abs(1.0 / qpochhammer_inf(x * (1.0 - al), al) - std::exp(x)));
                       }
                       return Outcome{w, json{{"alpha", al}, {"grid", 21}}};
                   }});
    out.push_back({"baxter.q_leibniz", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < 50; ++i) {
                           const FuncExpr f = random_polynomial(rng, 0, 4), g = random_polynomial(rng, 0, 4);
                           const std::vector<cplx> pt{rng.uniform(0.1, 0.9)};
                           const std::vector<cplx> shifted{a.alpha() * pt[0]};
                           const cplx lhs = q_action(f * g, 0, a, pt);
                           const cplx rhs = f(pt) * q_action(g, 0, a, pt) + g(shifted) * q_action(f, 0, a, pt);
                           w = std::max(w, rel_diff(lhs, rhs));
                       }
                       return Outcome{w, json{{"pairs", 50}}};
                   }});
    out.push_back({"baxter.q_integration_by_parts", 1e-10, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < 50; ++i) {
                           const FuncExpr f = random_polynomial(rng, 0, 4), g = random_polynomial(rng, 0, 4);
                           const double lo = rng.uniform(0.1, 0.5), hi = rng.uniform(0.5, 0.9);
                           const std::vector<cplx> pt{0.5};
                           const PointFn f_qg = [&](std::span<const cplx> x) { return f(x) * q_action(g, 0, a, x); };
                           const PointFn g_qf = [&](std::span<const cplx> x) {
                               return g(scale_point(x, 0, a.alpha())) * q_action(f, 0, a, x);
                           };
                           const std::vector<cplx> xb{hi}, xa{lo};
                           const cplx lhs = jackson_integral(f_qg, 0, a, lo, hi, pt);
                           const cplx rhs = f(xb) * g(xb) - f(xa) * g(xa) - jackson_integral(g_qf, 0, a, lo, hi, pt);
                           w = std::max(w, rel_diff(lhs, rhs));
                       }
                       return Outcome{w, json{{"pairs", 50}}};
                   }});
    out.push_back({"baxter.jackson_inverse", 1e-12, true, [=](Rng& rng) {
                       double w = 0.0;
                       for (int i = 0; i < 50; ++i) {
                           const FuncExpr f = random_polynomial(rng, 0, 4);
                           const PointFn inv = [&](std::span<const cplx> x) { return q_inverse(f, 0, a, x); };
                           const std::vector<cplx> pt{rng.uniform(0.1, 0.9)};
                           w = std::max(w, rel_diff(q_action(inv, 0, a, pt), f(pt)));
                       }
                       return Outcome{w, json{{"functions", 50}}};
                   }});
}

std::vector<CheckDef> build_suite(const std::string& suite, const RunConfig& c) {
    std::vector<CheckDef> defs;
    const bool all = suite == "all";
    if (all || suite == "classical") classical_checks(c, defs);
    if (all || suite == "bt") bt_checks(c, defs);
    if (all || suite == "quantum") quantum_checks(c, defs);
    if (all || suite == "bethe") bethe_checks(c, defs);
    if (all || suite == "baxter") baxter_checks(c, defs);
    if (defs.empty()) throw ConfigError("unknown suite \"" + suite + "\"");
    return defs;
}

} // namespace

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

Report run_verify(const std::string& suite, const RunConfig& config) {
    validate(config);
    const std::vector<CheckDef> defs = build_suite(suite, config);
    Report rep;
    rep.suite = suite;
    rep.config = config;
    rep.checks.resize(defs.size());
    std::vector<json> artifacts(defs.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < long(defs.size()); ++i) {
        const CheckDef& def = defs[std::size_t(i)];
        CheckRecord& rec = rep.checks[std::size_t(i)];
        rec.check_id = def.id;
        rec.tolerance = def.exact && config.tolerances.residual ? *config.tolerances.residual : def.tolerance;
        Rng rng = Rng::derived(config.seed, def.id);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = def.run(rng);
            rec.residual = o.residual;
            rec.params = std::move(o.params);
            artifacts[std::size_t(i)] = std::move(o.artifact);
            rec.pass = rec.residual < rec.tolerance;
        } catch (const std::exception& e) {
            rec.residual = std::numeric_limits<double>::quiet_NaN();
            rec.error = e.what();
            rec.pass = false;
        }
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    for (std::size_t i = 0; i < defs.size(); ++i)
        if (!artifacts[i].is_null()) rep.artifacts[defs[i].id] = artifacts[i];
    return rep;
}

} // namespace albaxter::cli

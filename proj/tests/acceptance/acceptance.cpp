// End-to-end acceptance run: one line per criterion, all tolerances and
// runtime limits fixed here. Exit status is the number of failed criteria.

#include <albaxter/backlund.hpp>
#include <albaxter/bethe.hpp>
#include <albaxter/classical.hpp>
#include <albaxter/cli.hpp>
#include <albaxter/fock.hpp>
#include <albaxter/funspace.hpp>
#include <albaxter/qcalc.hpp>
#include <albaxter/sampling.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace albaxter;
using nlohmann::json;

#ifndef ALBAXTER_CLI_PATH
#error "ALBAXTER_CLI_PATH must point at the albaxter executable"
#endif

namespace {

struct Item {
    std::string what;
    double value;
    double limit;
    bool greater = false;  // pass when value > limit (negative controls)
    bool ok() const { return greater ? value > limit : value < limit; }
};

struct Outcome {
    std::vector<Item> items;
    std::string note;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
        o = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = error.empty() && dt < time_limit;
    std::ostringstream detail;
    for (const Item& it : o.items) {
        pass = pass && it.ok();
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s=%.3g%s%.0e%s", it.what.c_str(), it.value, it.greater ? ">" : "<", it.limit,
                      it.ok() ? "" : "(!)");
        detail << buf;
    }
    if (!error.empty()) detail << " error: " << error;
    if (!o.note.empty()) detail << ' ' << o.note;
    std::printf("[%2d] %-4s %s |%s | time=%.2fs<%gs\n", id, pass ? "PASS" : "FAIL", name, detail.str().c_str(), dt,
                time_limit);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::pair<cplx, cplx> spectral_pair(Rng& rng) {
    for (;;) {
        const cplx l = rng.complex_annulus(0.5, 1.5), n = rng.complex_annulus(0.5, 1.5);
        if (std::abs(l * l - n * n) > 0.1) return {l, n};
    }
}

// Polynomial with coefficients in [-1, 1].
FuncExpr random_polynomial(Rng& rng, int degree) {
    const FuncExpr r = FuncExpr::variable(0);
    FuncExpr p = FuncExpr::constant(rng.uniform(-1.0, 1.0)), power = FuncExpr::constant(1.0);
    for (int d = 1; d <= degree; ++d) {
        power = power * r;
        p = p + FuncExpr::constant(rng.uniform(-1.0, 1.0)) * power;
    }
    return p;
}

double gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Worst residual per check id over a suite run; a check that errored counts as infinite.
std::map<std::string, double> suite_residuals(const std::string& suite, const cli::RunConfig& cfg) {
    std::map<std::string, double> out;
    for (const auto& c : cli::run_verify(suite, cfg).checks)
        out[c.check_id] = c.error.empty() ? c.residual : std::numeric_limits<double>::infinity();
    return out;
}

int run_cli(const std::string& args, const std::string& threads) {
    const std::string cmd = "AL_BAXTER_THREADS=" + threads + " \"" ALBAXTER_CLI_PATH "\" " + args;
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main() {
    criterion(1, "Yang-Baxter equation, 100 random (lambda, nu, eta)", 1.0, [] {
        Rng rng(101);
        double w = 0.0;
        for (int i = 0; i < 100; ++i) {
            cplx l, n;
            do {
                std::tie(l, n) = spectral_pair(rng);
            } while (std::abs(l * l - 1.0) < 0.1 || std::abs(n * n - 1.0) < 0.1 || std::abs(l * l / (n * n) - 1.0) < 0.1);
            w = std::max(w, ybe_residual(l, n, rng.complex_box(0.5)));
        }
        return Outcome{{{"max_residual", w, 1e-12}}, {}};
    });

    criterion(2, "classical r-matrix relation, N=1,2,3 x 20 states", 5.0, [] {
        Rng rng(102);
        double w = 0.0;
        for (std::size_t n : {1, 2, 3})
            for (int s = 0; s < 20; ++s) {
                const ChainState st = random_state(n, rng);
                for (int p = 0; p < 4; ++p) {
                    const auto [l, v] = spectral_pair(rng);
                    w = std::max(w, rmatrix_relation_residual(st, l, v));
                }
            }
        return Outcome{{{"max_residual", w, 1e-10}}, {}};
    });

    criterion(3, "RLL and commuting transfer matrices, N=1,2, n_max=6", 30.0, [] {
        Rng rng(103);
        double rll = 0.0, tr = 0.0;
        for (std::size_t n : {1, 2}) {
            const FockRep rep(n, 6, QParam(0.5));
            for (int p = 0; p < 3; ++p) {
                const auto [l, v] = spectral_pair(rng);
                rll = std::max(rll, rll_residual(rep, l, v));
                tr = std::max(tr, transfer_commutator_residual(rep, l, v));
            }
        }
        return Outcome{{{"rll", rll, 1e-11}, {"[Tr,Tr]", tr, 1e-10}}, {}};
    });

    criterion(4, "quantum determinant: four forms and the product, N=2, n_max=5", 10.0, [] {
        Rng rng(104);
        const FockRep rep(2, 5, QParam(0.5));
        double pw = 0.0, pr = 0.0;
        for (int i = 0; i < 4; ++i) {
            const QDetReport q = quantum_determinant_check(rep, rng.complex_annulus(0.5, 1.5));
            pw = std::max(pw, q.pairwise);
            pr = std::max(pr, q.to_product);
        }
        return Outcome{{{"pairwise", pw, 1e-11}, {"to_product", pr, 1e-11}}, {}};
    });

    criterion(5, "Bethe/Baxter closure, N=2,3 m=1,2 alpha=.3,.5,.8", 60.0, [] {
        Rng rng(105);
        double solve = 0.0, eig = 0.0, qdet = 0.0, qdiff = 0.0, control = std::numeric_limits<double>::infinity();
        for (std::size_t n : {2, 3})
            for (std::size_t m : {1, 2})
                for (double al : {0.3, 0.5, 0.8}) {
                    const QParam a(al);
                    const BetheConfig c = solve_bethe(n, m, a);
                    solve = std::max(solve, c.residual);
                    const FockRep rep(n, int(m) + 3, a);
                    const auto st = bethe_state(rep, c.roots);
                    std::vector<cplx> nus;
                    while (nus.size() < 16) {
                        const cplx v = rng.complex_annulus(0.4, 1.6);
                        bool ok = true;
                        for (const cplx l : c.roots) ok = ok && std::abs(v * v - l * l) > 0.05;
                        if (ok) nus.push_back(v);
                    }
                    for (int i = 0; i < 4; ++i) eig = std::max(eig, eigen_residual(rep, st, c.roots, nus[std::size_t(i)]));
                    qdet = std::max(qdet, qdet_eigen_residual(rep, st, m, rng.complex_annulus(0.5, 1.5)));
                    qdiff = std::max(qdiff, baxter_qdiff_residual(c.roots, n, a, nus));
                    std::vector<cplx> off = c.roots;
                    for (auto& x : off) x *= 1.1;
                    control = std::min(control, baxter_qdiff_residual(off, n, a, nus));
                }
        return Outcome{{{"solve", solve, 1e-12},
                        {"fock_eigen", eig, 1e-10},
                        {"qdet_eigen", qdet, 1e-10},
                        {"q_difference", qdiff, 1e-10},
                        {"off_shell_control", control, 1e-2, true}},
                       {}};
    });

    criterion(6, "single Bethe root is a 2N-th root of unity, N<=6", 5.0, [] {
        // Machine precision here means 16 eps per factor of lambda^(2N), N <= 6.
        // The root comes from the closed form; the Bethe equations and the
        // Fock-space eigenvector test verify it independently.
        double unity = 0.0, eq = 0.0, eig = 0.0;
        for (std::size_t n = 1; n <= 6; ++n)
            for (double al : {0.1, 0.3, 0.5, 0.8, 0.95})
                for (int j = 0; j < int(2 * n); ++j) {
                    const QParam a(al);
                    const BetheConfig c = solve_bethe(n, 1, a, std::vector<int>{j});
                    unity = std::max(unity, std::abs(std::pow(c.roots[0], int(2 * n)) - 1.0));
                    eq = std::max(eq, bethe_residuals(c)[0]);
                    if (n <= 4) {
                        const FockRep rep(n, 3, a);
                        eig = std::max(eig, eigen_residual(rep, bethe_state(rep, c.roots), c.roots, cplx(0.8, 0.3)));
                    }
                }
        return Outcome{{{"|lambda^2N-1|", unity, 5e-14}, {"bethe_eq", eq, 5e-14}, {"fock_eigen", eig, 1e-12}},
                       "(all seeds j < 2N; eigen test N<=4, n_max=3)"};
    });

    criterion(7, "Baecklund suite, N=2,3 mu=0.1,0.3", 60.0, [] {
        const std::map<std::string, double> pinned{
            {"bt.map_residual", 1e-12},   {"bt.conservation", 1e-10}, {"bt.intertwining", 1e-10},
            {"bt.spectrality", 1e-10},    {"bt.trace_formula", 1e-10}, {"bt.classical_baxter", 1e-10},
            {"bt.eigenvalues", 1e-10},    {"bt.canonicity", 1e-5},     {"bt.canonicity_order", 0.3},
            {"bt.generating_function", 1e-6}};
        std::map<std::string, double> worst;
        for (int n : {2, 3})
            for (double mu : {0.1, 0.3}) {
                cli::RunConfig cfg;
                cfg.N = n;
                cfg.mu = mu;
                cfg.seed = 107;
                const auto res = suite_residuals("bt", cfg);
                for (const auto& [id, tol] : pinned) worst[id] = std::max(worst[id], res.at(id));
            }
        Outcome o;
        for (const auto& [id, tol] : pinned) o.items.push_back({id.substr(3), worst[id], tol});
        return o;
    });

    criterion(8, "kernel identities and pointwise Baxter action, N=1,2,3", 30.0, [] {
        const std::map<std::string, double> pinned{
            {"baxter.rho_functional", 1e-12},      {"baxter.triangular_diagonal", 1e-11},
            {"baxter.kernel_equations", 1e-10},    {"baxter.kernel_homogeneity", 1e-12},
            {"baxter.trace_action", 1e-10},        {"baxter.q_exponential", 1e-3}};
        std::map<std::string, double> worst;
        for (int n : {1, 2, 3}) {
            cli::RunConfig cfg;
            cfg.N = n;
            cfg.seed = 108;
            cfg.sample_counts.points = 8;
            const auto res = suite_residuals("baxter", cfg);
            for (const auto& [id, tol] : pinned) worst[id] = std::max(worst[id], res.at(id));
        }
        // the wrong half-shift must not pass
        std::vector<std::vector<cplx>> pts(8, std::vector<cplx>(2));
        Rng rng(108);
        for (auto& p : pts)
            for (auto& x : p) x = rng.uniform(0.1, 0.9);
        const std::vector<cplx> rt{2.1, 1.8};
        Outcome o;
        for (const auto& [id, tol] : pinned) o.items.push_back({id.substr(7), worst[id], tol});
        o.items.push_back({"alpha_shift_control", baxter_action_residual(1.3, QParam(0.5), rt, pts, BaxterShift::Alpha),
                           1e-2, true});
        return o;
    });

    criterion(9, "q-Leibniz, q-integration by parts, Jackson inverse", 5.0, [] {
        Rng rng(109);
        const QParam a(0.5);
        double leib = 0.0, parts = 0.0, inv = 0.0;
        for (int i = 0; i < 50; ++i) {
            const FuncExpr f = random_polynomial(rng, 4), g = random_polynomial(rng, 4);
            const std::vector<cplx> pt{rng.uniform(0.1, 0.9)}, apt{0.5 * pt[0]};
            leib = std::max(leib, gap(q_action(f * g, 0, a, pt),
                                      f(pt) * q_action(g, 0, a, pt) + g(apt) * q_action(f, 0, a, pt)));

            const double lo = rng.uniform(0.1, 0.5), hi = rng.uniform(0.5, 0.9);
            const PointFn f_qg = [&](std::span<const cplx> x) { return f(x) * q_action(g, 0, a, x); };
            const PointFn g_qf = [&](std::span<const cplx> x) {
                return g(scale_point(x, 0, a.alpha())) * q_action(f, 0, a, x);
            };
            const std::vector<cplx> xb{hi}, xa{lo};
            parts = std::max(parts, gap(jackson_integral(f_qg, 0, a, lo, hi, pt),
                                        f(xb) * g(xb) - f(xa) * g(xa) - jackson_integral(g_qf, 0, a, lo, hi, pt)));

            const PointFn qi = [&](std::span<const cplx> x) { return q_inverse(f, 0, a, x); };
            inv = std::max(inv, gap(q_action(qi, 0, a, pt), f(pt)));
        }
        return Outcome{{{"leibniz", leib, 1e-10}, {"parts", parts, 1e-10}, {"jackson_inverse", inv, 1e-12}}, {}};
    });

    criterion(10, "determinism: two `verify all` runs give identical reports", 60.0, [] {
        const std::string a = "acceptance_report_a.json", b = "acceptance_report_b.json";
        const int rc1 = run_cli("verify all --no-timing --seed 7 --out " + a, "1");
        const int rc2 = run_cli("verify all --no-timing --seed 7 --out " + b, "4");
        const std::string ja = slurp(a), jb = slurp(b);
        const double same = (!ja.empty() && ja == jb) ? 0.0 : 1.0;
        return Outcome{{{"byte_diff", same, 0.5}, {"exit_code_run1", double(rc1), 0.5}, {"exit_code_run2", double(rc2), 0.5}},
                       "(threads 1 vs 4)"};
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

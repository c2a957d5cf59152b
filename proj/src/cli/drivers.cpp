#include <albaxter/backlund.hpp>
#include <albaxter/cli.hpp>
#include <albaxter/qcalc.hpp>
#include <albaxter/sampling.hpp>

#include <cstdio>
#include <sstream>

namespace albaxter::cli {

using nlohmann::json;

namespace {

ChainState initial_state(const RunConfig& c, const std::optional<json>& state, const char* label) {
    if (state) return chain_state_from_json(*state);
    Rng rng = Rng::derived(c.seed, label);
    return random_state(std::size_t(c.N), rng);
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json conserved_json(const ConservedSet& cs) {
    json h = json::array();
    for (const cplx x : cs.H) h.push_back(complex_to_json(x));
    return {{"H", h}, {"det", complex_to_json(cs.det)}};
}

} // namespace

json run_bt(const BtRequest& req) {
    validate(req.config);
    const ChainState src = initial_state(req.config, req.state, "bt.state");
    std::vector<cplx> mus(req.mus.begin(), req.mus.end());
    if (mus.empty()) mus.push_back(req.config.mu);

    BTOptions opts;
    opts.tol = req.config.tolerances.newton;
    json records = json::array();
    for (const cplx mu : mus) {
        json rec{{"mu", complex_to_json(mu)}};
        try {
            const BTResult bt = bt_apply(src, mu, opts);
            const SpectralityReport sp = spectrality(bt);
            const ConservedSet before = conserved_quantities(src), after = conserved_quantities(bt.target);
            double delta = std::abs(after.det - before.det) / std::max(1.0, std::abs(before.det));
            for (std::size_t i = 0; i < before.H.size(); ++i)
                delta = std::max(delta, std::abs(after.H[i] - before.H[i]) / std::max(1.0, std::abs(before.H[i])));
            json residuals{{"bt", bt.residual},
                           {"intertwine", intertwining_residual(bt, mu)},
                           {"spectrality", sp.collinearity},
                           {"trace", sp.trace_residual},
                           {"conservation", delta}};
            if (req.canonicity) residuals["canonicity"] = canonicity_check(src, mu, 1e-6, opts).deviation;
            json gk = json::array();
            for (const cplx g : sp.gamma_k) gk.push_back(complex_to_json(g));
            rec["iters"] = bt.newton_iters;
            rec["residuals"] = residuals;
            rec["H_before"] = conserved_json(before);
            rec["H_after"] = conserved_json(after);
            rec["gamma"] = complex_to_json(sp.gamma);
            rec["gamma_k"] = gk;
            rec["target"] = to_json(bt.target);
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records.push_back(std::move(rec));
    }
    json cfg = to_json(req.config);
    cfg.erase("output_path");
    return {{"schema", kBtSchema},
            {"config", cfg},
            {"source", to_json(src)},
            {"records", records}};
}

std::string run_evolve(const EvolveRequest& req) {
    validate(req.config);
    if (!(req.dt > 0.0) || req.steps < 0 || req.every < 1) throw ConfigError("evolve: need dt > 0, steps >= 0, every >= 1");
    const std::size_t n = std::size_t(req.config.N);
    ChainState s = req.zero_state ? ChainState(std::vector<cplx>(n), std::vector<cplx>(n))
                                  : initial_state(req.config, req.state, "evolve.state");
    const ConservedSet c0 = conserved_quantities(s);

    std::ostringstream os;
    os << "# " << kTrajectorySchema << '\n' << "step,t";
    for (std::size_t k = 0; k < s.size(); ++k) os << ",q" << k << "_re,q" << k << "_im";
    for (std::size_t k = 0; k < s.size(); ++k) os << ",r" << k << "_re,r" << k << "_im";
    for (std::size_t i = 0; i < c0.H.size(); ++i) os << ",H" << i << "_re,H" << i << "_im";
    os << ",det_re,det_im,max_drift\n";

    auto emit = [&](int step) {
        const ConservedSet c = conserved_quantities(s);
        double drift = std::abs(c.det - c0.det);
        for (std::size_t i = 0; i < c.H.size(); ++i) drift = std::max(drift, std::abs(c.H[i] - c0.H[i]));
        os << step << ',' << num(step * req.dt);
        for (const cplx z : s.q()) os << ',' << num(z.real()) << ',' << num(z.imag());
        for (const cplx z : s.r()) os << ',' << num(z.real()) << ',' << num(z.imag());
        for (const cplx h : c.H) os << ',' << num(h.real()) << ',' << num(h.imag());
        os << ',' << num(c.det.real()) << ',' << num(c.det.imag()) << ',' << num(drift) << '\n';
    };
    emit(0);
    for (int i = 1; i <= req.steps; ++i) {
        s = rk4_step(s, req.dt);
        if (i % req.every == 0 || i == req.steps) emit(i);
    }
    return os.str();
}

std::string run_kernel_grid(const KernelGridRequest& req) {
    validate(req.config);
    if (req.points < 2 || !(req.r_hi > req.r_lo)) throw ConfigError("kernel-grid: need points >= 2 and r_hi > r_lo");
    const QParam a(req.config.alpha, req.config.complex_alpha);
    const KernelSite ks{req.config.mu, req.rtilde_k, req.rtilde_km1};

    std::ostringstream os;
    os << "# " << kKernelGridSchema << '\n' << "r,rho_re,rho_im,functional_residual\n";
    for (int i = 0; i < req.points; ++i) {
        const double r = req.r_lo + (req.r_hi - req.r_lo) * i / (req.points - 1);
        os << num(r) << ',';
        try {
            const cplx rho = rho_site(ks, a, r);
            os << num(rho.real()) << ',' << num(rho.imag()) << ',' << num(rho_functional_residual(ks, a, r)) << '\n';
        } catch (const DomainError&) {
            os << "nan,nan,nan\n";  // pole of the kernel
        }
    }
    return os.str();
}

} // namespace albaxter::cli

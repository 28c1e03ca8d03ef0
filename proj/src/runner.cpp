#include "cqs/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cqs/oracle.hpp"
#include "cqs/qfi.hpp"

namespace cqs {

namespace {

double delta_g(double g) { return 4.0 * (1.0 - g * g); }

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 2 || !(lo < hi)) throw Error("grid: need min < max and steps >= 2");
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
    return v;
}

/// Runs fn(i) for i in [0, count) on a small worker pool; results are
/// collected by index so output order never depends on scheduling.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
    if (workers <= 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < count;) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct PointOutcome {
    SweepRecord record;
    std::string error;
};

/// Shared wrapper: evaluates one grid point, attaching failures to the record.
template <typename Fn>
void run_grid(int count, int workers, std::vector<PointOutcome>& out, Fn&& eval) {
    out.resize(count);
    parallel_for(count, workers, [&](int i) {
        try {
            out[i].record = eval(i);
        } catch (const std::exception& e) {
            out[i].record.converged = false;
            out[i].record.mean = out[i].record.variance = out[i].record.chi =
                out[i].record.inv_var = out[i].record.qfi_analytic =
                    out[i].record.qfi_exact = std::nan("");
            out[i].error = e.what();
        }
    });
}

RunResult collect(std::vector<PointOutcome>&& outcomes) {
    RunResult r;
    for (auto& o : outcomes) {
        if (!o.error.empty()) {
            ++r.failures;
            r.notes.push_back("point failed: " + o.error);
        }
        r.records.push_back(std::move(o.record));
    }
    return r;
}

RunResult run_quadrature(const ExperimentConfig& cfg) {
    const double lo = cfg.grid_min > 0 ? cfg.grid_min : 0.7;
    const double hi = cfg.grid_max > 0 ? cfg.grid_max : 0.97;
    const int steps = cfg.grid_steps > 0 ? cfg.grid_steps : 10;
    const auto grid = linspace(lo, hi, steps);
    std::vector<PointOutcome> outcomes;
    run_grid(int(grid.size()), cfg.workers, outcomes, [&](int i) {
        const double g = grid[i];
        const ProtocolPoint p =
            inverted_variance_quadrature(g, cfg.omega, cfg.n, nullptr, cfg.cutoff_policy());
        SweepRecord rec;
        rec.model = "qrm_effective";
        rec.g_or_lambda = g;
        rec.delta = delta_g(g);
        rec.eta = 0.0;
        rec.time = p.time;
        rec.n = p.n;
        rec.mean = p.mean;
        rec.variance = p.variance;
        rec.chi = p.chi;
        rec.inv_var = p.inv_var;
        rec.qfi_analytic = p.qfi_analytic;
        rec.qfi_exact = p.qfi_full;
        rec.cutoff = p.cutoff;
        rec.converged = p.converged;
        return rec;
    });
    RunResult r = collect(std::move(outcomes));
    std::vector<std::pair<double, double>> pts;
    for (const auto& rec : r.records)
        if (rec.converged && rec.inv_var > 0)
            pts.emplace_back(rec.delta, rec.inv_var / (rec.g_or_lambda * rec.g_or_lambda *
                                                       rec.n * rec.n));
    if (pts.size() >= 4) {
        const ScalingFit fit = fit_powerlaw(pts);
        std::ostringstream os;
        os << "quadrature: reduced F/(g^2 n^2) scaling exponent vs Delta = " << fit.exponent
           << " (r^2 = " << fit.r_squared << ")";
        r.notes.push_back(os.str());
    }
    return r;
}

RunResult run_loschmidt(const ExperimentConfig& cfg) {
    const int m_max = cfg.branches.empty()
                          ? 6
                          : *std::max_element(cfg.branches.begin(), cfg.branches.end());
    const auto wps = working_points(m_max, cfg.omega);
    std::vector<WorkingPoint> chosen;
    for (int m : cfg.branches)
        if (m >= 1 && m <= m_max) chosen.push_back(wps[m - 1]);

    const Complex c = 1.0 / std::sqrt(2.0);  // 2 c_up^* c_down = 1
    std::vector<PointOutcome> outcomes;
    run_grid(int(chosen.size()), cfg.workers, outcomes, [&](int i) {
        const WorkingPoint& wp = chosen[i];
        const SpaceDescriptor boson = SpaceDescriptor::boson(8);
        Vector v = Vector::Zero(boson.dim);
        v(0) = 1.0;
        const QuantumState vac = QuantumState::pure(boson, std::move(v));
        const LoschmidtResult lr =
            loschmidt(wp.g, cfg.omega, vac, c, c, wp.tau, cfg.cutoff_policy());
        SweepRecord rec;
        rec.model = "qrm_effective";
        rec.g_or_lambda = wp.g;
        rec.delta = delta_g(wp.g);
        rec.eta = 0.0;
        rec.time = wp.tau;
        rec.n = wp.branch;
        rec.mean = lr.sigma_x;
        rec.variance = lr.var_sigma_x;
        rec.chi = lr.chi;
        rec.inv_var = lr.inv_var;
        const CriticalModel model = build_qrm_effective(cfg.omega, wp.g, lr.cutoff);
        Vector v0 = Vector::Zero(model.space.dim);
        v0(0) = 1.0;
        rec.qfi_analytic =
            qfi_analytic(model, QuantumState::pure(model.space, v0), wp.tau).value;
        rec.qfi_exact = loschmidt_qfi(wp.g, cfg.omega, vac, c, c, wp.tau, lr.cutoff);
        rec.cutoff = lr.cutoff;
        rec.converged = lr.converged;
        return rec;
    });
    RunResult r = collect(std::move(outcomes));
    std::vector<std::pair<double, double>> pts;
    for (const auto& rec : r.records)
        if (rec.converged && rec.inv_var > 0) pts.emplace_back(rec.delta, rec.inv_var);
    if (pts.size() >= 4) {
        const ScalingFit fit = fit_powerlaw(pts);
        std::ostringstream os;
        os << "loschmidt: log F vs log Delta slope = " << fit.exponent
           << " (r^2 = " << fit.r_squared << ")";
        r.notes.push_back(os.str());
    }
    return r;
}

CriticalModel build_for(const ExperimentConfig& cfg, double value, int cutoff) {
    if (cfg.model == "qrm_effective") return build_qrm_effective(cfg.omega, value, cutoff);
    if (cfg.model == "opo") return build_opo(value, cfg.kappa, cutoff);
    if (cfg.model == "lmg") return build_lmg(cfg.lmg_gamma, value, cutoff);
    throw Error("qfi experiment: unknown model '" + cfg.model + "'");
}

RunResult run_qfi(const ExperimentConfig& cfg) {
    double lo = cfg.grid_min, hi = cfg.grid_max;
    int steps = cfg.grid_steps > 0 ? cfg.grid_steps : 6;
    if (lo == 0 && hi == 0) {
        if (cfg.model == "qrm_effective") { lo = 0.90; hi = 0.975; }
        else if (cfg.model == "opo") { lo = 0.52; hi = 0.70; }       // omega at kappa=0.25
        else { lo = 1.05; hi = 1.30; }                               // lmg lambda
    }
    const auto grid = linspace(lo, hi, steps);
    std::vector<PointOutcome> outcomes;
    run_grid(int(grid.size()), cfg.workers, outcomes, [&](int i) {
        const double value = grid[i];
        // certify the cutoff on the evolved canonical state
        CutoffPolicy policy = cfg.cutoff_policy();
        int cutoff = policy.initial;
        bool converged = false;
        double prev = std::nan("");
        while (cutoff <= policy.max) {
            const CriticalModel m = build_for(cfg, value, cutoff);
            if (m.delta <= 0) throw Error("qfi experiment: Delta <= 0 on the grid");
            const double t = 2.0 * kPi / std::sqrt(m.delta);
            const QuantumState psi0 = cfg.model == "qrm_effective"
                                          ? canonical_initial_state(m.space)
                                          : QuantumState::pure(m.space, [&] {
                                                Vector v = Vector::Zero(m.space.dim);
                                                v(0) = 1.0;
                                                return v;
                                            }());
            const QuantumState psit = evolve_pure(m.hamiltonian_op(), psi0, t);
            const double probe = variance(ladder_ops(m.space).x, psit);
            if (!std::isnan(prev) &&
                std::abs(probe - prev) / std::max(1.0, std::abs(probe)) < policy.rel_tol &&
                interior_weight(psit, policy.interior_fraction) < policy.interior_tol) {
                converged = true;
                break;
            }
            prev = probe;
            cutoff *= 2;
        }
        cutoff = std::min(cutoff, policy.max);

        const CriticalModel m = build_for(cfg, value, cutoff);
        const double t = 2.0 * kPi / std::sqrt(m.delta);
        const QuantumState psi0 = cfg.model == "qrm_effective"
                                      ? canonical_initial_state(m.space)
                                      : QuantumState::pure(m.space, [&] {
                                            Vector v = Vector::Zero(m.space.dim);
                                            v(0) = 1.0;
                                            return v;
                                        }());
        const QfiResult analytic = qfi_analytic(m, psi0, t);
        const QfiResult full = qfi_generator_full(m, psi0, t);
        const QfiResult exact = qfi_fidelity_exact(m, psi0, t);
        SweepRecord rec;
        rec.model = cfg.model;
        rec.g_or_lambda = value;
        rec.delta = (cfg.model == "qrm_effective") ? delta_g(value) : m.delta;
        rec.eta = 0.0;
        rec.time = t;
        rec.n = cfg.n;
        rec.mean = 0.0;
        rec.variance = analytic.var_d;
        rec.chi = 0.0;
        rec.inv_var = full.value;
        rec.qfi_analytic = analytic.value;
        rec.qfi_exact = exact.value;
        rec.cutoff = cutoff;
        rec.converged = converged;
        return rec;
    });
    return collect(std::move(outcomes));
}

RunResult run_finite_eta(const ExperimentConfig& cfg) {
    const double lo = cfg.grid_min > 0 ? cfg.grid_min : 0.5;
    const double hi = cfg.grid_max > 0 ? cfg.grid_max : 0.96;
    const int steps = cfg.grid_steps > 0 ? cfg.grid_steps : 10;
    const auto grid = linspace(lo, hi, steps);

    struct Task {
        double eta;
        double g;
    };
    std::vector<Task> tasks;
    for (double eta : cfg.etas)
        for (double g : grid) tasks.push_back({eta, g});

    std::vector<PointOutcome> outcomes;
    run_grid(int(tasks.size()), cfg.workers, outcomes, [&](int i) {
        const auto [eta, g] = tasks[i];
        const ProtocolPoint p =
            lab_inverted_variance(g, cfg.omega, eta, cfg.n, cfg.cutoff_policy());
        SweepRecord rec;
        rec.model = "qrm_full";
        rec.g_or_lambda = g;
        rec.delta = delta_g(g);
        rec.eta = eta;
        rec.time = p.time;
        rec.n = p.n;
        rec.mean = p.mean;
        rec.variance = p.variance;
        rec.chi = p.chi;
        rec.inv_var = p.inv_var;
        rec.qfi_analytic = 0.0;
        rec.qfi_exact = 0.0;
        rec.cutoff = p.cutoff;
        rec.converged = p.converged;
        return rec;
    });
    RunResult r = collect(std::move(outcomes));

    // optimal working point per eta (n = 0 marks the summary rows)
    std::vector<PointOutcome> opt(cfg.etas.size());
    run_grid(int(cfg.etas.size()), cfg.workers, opt, [&](int i) {
        const double eta = cfg.etas[i];
        const OptimalPoint o = finite_eta_optimal(cfg.omega, eta, cfg.n, cfg.cutoff_policy());
        SweepRecord rec;
        rec.model = "qrm_full";
        rec.g_or_lambda = o.g;
        rec.delta = o.delta;
        rec.eta = eta;
        rec.time = tau_n(o.g, cfg.omega, cfg.n);
        rec.n = 0;
        rec.inv_var = o.f_lab;
        rec.cutoff = o.cutoff;
        rec.converged = true;
        return rec;
    });
    std::vector<std::pair<double, double>> pts;
    for (auto& o : opt) {
        if (!o.error.empty()) {
            ++r.failures;
            r.notes.push_back("optimal-point search failed: " + o.error);
        } else {
            pts.emplace_back(o.record.eta, o.record.delta);
        }
        r.records.push_back(std::move(o.record));
    }
    if (pts.size() >= 4) {
        const ScalingFit fit = fit_powerlaw(pts);
        std::ostringstream os;
        os << "finite-eta: log Delta_opt vs log eta slope = " << fit.exponent
           << ", log10 intercept = " << fit.intercept / std::log(10.0)
           << " (r^2 = " << fit.r_squared << ")";
        r.notes.push_back(os.str());
    }
    return r;
}

RunResult run_noise(const ExperimentConfig& cfg) {
    const double lo = cfg.grid_min > 0 ? cfg.grid_min : 0.70;
    const double hi = cfg.grid_max > 0 ? cfg.grid_max : 0.92;
    const int steps = cfg.grid_steps > 0 ? cfg.grid_steps : 6;
    const auto grid = linspace(lo, hi, steps);

    struct Task {
        double gamma;
        double g;
    };
    std::vector<Task> tasks;
    for (double gamma : cfg.gammas)
        for (double g : grid) tasks.push_back({gamma, g});

    std::vector<PointOutcome> outcomes;
    run_grid(int(tasks.size()), cfg.workers, outcomes, [&](int i) {
        const auto [gamma, g] = tasks[i];
        SweepRecord rec;
        rec.g_or_lambda = g;
        rec.delta = delta_g(g);
        rec.n = cfg.n;
        rec.gamma = gamma;
        if (gamma == 0.0) {
            // ideal reference curve (effective model, eta -> infinity)
            const ProtocolPoint p = inverted_variance_quadrature(g, cfg.omega, cfg.n, nullptr,
                                                                 cfg.cutoff_policy());
            rec.model = "qrm_effective";
            rec.eta = 0.0;
            rec.time = p.time;
            rec.mean = p.mean;
            rec.variance = p.variance;
            rec.chi = p.chi;
            rec.inv_var = p.inv_var;
            rec.qfi_analytic = p.qfi_analytic;
            rec.qfi_exact = p.qfi_full;
            rec.cutoff = p.cutoff;
            rec.converged = p.converged;
            return rec;
        }
        const NoiseSpec noise =
            cfg.noise_explicit ? cfg.noise : NoiseSpec::scaled(gamma * cfg.omega);
        // cutoff stability judged at the integrator accuracy class, see README
        CutoffPolicy policy = cfg.cutoff_policy(1e-4);
        policy.initial = std::max(policy.initial, 24);
        policy.max = std::min(policy.max, 256);
        const ProtocolPoint p =
            noisy_inverted_variance(g, cfg.omega, cfg.eta, noise, cfg.n, policy);
        rec.model = "qrm_full";
        rec.eta = cfg.eta;
        rec.time = p.time;
        rec.mean = p.mean;
        rec.variance = p.variance;
        rec.chi = p.chi;
        rec.inv_var = p.inv_var;
        rec.cutoff = p.cutoff;
        rec.converged = p.converged;
        return rec;
    });
    RunResult r = collect(std::move(outcomes));

    for (double gamma : cfg.gammas) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& rec : r.records)
            if (rec.gamma == gamma && rec.converged && rec.inv_var > 0)
                pts.emplace_back(rec.delta,
                                 rec.inv_var / (rec.g_or_lambda * rec.g_or_lambda));
        if (pts.size() >= 4) {
            const ScalingFit fit = fit_powerlaw(pts);
            std::ostringstream os;
            os << "noise: Gamma = " << gamma << " reduced-F exponent alpha = "
               << -fit.exponent << " (r^2 = " << fit.r_squared << ")";
            r.notes.push_back(os.str());
        }
    }
    return r;
}

}  // namespace

ProtocolPoint lab_inverted_variance(double g, double omega, double eta, int n,
                                    const CutoffPolicy& policy, double chi_step) {
    if (g <= 0 || g >= 1) throw Error("lab_inverted_variance: requires 0 < g < 1");
    const double t = tau_n(g, omega, n);

    auto stats = [&](double gg, int cutoff) {
        const CriticalModel m = build_qrm_full(omega, eta, gg, cutoff);
        const QuantumState psi0 = canonical_initial_state(m.space);
        const QuantumState psit = evolve_pure(m.hamiltonian_op(), psi0, t);
        const LadderOps b = ladder_ops(m.space);
        struct Out {
            double mean, var;
            QuantumState state;
        };
        return Out{expect(b.x, psit).real(), variance(b.x, psit), psit};
    };

    int cutoff = policy.initial;
    bool converged = false;
    auto center = stats(g, cutoff);
    while (2 * cutoff <= policy.max) {
        auto next = stats(g, 2 * cutoff);
        const double change =
            std::abs(next.mean - center.mean) / std::max(1.0, std::abs(next.mean));
        const double edge = interior_weight(next.state, policy.interior_fraction);
        cutoff *= 2;
        center = std::move(next);
        if (change < policy.rel_tol && edge < policy.interior_tol) {
            converged = true;
            break;
        }
    }

    const double mp = stats(g + chi_step, cutoff).mean;
    const double mm = stats(g - chi_step, cutoff).mean;
    const double chi = (mp - mm) / (2.0 * chi_step);

    ProtocolPoint p;
    p.parameter = g;
    p.time = t;
    p.n = n;
    p.mean = center.mean;
    p.variance = center.var;
    p.chi = chi;
    p.inv_var = chi * chi / center.var;
    const double d = delta_g(g);
    p.f_closed_form = 32.0 * kPi * kPi * g * g * n * n / (d * d * d);
    p.cutoff = cutoff;
    p.converged = converged;
    return p;
}

OptimalPoint finite_eta_optimal(double omega, double eta, int n, const CutoffPolicy& policy) {
    // prior for the turnover location from the eta^(-1/3) validity boundary
    const double delta_prior = std::min(3.2, 3.37 * std::pow(eta, -0.358));
    auto g_of_delta = [](double d) { return std::sqrt(1.0 - d / 4.0); };

    double dlo = delta_prior / 2.2, dhi = std::min(3.9, delta_prior * 2.2);
    auto f_at = [&](double g) {
        return lab_inverted_variance(g, omega, eta, n, policy).inv_var;
    };

    // coarse bracket in Delta, expanded if the maximum sits on an edge
    std::vector<double> ds;
    std::vector<double> fs;
    auto scan = [&](int count) {
        ds.clear();
        fs.clear();
        for (int i = 0; i < count; ++i) {
            const double d = dlo * std::pow(dhi / dlo, double(i) / (count - 1));
            ds.push_back(d);
            fs.push_back(f_at(g_of_delta(d)));
        }
    };
    scan(9);
    for (int guard = 0; guard < 4; ++guard) {
        const int k = int(std::max_element(fs.begin(), fs.end()) - fs.begin());
        if (k == 0) {
            dlo /= 2.0;
            scan(9);
        } else if (k == int(fs.size()) - 1) {
            dhi = std::min(3.9, dhi * 2.0);
            scan(9);
        } else {
            break;
        }
    }

    // two rounds of local refinement, then a log-parabola through the top
    for (int round = 0; round < 2; ++round) {
        const int k = int(std::max_element(fs.begin(), fs.end()) - fs.begin());
        const double lo = ds[std::max(0, k - 1)];
        const double hi = ds[std::min<int>(ds.size() - 1, k + 1)];
        dlo = lo;
        dhi = hi;
        scan(7);
    }
    const int k = int(std::max_element(fs.begin(), fs.end()) - fs.begin());
    OptimalPoint out;
    if (k > 0 && k + 1 < int(ds.size())) {
        const double x0 = std::log(ds[k - 1]), x1 = std::log(ds[k]), x2 = std::log(ds[k + 1]);
        const double y0 = std::log(fs[k - 1]), y1 = std::log(fs[k]), y2 = std::log(fs[k + 1]);
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
        const double b =
            (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
        const double xv = (a < 0) ? -b / (2.0 * a) : x1;
        out.delta = std::exp(std::clamp(xv, x0, x2));
    } else {
        out.delta = ds[k];
    }
    out.g = g_of_delta(out.delta);
    const ProtocolPoint best = lab_inverted_variance(out.g, omega, eta, n, policy);
    out.f_lab = best.inv_var;
    out.cutoff = best.cutoff;
    return out;
}

RunResult run(const ExperimentConfig& config) {
    switch (config.experiment) {
        case ExperimentKind::Quadrature: return run_quadrature(config);
        case ExperimentKind::Loschmidt: return run_loschmidt(config);
        case ExperimentKind::Qfi: return run_qfi(config);
        case ExperimentKind::FiniteEta: return run_finite_eta(config);
        case ExperimentKind::Noise: return run_noise(config);
        case ExperimentKind::Validate: {
            RunResult r;
            for (const CheckResult& c : run_validation(config)) {
                if (!c.passed) ++r.failures;
                r.notes.push_back(std::string(c.passed ? "[PASS] " : "[FAIL] ") + c.name +
                                  (c.detail.empty() ? "" : " — " + c.detail));
            }
            return r;
        }
    }
    throw Error("run: unknown experiment");
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kHeader =
    "model,g_or_lambda,delta,eta,time,n,mean,variance,chi,inv_var,qfi_analytic,qfi_exact,"
    "cutoff,converged,gamma";

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << kHeader << "\n";
    for (const auto& r : records) {
        out << r.model << ',' << fmt17(r.g_or_lambda) << ',' << fmt17(r.delta) << ','
            << fmt17(r.eta) << ',' << fmt17(r.time) << ',' << r.n << ',' << fmt17(r.mean)
            << ',' << fmt17(r.variance) << ',' << fmt17(r.chi) << ',' << fmt17(r.inv_var)
            << ',' << fmt17(r.qfi_analytic) << ',' << fmt17(r.qfi_exact) << ',' << r.cutoff
            << ',' << (r.converged ? "true" : "false") << ',' << fmt17(r.gamma) << "\n";
    }
}

void emit_json(const std::vector<SweepRecord>& records, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back({{"model", r.model},
                       {"g_or_lambda", r.g_or_lambda},
                       {"delta", r.delta},
                       {"eta", r.eta},
                       {"time", r.time},
                       {"n", r.n},
                       {"mean", r.mean},
                       {"variance", r.variance},
                       {"chi", r.chi},
                       {"inv_var", r.inv_var},
                       {"qfi_analytic", r.qfi_analytic},
                       {"qfi_exact", r.qfi_exact},
                       {"cutoff", r.cutoff},
                       {"converged", r.converged},
                       {"gamma", r.gamma}});
    }
    out << arr.dump(2) << "\n";
}

void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          const std::string& path) {
    const auto write = [&](std::ostream& out) {
        if (format == OutputFormat::Csv)
            emit_csv(records, out);
        else
            emit_json(records, out);
        if (!out) throw Error("emit: write failed for '" + path + "'");
    };
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("emit: cannot open '" + path + "' for writing");
    write(out);
}

std::vector<SweepRecord> parse_csv(std::istream& in) {
    std::vector<SweepRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    if (line != kHeader) throw Error("parse_csv: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 15) throw Error("parse_csv: bad column count");
        SweepRecord r;
        r.model = cells[0];
        r.g_or_lambda = std::stod(cells[1]);
        r.delta = std::stod(cells[2]);
        r.eta = std::stod(cells[3]);
        r.time = std::stod(cells[4]);
        r.n = std::stoi(cells[5]);
        r.mean = std::stod(cells[6]);
        r.variance = std::stod(cells[7]);
        r.chi = std::stod(cells[8]);
        r.inv_var = std::stod(cells[9]);
        r.qfi_analytic = std::stod(cells[10]);
        r.qfi_exact = std::stod(cells[11]);
        r.cutoff = std::stoi(cells[12]);
        r.converged = cells[13] == "true";
        r.gamma = std::stod(cells[14]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<SweepRecord> parse_json(std::istream& in) {
    nlohmann::json arr = nlohmann::json::parse(in);
    std::vector<SweepRecord> records;
    for (const auto& j : arr) {
        SweepRecord r;
        r.model = j.at("model").get<std::string>();
        r.g_or_lambda = j.at("g_or_lambda").get<double>();
        r.delta = j.at("delta").get<double>();
        r.eta = j.at("eta").get<double>();
        r.time = j.at("time").get<double>();
        r.n = j.at("n").get<int>();
        r.mean = j.at("mean").get<double>();
        r.variance = j.at("variance").get<double>();
        r.chi = j.at("chi").get<double>();
        r.inv_var = j.at("inv_var").get<double>();
        r.qfi_analytic = j.at("qfi_analytic").get<double>();
        r.qfi_exact = j.at("qfi_exact").get<double>();
        r.cutoff = j.at("cutoff").get<int>();
        r.converged = j.at("converged").get<bool>();
        r.gamma = j.at("gamma").get<double>();
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace cqs

#include "cqs/protocols.hpp"

#include <cmath>
#include <limits>

namespace cqs {

namespace {

double delta_g(double g) { return 4.0 * (1.0 - g * g); }

void require_normal_phase(double g, const char* what) {
    if (g <= 0.0 || g >= 1.0) throw Error(std::string(what) + ": requires 0 < g < 1");
}

struct QuadSim {
    double mean;
    double var;
    QuantumState final_state;
};

QuadSim simulate_quadrature(double g, double omega, double t, int cutoff,
                            const QuantumState* initial) {
    const CriticalModel model = build_qrm_effective(omega, g, cutoff);
    QuantumState psi0 = initial ? *initial : canonical_initial_state(model.space);
    if (!(psi0.space == model.space)) {
        // lift/truncate a boson state prepared at another cutoff
        if (psi0.space.kind != SpaceKind::Boson)
            throw Error("quadrature: initial state must live on a boson space");
        Vector v = Vector::Zero(model.space.dim);
        const int copy = std::min<int>(psi0.vector.size(), model.space.dim);
        v.head(copy) = psi0.vector.head(copy);
        v.normalize();
        psi0 = QuantumState::pure(model.space, std::move(v));
    }
    QuantumState psi = evolve_pure(model.hamiltonian_op(), psi0, t);
    const LadderOps b = ladder_ops(model.space);
    const double mean = expect(b.x, psi).real();
    const double var = variance(b.x, psi);
    return {mean, var, std::move(psi)};
}

/// Doubles the cutoff until the scalar reported by `eval` is stable and the
/// final state has negligible weight near the truncation edge.
template <typename Eval>  // Eval: int cutoff -> std::pair<double, QuantumState>
std::pair<int, bool> certify_cutoff(const CutoffPolicy& policy, Eval&& eval) {
    int cutoff = policy.initial;
    auto [value, state] = eval(cutoff);
    while (2 * cutoff <= policy.max) {
        auto [value2, state2] = eval(2 * cutoff);
        const double change = std::abs(value2 - value) / std::max(1.0, std::abs(value2));
        const double edge = interior_weight(state2, policy.interior_fraction);
        if (change < policy.rel_tol && edge < policy.interior_tol)
            return {2 * cutoff, true};
        cutoff *= 2;
        value = value2;
        state = std::move(state2);
    }
    return {cutoff, false};
}

}  // namespace

QuantumState canonical_initial_state(const SpaceDescriptor& space) {
    if (!space.has_boson()) throw Error("canonical_initial_state: needs a boson factor");
    const int db = space.boson_dim();
    Vector boson = Vector::Zero(db);
    boson(0) = 1.0 / std::sqrt(2.0);
    boson(1) = Complex(0.0, 1.0 / std::sqrt(2.0));
    if (space.kind == SpaceKind::Boson) return QuantumState::pure(space, std::move(boson));
    Vector v = Vector::Zero(space.dim);
    v.tail(db) = boson;  // spin-down block
    return QuantumState::pure(space, std::move(v));
}

QuadratureStats quadrature_closed_form(double g, double omega, double t) {
    require_normal_phase(g, "quadrature_closed_form");
    const double d = delta_g(g);
    const double s = std::sqrt(d) * omega * t;
    QuadratureStats q;
    q.time = t;
    q.source = StatsSource::ClosedForm;
    q.mean_x = std::sqrt(2.0) / std::sqrt(d) * std::sin(s / 2.0);
    q.var_x = 1.0 + (2.0 * g * g - 1.0) / d * (1.0 - std::cos(s));
    return q;
}

QuadratureStats quadrature_simulated(double g, double omega, double t, int cutoff,
                                     const QuantumState* initial) {
    const QuadSim sim = simulate_quadrature(g, omega, t, cutoff, initial);
    QuadratureStats q;
    q.time = t;
    q.source = StatsSource::Simulated;
    q.mean_x = sim.mean;
    q.var_x = sim.var;
    return q;
}

double tau_n(double g, double omega, int n) {
    require_normal_phase(g, "tau_n");
    if (n < 1) throw Error("tau_n: n must be >= 1");
    return 2.0 * n * kPi / (std::sqrt(delta_g(g)) * omega);
}

double susceptibility(const std::function<double(double, double)>& observable, double param,
                      double t, double delta0) {
    if (delta0 <= 0) delta0 = 1e-5 * std::max(std::abs(param), 1.0);
    auto central = [&](double h) {
        const double hi = observable(param + h, t);
        const double lo = observable(param - h, t);
        if (!std::isfinite(hi) || !std::isfinite(lo))
            throw Error("susceptibility: non-finite observable");
        return (hi - lo) / (2.0 * h);
    };
    double step = delta0;
    double d1 = central(step);
    double best = d1;
    double best_diff = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 8; ++k) {
        const double d2 = central(step / 2.0);
        const double diff = std::abs(d2 - d1);
        const double extrap = (4.0 * d2 - d1) / 3.0;
        if (diff < best_diff) {
            best = extrap;
            best_diff = diff;
        }
        if (diff <= 1e-6 * std::max(std::abs(d2), 1e-12)) return extrap;
        d1 = d2;
        step /= 2.0;
    }
    return best;
}

ProtocolPoint inverted_variance_quadrature(double g, double omega, int n,
                                           const QuantumState* initial,
                                           const CutoffPolicy& policy) {
    require_normal_phase(g, "inverted_variance_quadrature");
    const double t = tau_n(g, omega, n);

    // certify against the squeezing peak as well: at the revival itself the
    // state has returned and would hide a too-small cutoff
    const double t_probe = t * (2.0 * n - 1.0) / (2.0 * n);
    auto eval = [&](int cutoff) {
        const QuadSim peak = simulate_quadrature(g, omega, t_probe, cutoff, initial);
        const QuadSim sim = simulate_quadrature(g, omega, t, cutoff, initial);
        return std::pair<double, QuantumState>(sim.var + peak.var, peak.final_state);
    };
    const auto [cutoff, converged] = certify_cutoff(policy, eval);

    const QuadSim center = simulate_quadrature(g, omega, t, cutoff, initial);
    const double chi = susceptibility(
        [&](double gg, double tt) {
            return simulate_quadrature(gg, omega, tt, cutoff, initial).mean;
        },
        g, t);

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
    const CriticalModel model = build_qrm_effective(omega, g, cutoff);
    const QuantumState psi0 =
        initial ? simulate_quadrature(g, omega, 0.0, cutoff, initial).final_state
                : canonical_initial_state(model.space);
    p.qfi_analytic = qfi_analytic(model, psi0, t).value;
    p.qfi_full = qfi_generator_full(model, psi0, t).value;
    p.cutoff = cutoff;
    p.converged = converged;
    return p;
}

ProtocolPoint frequency_inverted_variance(double g, double omega, int n,
                                          const CutoffPolicy& policy) {
    require_normal_phase(g, "frequency_inverted_variance");
    const double t = tau_n(g, omega, n);
    const double phase = omega * t;  // held fixed while omega is varied

    // coupling and qubit splitting held: g' = g sqrt(omega/omega')
    auto mean_at = [&](double om, int cutoff) {
        const double gp = g * std::sqrt(omega / om);
        return simulate_quadrature(gp, om, phase / om, cutoff, nullptr);
    };

    auto eval = [&](int cutoff) {
        const QuadSim peak =
            simulate_quadrature(g, omega, t * (2.0 * n - 1.0) / (2.0 * n), cutoff, nullptr);
        const QuadSim sim = mean_at(omega, cutoff);
        return std::pair<double, QuantumState>(sim.var + peak.var, peak.final_state);
    };
    const auto [cutoff, converged] = certify_cutoff(policy, eval);

    const QuadSim center = mean_at(omega, cutoff);
    const double chi = susceptibility(
        [&](double om, double) { return mean_at(om, cutoff).mean; }, omega, t,
        1e-5 * omega);

    ProtocolPoint p;
    p.parameter = g;
    p.time = t;
    p.n = n;
    p.mean = center.mean;
    p.variance = center.var;
    p.chi = chi;
    p.inv_var = chi * chi / center.var;
    const double d = delta_g(g);
    p.f_closed_form = 2.0 * std::pow(g, 4) / (d * d) * t * t;

    // peak excitation gained over one protocol period
    const CriticalModel model = build_qrm_effective(omega, g, cutoff);
    const HermitianPropagator prop(model.hamiltonian_op());
    const LadderOps b = ladder_ops(model.space);
    const QuantumState psi0 = canonical_initial_state(model.space);
    const double n0 = expect(b.number, psi0).real();
    double peak = 0.0;
    const int samples = 64;
    for (int k = 1; k <= samples; ++k) {
        const Vector v = prop.apply(psi0.vector, t * k / samples);
        const double nk = v.dot(b.number.matrix * v).real();
        peak = std::max(peak, nk - n0);
    }
    p.excitation_gain = peak;
    p.heisenberg_ratio = p.inv_var / (peak * peak * t * t);
    p.cutoff = cutoff;
    p.converged = converged;
    return p;
}

std::vector<WorkingPoint> working_points(int m_max, double omega) {
    if (m_max < 1) throw Error("working_points: m_max must be >= 1");
    std::vector<WorkingPoint> out;
    out.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
        const double r = m + 0.5;
        WorkingPoint wp;
        wp.branch = m;
        wp.r_value = r;
        wp.g = std::sqrt((r * r - 1.0) / (r * r + 1.0));
        wp.tau = 4.0 * kPi / (std::sqrt(delta_g(wp.g)) * omega);
        out.push_back(wp);
    }
    return out;
}

namespace {

Complex loschmidt_amplitude(double g, double omega, const Vector& phi, double t, int cutoff) {
    const CriticalModel model = build_qrm_effective(omega, g, cutoff);
    const auto [h_up, h_dn] = conditioned_hamiltonians(model);
    const Vector up = HermitianPropagator(h_up).apply(phi, t);
    const Vector dn = HermitianPropagator(h_dn).apply(phi, t);
    return up.dot(dn);
}

Vector embed_boson(const QuantumState& phi_b, int cutoff) {
    if (phi_b.space.kind != SpaceKind::Boson || phi_b.kind != StateKind::Pure)
        throw Error("loschmidt: phi_b must be a pure boson state");
    Vector v = Vector::Zero(cutoff + 1);
    const int copy = std::min<int>(phi_b.vector.size(), cutoff + 1);
    v.head(copy) = phi_b.vector.head(copy);
    v.normalize();
    return v;
}

}  // namespace

LoschmidtResult loschmidt(double g, double omega, const QuantumState& phi_b, Complex c_up,
                          Complex c_down, double t, const CutoffPolicy& policy) {
    require_normal_phase(g, "loschmidt");
    if (std::abs(std::norm(c_up) + std::norm(c_down) - 1.0) > 1e-10)
        throw Error("loschmidt: qubit amplitudes must satisfy |c_up|^2 + |c_down|^2 = 1");

    auto eval = [&](int cutoff) {
        const Vector phi = embed_boson(phi_b, cutoff);
        // probe the amplitude at the half time as well; revival times alone
        // would certify before the mid-period squeezing has converged
        const Complex g_half = loschmidt_amplitude(g, omega, phi, 0.5 * t, cutoff);
        const Complex g_full = loschmidt_amplitude(g, omega, phi, t, cutoff);
        const CriticalModel model = build_qrm_effective(omega, g, cutoff);
        const auto [h_up, h_dn] = conditioned_hamiltonians(model);
        const Vector dn = HermitianPropagator(h_dn).apply(phi, 0.5 * t);
        QuantumState out = QuantumState::pure(model.space, dn);
        return std::pair<double, QuantumState>(std::abs(g_half) + g_full.real(),
                                               std::move(out));
    };
    const auto [cutoff, converged] = certify_cutoff(policy, eval);

    const Vector phi = embed_boson(phi_b, cutoff);
    const Complex amp = loschmidt_amplitude(g, omega, phi, t, cutoff);
    const Complex weight = 2.0 * std::conj(c_up) * c_down;
    const double sx = (weight * amp).real();

    const double chi = susceptibility(
        [&](double gg, double tt) {
            return (weight * loschmidt_amplitude(gg, omega, phi, tt, cutoff)).real();
        },
        g, t, 1e-6);

    LoschmidtResult r;
    r.amplitude = amp;
    r.sigma_x = sx;
    r.var_sigma_x = 1.0 - sx * sx;  // sigma_x^2 = 1
    r.chi = chi;
    r.inv_var = chi * chi / r.var_sigma_x;
    r.cutoff = cutoff;
    r.converged = converged;
    return r;
}

double loschmidt_qfi(double g, double omega, const QuantumState& phi_b, Complex c_up,
                     Complex c_down, double t, int cutoff) {
    const Vector phi = embed_boson(phi_b, cutoff);
    auto composite = [&](double gg) {
        const CriticalModel model = build_qrm_effective(omega, gg, cutoff);
        const auto [h_up, h_dn] = conditioned_hamiltonians(model);
        Vector v(2 * (cutoff + 1));
        v.head(cutoff + 1) = c_up * HermitianPropagator(h_up).apply(phi, t);
        v.tail(cutoff + 1) = c_down * HermitianPropagator(h_dn).apply(phi, t);
        return v;
    };
    const Vector base = composite(g);
    double step = 1e-4;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < 20; ++k) {
        const double deficit = 1.0 - std::abs(base.dot(composite(g + step)));
        const double value = 8.0 * deficit / (step * step);
        if (deficit < 1e-12) return value;
        if (!std::isnan(prev) && std::abs(value - prev) <= 2e-3 * std::abs(value))
            return (4.0 * value - prev) / 3.0;
        prev = value;
        step *= 0.5;
    }
    throw Error("loschmidt_qfi: no quadratic regime reached");
}

}  // namespace cqs

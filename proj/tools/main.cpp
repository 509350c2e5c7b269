// Command-line front end: simulate forced linear oscillators, check
// invariant drift, verify the defining transport equation, sweep the
// resonance curve, and dump particular solutions as CSV/JSON.

#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "comotion/integrate.hpp"
#include "comotion/invariants.hpp"
#include "comotion/particular.hpp"
#include "comotion/system.hpp"
#include "comotion/verify.hpp"

namespace {

using nlohmann::json;
using namespace comotion;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    double m = 1.0;
    double omega = 1.0;
    double lambda = 0.0;
    double amp = 0.0;
    double cap_omega = 0.0;
    double x0 = 1.0;
    double v0 = 0.0;
    double t_start = 0.0;
    double t_end = 10.0;
    double dt = 1e-3;
    std::string method = "rk4";
    std::string invariant = "auto";
    std::string policy = "unwrapped";
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::string out;
    double eps_res = kDefaultEpsRes;
    double eps_crit = kDefaultEpsCrit;
    double drift_floor = kDriftFloor;
    // sweep
    double omega_min = 0.5;
    double omega_max = 1.5;
    std::size_t sweep_points = 21;
    // verify-pde
    std::size_t pde_points = 20;
    std::vector<double> h_list = {1e-2, 5e-3, 2.5e-3};
    bool numeric_particular = false;
};

void apply_json(const json& j, RunConfig& c) {
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("m", c.m);
    get("omega", c.omega);
    get("lambda", c.lambda);
    get("amp", c.amp);
    get("cap_omega", c.cap_omega);
    get("x0", c.x0);
    get("v0", c.v0);
    get("t_start", c.t_start);
    get("t_end", c.t_end);
    get("dt", c.dt);
    get("method", c.method);
    get("invariant", c.invariant);
    get("policy", c.policy);
    get("format", c.format);
    get("seed", c.seed);
    get("out", c.out);
    get("eps_res", c.eps_res);
    get("eps_crit", c.eps_crit);
    get("drift_floor", c.drift_floor);
    get("omega_min", c.omega_min);
    get("omega_max", c.omega_max);
    get("sweep_points", c.sweep_points);
    get("pde_points", c.pde_points);
    get("h_list", c.h_list);
    get("numeric_particular", c.numeric_particular);
}

// --config is applied before flag parsing so that flags win.
void preload_config(int argc, char** argv, RunConfig& c) {
    for (int i = 1; i + 1 < argc || i < argc; ++i) {
        if (std::string(argv[i]) != "--config") continue;
        if (i + 1 >= argc) throw std::invalid_argument("config: missing path after --config");
        const std::string path = argv[i + 1];
        json j;
        if (path == "-") {
            std::cin >> j;
        } else {
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("config: cannot open " + path);
            in >> j;
        }
        apply_json(j, c);
        return;
    }
}

OscillatorParams params_of(const RunConfig& c) {
    OscillatorParams p{c.m, c.omega, c.lambda, c.amp, c.cap_omega};
    p.validate();
    return p;
}

TimeGrid grid_of(const RunConfig& c) { return {c.t_start, c.t_end, c.dt}; }

Method method_of(const RunConfig& c) {
    if (c.method == "rk4") return Method::RK4;
    if (c.method == "rk45") return Method::RK45;
    throw std::invalid_argument("config field 'method' must be rk4 or rk45");
}

AnglePolicy policy_of(const RunConfig& c) {
    if (c.policy == "principal") return AnglePolicy::PrincipalBranch;
    if (c.policy == "unwrapped") return AnglePolicy::Unwrapped;
    throw std::invalid_argument("config field 'policy' must be principal or unwrapped");
}

std::string auto_kind(const RunConfig& c, const OscillatorParams& p) {
    if (p.lambda > 0.0) return "damped";
    return in_resonance_band(p, c.eps_res) ? "resonant" : "nonresonant";
}

InvariantEvaluator invariant_of(const RunConfig& c, const OscillatorParams& p) {
    std::string kind = c.invariant == "auto" ? auto_kind(c, p) : c.invariant;
    const AnglePolicy policy = policy_of(c);
    if (kind == "nonresonant") return k_undamped_forced_nonresonant(p, c.eps_res);
    if (kind == "resonant") return k_undamped_forced_resonant(p);
    if (kind == "damped") return k_damped_forced(p, policy);
    if (kind == "weak") return k_weak_dissipation(p, policy);
    if (kind == "energy") return energy_invariant(p);
    throw std::invalid_argument(
        "config field 'invariant' must be one of auto, nonresonant, resonant, "
        "damped, weak, energy");
}

// Locale-independent, round-trip-safe double formatting.
std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("config field 'out': cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int cmd_simulate(const RunConfig& c) {
    const OscillatorParams p = params_of(c);
    const ForcedLinearSystem system = to_system(p);
    const Trajectory traj = integrate(system, c.x0, c.v0, grid_of(c), method_of(c));
    const InvariantEvaluator inv = invariant_of(c, p);
    const DriftReport report = drift(inv, traj, c.drift_floor);

    Output out(c.out);
    std::ostream& os = out.stream();
    os << "t,x,v,K,rel_drift\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double k = report.k_values[i];
        const double rel = std::isnan(k) ? k : std::abs(k - report.k0) / report.scale;
        os << num(traj.times[i]) << ',' << num(traj.states[i].x) << ','
           << num(traj.states[i].v) << ',' << num(k) << ',' << num(rel) << '\n';
    }
    return kExitOk;
}

int cmd_drift(const RunConfig& c) {
    const OscillatorParams p = params_of(c);
    const ForcedLinearSystem system = to_system(p);
    const Trajectory traj = integrate(system, c.x0, c.v0, grid_of(c), method_of(c));
    const InvariantEvaluator inv = invariant_of(c, p);
    DriftReport report = drift(inv, traj, c.drift_floor);
    report.k_values.clear();  // keep the emitted document small
    json j = to_json(report);
    j["invariant"] = c.invariant == "auto" ? auto_kind(c, p) : c.invariant;
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_verify_pde(const RunConfig& c) {
    const OscillatorParams p = params_of(c);
    const ForcedLinearSystem system = to_system(p);
    const InvariantEvaluator inv = invariant_of(c, p);
    const ResidualReport report =
        residual_study(inv, system, c.pde_points, c.h_list, c.seed);
    json j = to_json(report);
    j["invariant"] = c.invariant == "auto" ? auto_kind(c, p) : c.invariant;
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const RunConfig& c) {
    if (!(c.omega_max > c.omega_min))
        throw std::invalid_argument("config field 'omega_max' must exceed omega_min");
    if (c.sweep_points < 2)
        throw std::invalid_argument("config field 'sweep_points' must be >= 2");

    Output out(c.out);
    std::ostream& os = out.stream();
    os << "Omega,max_amplitude,max_rel_drift\n";
    for (std::size_t i = 0; i < c.sweep_points; ++i) {
        const double om = c.omega_min + (c.omega_max - c.omega_min) *
                                            static_cast<double>(i) /
                                            static_cast<double>(c.sweep_points - 1);
        RunConfig ci = c;
        ci.cap_omega = om;
        const OscillatorParams p = params_of(ci);
        // Resonance band of the undamped formulas: annotate, don't integrate.
        if (p.lambda == 0.0 && in_resonance_band(p, c.eps_res)) {
            os << num(om) << ",excluded,excluded\n";
            continue;
        }
        const ForcedLinearSystem system = to_system(p);
        const Trajectory traj =
            integrate(system, ci.x0, ci.v0, grid_of(ci), method_of(ci));
        double max_amp = 0.0;
        for (const State& s : traj.states) max_amp = std::max(max_amp, std::abs(s.x));
        const DriftReport report = drift(invariant_of(ci, p), traj, c.drift_floor);
        os << num(om) << ',' << num(max_amp) << ',' << num(report.max_rel_drift)
           << '\n';
    }
    return kExitOk;
}

int cmd_particular(const RunConfig& c) {
    const OscillatorParams p = params_of(c);
    ParticularSolution ps;
    if (c.numeric_particular)
        ps = particular_solution_numeric(to_system(p), grid_of(c));
    else
        ps = particular_solution_sinusoidal(p, c.eps_res);
    const TimeGrid grid = grid_of(c);
    Output out(c.out);
    std::ostream& os = out.stream();
    os << "t,alpha,beta\n";
    for (std::size_t i = 0, n = grid.size(); i < n; ++i) {
        const double t = grid.time(i);
        os << num(t) << ',' << num(ps.alpha(t)) << ',' << num(ps.beta(t)) << '\n';
    }
    return kExitOk;
}

void add_common_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--config", "JSON config file, '-' for stdin")
        ->expected(1);  // consumed by preload_config; declared so parsing accepts it
    cmd->add_option("--m", c.m);
    cmd->add_option("--omega", c.omega);
    cmd->add_option("--lambda", c.lambda);
    cmd->add_option("--amp", c.amp);
    cmd->add_option("--cap-omega", c.cap_omega);
    cmd->add_option("--x0", c.x0);
    cmd->add_option("--v0", c.v0);
    cmd->add_option("--t-start", c.t_start);
    cmd->add_option("--t-end", c.t_end);
    cmd->add_option("--dt", c.dt);
    cmd->add_option("--method", c.method, "rk4|rk45");
    cmd->add_option("--invariant", c.invariant,
                    "auto|nonresonant|resonant|damped|weak|energy");
    cmd->add_option("--policy", c.policy, "principal|unwrapped");
    cmd->add_option("--format", c.format, "csv|json");
    cmd->add_option("--seed", c.seed);
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--eps-res", c.eps_res);
    cmd->add_option("--eps-crit", c.eps_crit);
    cmd->add_option("--drift-floor", c.drift_floor);
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"constants of motion for forced linear oscillators"};
    app.require_subcommand(1);

    RunConfig c;
    try {
        preload_config(argc, argv, c);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    auto* simulate = app.add_subcommand("simulate", "integrate and emit t,x,v,K,rel_drift");
    add_common_flags(simulate, c);
    auto* drift_cmd = app.add_subcommand("drift", "emit a JSON drift report");
    add_common_flags(drift_cmd, c);
    auto* verify = app.add_subcommand("verify-pde", "emit a JSON residual-order report");
    add_common_flags(verify, c);
    verify->add_option("--points", c.pde_points, "number of sample points");
    verify->add_option("--h-list", c.h_list, "finite-difference steps");
    auto* sweep = app.add_subcommand("sweep", "emit Omega,max_amplitude,max_rel_drift");
    add_common_flags(sweep, c);
    sweep->add_option("--omega-min", c.omega_min);
    sweep->add_option("--omega-max", c.omega_max);
    sweep->add_option("--points", c.sweep_points, "number of sweep points");
    auto* particular = app.add_subcommand("particular", "emit t,alpha,beta samples");
    add_common_flags(particular, c);
    particular->add_flag("--numeric", c.numeric_particular,
                         "use the numeric particular solution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(c);
        if (drift_cmd->parsed()) return cmd_drift(c);
        if (verify->parsed()) return cmd_verify_pde(c);
        if (sweep->parsed()) return cmd_sweep(c);
        if (particular->parsed()) return cmd_particular(c);
    } catch (const NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << " at t=" << e.t_fail << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

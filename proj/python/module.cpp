#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "comotion/integrate.hpp"
#include "comotion/invariants.hpp"
#include "comotion/particular.hpp"
#include "comotion/system.hpp"
#include "comotion/verify.hpp"

namespace py = pybind11;
using namespace comotion;

PYBIND11_MODULE(_comotion, m) {
    m.doc() = "Constants of motion for forced one-dimensional linear systems";

    py::register_exception<SingularEvaluation>(m, "SingularEvaluation");
    py::register_exception<NumericalAbort>(m, "NumericalAbort");

    py::enum_<DampingKind>(m, "DampingKind")
        .value("Underdamped", DampingKind::Underdamped)
        .value("Critical", DampingKind::Critical)
        .value("Overdamped", DampingKind::Overdamped);

    py::enum_<SolutionProvenance>(m, "SolutionProvenance")
        .value("ClosedFormNonResonant", SolutionProvenance::ClosedFormNonResonant)
        .value("ClosedFormResonant", SolutionProvenance::ClosedFormResonant)
        .value("ClosedFormDamped", SolutionProvenance::ClosedFormDamped)
        .value("Numeric", SolutionProvenance::Numeric);

    py::enum_<SinusoidalForm>(m, "SinusoidalForm")
        .value("Auto", SinusoidalForm::Auto)
        .value("NonResonant", SinusoidalForm::NonResonant)
        .value("Resonant", SinusoidalForm::Resonant);

    py::enum_<InvariantKind>(m, "InvariantKind")
        .value("UndampedNonResonant", InvariantKind::UndampedNonResonant)
        .value("UndampedResonant", InvariantKind::UndampedResonant)
        .value("DampedExact", InvariantKind::DampedExact)
        .value("WeakDissipation", InvariantKind::WeakDissipation)
        .value("Composed", InvariantKind::Composed)
        .value("AutonomousOnly", InvariantKind::AutonomousOnly);

    py::enum_<AnglePolicy>(m, "AnglePolicy")
        .value("PrincipalBranch", AnglePolicy::PrincipalBranch)
        .value("Unwrapped", AnglePolicy::Unwrapped);

    py::enum_<CriticalBranchSign>(m, "CriticalBranchSign")
        .value("Adjudicated", CriticalBranchSign::Adjudicated)
        .value("AsPrinted", CriticalBranchSign::AsPrinted);

    py::enum_<Method>(m, "Method")
        .value("RK4", Method::RK4)
        .value("RK45", Method::RK45);

    py::class_<OscillatorParams>(m, "OscillatorParams")
        .def(py::init([](double m_, double omega, double lambda, double amp,
                         double cap_omega) {
                 OscillatorParams p{m_, omega, lambda, amp, cap_omega};
                 p.validate();
                 return p;
             }),
             py::arg("m") = 1.0, py::arg("omega") = 1.0, py::arg("lambda") = 0.0,
             py::arg("amp") = 0.0, py::arg("cap_omega") = 0.0)
        .def_readwrite("m", &OscillatorParams::m)
        .def_readwrite("omega", &OscillatorParams::omega)
        .def_readwrite("lambda_", &OscillatorParams::lambda)
        .def_readwrite("amp", &OscillatorParams::amp)
        .def_readwrite("cap_omega", &OscillatorParams::cap_omega);

    py::class_<ForcedLinearSystem>(m, "ForcedLinearSystem")
        .def(py::init([](double a, double b, ForcingFn f) {
                 return ForcedLinearSystem{a, b, std::move(f)};
             }),
             py::arg("a"), py::arg("b"), py::arg("forcing") = nullptr)
        .def_readwrite("a", &ForcedLinearSystem::a)
        .def_readwrite("b", &ForcedLinearSystem::b)
        .def("force", &ForcedLinearSystem::force)
        .def("acceleration", &ForcedLinearSystem::acceleration);

    m.def("to_system", &to_system);

    py::class_<DampingRegime>(m, "DampingRegime")
        .def_readonly("kind", &DampingRegime::kind)
        .def_readonly("discriminant", &DampingRegime::discriminant);

    m.def("classify_damping", &classify_damping, py::arg("params"),
          py::arg("eps_crit") = kDefaultEpsCrit);

    py::class_<ParticularSolution>(m, "ParticularSolution")
        .def("alpha", [](const ParticularSolution& p, double t) { return p.alpha(t); })
        .def("beta", [](const ParticularSolution& p, double t) { return p.beta(t); })
        .def("alpha_ddot",
             [](const ParticularSolution& p, double t) { return p.alpha_ddot(t); })
        .def_readonly("provenance", &ParticularSolution::provenance);

    m.def("particular_solution_sinusoidal", &particular_solution_sinusoidal,
          py::arg("params"), py::arg("eps_res") = kDefaultEpsRes,
          py::arg("form") = SinusoidalForm::Auto);
    m.def("beta_closed_form", &beta_closed_form, py::arg("t"), py::arg("params"),
          py::arg("eps_res") = kDefaultEpsRes);
    m.def("g_function", &g_function, py::arg("xi"), py::arg("params"),
          py::arg("eps_crit") = kDefaultEpsCrit,
          py::arg("sign") = CriticalBranchSign::Adjudicated);

    py::class_<WindingState>(m, "WindingState")
        .def(py::init<>())
        .def_readwrite("primed", &WindingState::primed)
        .def_readwrite("angle", &WindingState::angle);

    py::class_<InvariantEvaluator>(m, "InvariantEvaluator")
        .def("__call__",
             [](const InvariantEvaluator& e, double x, double v, double t) {
                 return e.eval(x, v, t);
             })
        .def("eval_tracked",
             [](const InvariantEvaluator& e, double x, double v, double t,
                WindingState& ws) { return e.eval_tracked(x, v, t, ws); })
        .def_readonly("kind", &InvariantEvaluator::kind)
        .def_readonly("angle_policy", &InvariantEvaluator::angle_policy)
        .def_readonly("normalization", &InvariantEvaluator::normalization);

    m.def("energy_invariant", &energy_invariant);
    m.def("k_autonomous_damped", &k_autonomous_damped, py::arg("params"),
          py::arg("policy") = AnglePolicy::PrincipalBranch,
          py::arg("sign") = CriticalBranchSign::Adjudicated);
    m.def("k_undamped_forced_nonresonant", &k_undamped_forced_nonresonant,
          py::arg("params"), py::arg("eps_res") = kDefaultEpsRes);
    m.def("k_undamped_forced_resonant", &k_undamped_forced_resonant);
    m.def("k_damped_forced", &k_damped_forced, py::arg("params"),
          py::arg("policy") = AnglePolicy::PrincipalBranch,
          py::arg("sign") = CriticalBranchSign::Adjudicated);
    m.def("k_weak_dissipation", &k_weak_dissipation, py::arg("params"),
          py::arg("policy") = AnglePolicy::PrincipalBranch);
    m.def("shift_invariant", &shift_invariant);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init([](double t_start, double t_end, double h) {
                 return TimeGrid{t_start, t_end, h};
             }),
             py::arg("t_start"), py::arg("t_end"), py::arg("h"))
        .def_readwrite("t_start", &TimeGrid::t_start)
        .def_readwrite("t_end", &TimeGrid::t_end)
        .def_readwrite("h", &TimeGrid::h)
        .def("size", &TimeGrid::size);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_property_readonly("x",
                               [](const Trajectory& t) {
                                   std::vector<double> out;
                                   out.reserve(t.states.size());
                                   for (auto s : t.states) out.push_back(s.x);
                                   return out;
                               })
        .def_property_readonly("v", [](const Trajectory& t) {
            std::vector<double> out;
            out.reserve(t.states.size());
            for (auto s : t.states) out.push_back(s.v);
            return out;
        });

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("abs_tol", &Tolerances::abs_tol)
        .def_readwrite("rel_tol", &Tolerances::rel_tol);
    m.def("integrate", &integrate, py::arg("system"), py::arg("x0"), py::arg("v0"),
          py::arg("grid"), py::arg("method") = Method::RK4,
          py::arg("tol") = Tolerances{});
    m.def("particular_solution_numeric", &particular_solution_numeric);

    py::class_<Arc>(m, "Arc")
        .def_readonly("begin", &Arc::begin)
        .def_readonly("end", &Arc::end)
        .def_readonly("k_ref", &Arc::k_ref)
        .def_readonly("max_abs_drift", &Arc::max_abs_drift)
        .def_readonly("max_rel_drift", &Arc::max_rel_drift);

    py::class_<DriftReport>(m, "DriftReport")
        .def_readonly("k_values", &DriftReport::k_values)
        .def_readonly("k0", &DriftReport::k0)
        .def_readonly("max_abs_drift", &DriftReport::max_abs_drift)
        .def_readonly("max_rel_drift", &DriftReport::max_rel_drift)
        .def_readonly("scale", &DriftReport::scale)
        .def_readonly("policy", &DriftReport::policy)
        .def_readonly("arcs", &DriftReport::arcs)
        .def("to_json", [](const DriftReport& r) { return to_json(r).dump(); });

    m.def("drift", &drift, py::arg("invariant"), py::arg("trajectory"),
          py::arg("floor") = kDriftFloor);
    m.def("pde_residual", &pde_residual, py::arg("invariant"), py::arg("system"),
          py::arg("x"), py::arg("v"), py::arg("t"), py::arg("h"));

    py::class_<ResidualSample>(m, "ResidualSample")
        .def_readonly("x", &ResidualSample::x)
        .def_readonly("v", &ResidualSample::v)
        .def_readonly("t", &ResidualSample::t)
        .def_readonly("residuals", &ResidualSample::residuals)
        .def_readonly("order_estimate", &ResidualSample::order_estimate);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("samples", &ResidualReport::samples)
        .def_readonly("steps", &ResidualReport::steps)
        .def_readonly("order_estimate", &ResidualReport::order_estimate)
        .def_readonly("seed", &ResidualReport::seed)
        .def("to_json", [](const ResidualReport& r) { return to_json(r).dump(); });

    py::class_<SampleBox>(m, "SampleBox")
        .def(py::init<>())
        .def_readwrite("x_max", &SampleBox::x_max)
        .def_readwrite("v_max", &SampleBox::v_max)
        .def_readwrite("t_max", &SampleBox::t_max)
        .def_readwrite("min_locus_distance", &SampleBox::min_locus_distance);

    m.def("residual_study", &residual_study, py::arg("invariant"),
          py::arg("system"), py::arg("n_points"), py::arg("steps"),
          py::arg("seed"), py::arg("box") = SampleBox{});

    py::class_<RefinementStudy>(m, "RefinementStudy")
        .def_readonly("steps", &RefinementStudy::steps)
        .def_readonly("drifts", &RefinementStudy::drifts)
        .def_readonly("order_estimate", &RefinementStudy::order_estimate)
        .def_readonly("conclusive", &RefinementStudy::conclusive)
        .def("to_json", [](const RefinementStudy& r) { return to_json(r).dump(); });

    m.def("refinement_study", &refinement_study, py::arg("invariant"),
          py::arg("system"), py::arg("x0"), py::arg("v0"), py::arg("t_start"),
          py::arg("t_end"), py::arg("steps"), py::arg("floor") = kDriftFloor);
}

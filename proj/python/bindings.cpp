// Python bindings for the core operations: canonical parameter handling,
// coefficient tables, photon-number statistics, reference-state routes,
// and pump/process planning.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"
#include "hempss/hamiltonian.hpp"
#include "hempss/oracle.hpp"
#include "hempss/processes.hpp"
#include "hempss/states.hpp"
#include "hempss/statistics.hpp"

namespace py = pybind11;
using namespace hempss;

namespace {

QuadratureConfig make_quadrature(int points_per_axis, double half_extent, int threads,
                                 double convergence_rel_tol) {
    QuadratureConfig q;
    q.points_per_axis = points_per_axis;
    q.half_extent = half_extent;
    q.threads = threads;
    q.convergence_rel_tol = convergence_rel_tol;
    q.check();
    return q;
}

std::vector<std::vector<double>> grid_rows(const PNDGrid& g) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.n_max) + 1);
    for (int n1 = 0; n1 <= g.n_max; ++n1) {
        auto& row = rows[static_cast<std::size_t>(n1)];
        row.resize(static_cast<std::size_t>(g.n_max) + 1);
        for (int n2 = 0; n2 <= g.n_max; ++n2) row[static_cast<std::size_t>(n2)] = g.at(n1, n2);
    }
    return rows;
}

std::string branch_name(CanonicalBranch b) {
    return b == CanonicalBranch::DeltaZero_ThetaPi ? "delta_zero_theta_pi"
                                                   : "delta_pi_theta_zero";
}

// Grid plus the residuals/fidelity of the reference route that produced it.
struct OracleSummary {
    PNDGrid grid;
    double residual1 = 0.0;
    double residual2 = 0.0;
    double fidelity = 1.0;
    std::string route;
};

OracleSummary run_oracle(const CanonicalParams& p, cd beta1, cd beta2, int cutoff,
                         const std::string& route, double residual_threshold) {
    const FockCutoff c(cutoff, cutoff);
    OracleResult r = route == "construction"
                         ? unitary_construction(p, beta1, beta2, c, residual_threshold)
                         : joint_eigenstate(p, beta1, beta2, c, residual_threshold);
    OracleSummary s;
    s.grid = pnd_of_state(r.state);
    s.residual1 = r.residual1;
    s.residual2 = r.residual2;
    s.fidelity = r.fidelity_vs_other_route;
    s.route = route == "construction" ? "construction" : "joint";
    return s;
}

PNDGrid run_pnd(const CanonicalParams& p, cd beta1, cd beta2, int n_max, int points_per_axis,
                double half_extent, int threads, double convergence_rel_tol) {
    const QuadratureConfig q =
        make_quadrature(points_per_axis, half_extent, threads, convergence_rel_tol);
    const WaveParams w = normalize(wave_params(p, beta1, beta2), q);
    const int n = n_max > 0 ? n_max : cutoff_heuristic(p, beta1, beta2);
    return pnd(w, p, n, q);
}

}  // namespace

PYBIND11_MODULE(_hempss, m) {
    m.doc() = "Nonlinearly extended two-mode Bogoliubov transformations: canonical "
              "parameter families, interaction coefficients, photon statistics, "
              "reference states, and pump/process planning.";
    m.attr("__version__") = "0.1.0";

    py::enum_<CanonicalBranch>(m, "Branch")
        .value("DELTA_ZERO_THETA_PI", CanonicalBranch::DeltaZero_ThetaPi)
        .value("DELTA_PI_THETA_ZERO", CanonicalBranch::DeltaPi_ThetaZero);

    py::class_<CanonicalParams>(m, "Params")
        .def_readonly("r", &CanonicalParams::r)
        .def_readonly("phi", &CanonicalParams::phi)
        .def_readonly("gamma_mod", &CanonicalParams::gamma_mod)
        .def_readonly("chi_mod", &CanonicalParams::chi_mod)
        .def_readonly("delta1", &CanonicalParams::delta1)
        .def_readonly("delta2", &CanonicalParams::delta2)
        .def_readonly("theta1", &CanonicalParams::theta1)
        .def_readonly("theta2", &CanonicalParams::theta2)
        .def_readonly("nonlinearity_order", &CanonicalParams::nonlinearity_order)
        .def("__repr__", [](const CanonicalParams& p) {
            char buf[220];
            std::snprintf(buf, sizeof(buf),
                          "Params(r=%g, phi=%g, gamma_mod=%g, chi_mod=%g, delta1=%g, "
                          "delta2=%g, theta1=%g, theta2=%g, order=%d)",
                          p.r, p.phi, p.gamma_mod, p.chi_mod, p.delta1, p.delta2, p.theta1,
                          p.theta2, p.nonlinearity_order);
            return std::string(buf);
        });

    m.def("make_params", &make_canonical_params, py::arg("r"), py::arg("phi"),
          py::arg("gamma_mod"), py::arg("chi_mod"), py::arg("delta1"), py::arg("delta2"),
          py::arg("theta1"), py::arg("theta2"), py::arg("nonlinearity_order") = 2,
          "Checked constructor: wraps angles, requires non-negative r and moduli.");
    m.def("params_from_branch", &params_from_branch, py::arg("branch"), py::arg("r"),
          py::arg("phi"), py::arg("gamma_mod"), py::arg("delta1"), py::arg("theta1"),
          py::arg("nonlinearity_order") = 2,
          "Complete delta2, theta2, chi_mod from a named canonical branch.");
    m.def(
        "detect_branch",
        [](const CanonicalParams& p) -> py::object {
            const auto b = detect_branch(p);
            return b ? py::cast(branch_name(*b)) : py::none();
        },
        py::arg("params"), "Branch name ('delta_zero_theta_pi'/'delta_pi_theta_zero') or None.");

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("linear_residual", &ValidationReport::linear_residual)
        .def_readonly("amplitude_residual", &ValidationReport::amplitude_residual)
        .def_readonly("constraint_residual", &ValidationReport::constraint_residual)
        .def_readonly("imaginary_residual", &ValidationReport::imaginary_residual)
        .def_property_readonly("branch",
                               [](const ValidationReport& r) -> py::object {
                                   return r.branch ? py::cast(branch_name(*r.branch))
                                                   : py::none();
                               })
        .def_readonly("ok", &ValidationReport::pass)
        .def("__repr__", [](const ValidationReport& r) {
            char buf[200];
            std::snprintf(buf, sizeof(buf),
                          "ValidationReport(ok=%s, linear=%.3e, amplitude=%.3e, "
                          "constraint=%.3e, imaginary=%.3e)",
                          r.pass ? "True" : "False", r.linear_residual, r.amplitude_residual,
                          r.constraint_residual, r.imaginary_residual);
            return std::string(buf);
        });
    m.def("validate", &validate, py::arg("params"), py::arg("tol") = 1e-9,
          "Check all canonicity conditions at absolute tolerance tol.");

    py::class_<HamiltonianCoefficients>(m, "Coefficients")
        .def_readonly("A0", &HamiltonianCoefficients::A0)
        .def_readonly("B0", &HamiltonianCoefficients::B0)
        .def_readonly("C0", &HamiltonianCoefficients::C0)
        .def_readonly("D1", &HamiltonianCoefficients::D1)
        .def_readonly("D2", &HamiltonianCoefficients::D2)
        .def_readonly("D2p", &HamiltonianCoefficients::D2p)
        .def_readonly("D3", &HamiltonianCoefficients::D3)
        .def_readonly("D3p", &HamiltonianCoefficients::D3p)
        .def_readonly("D4", &HamiltonianCoefficients::D4)
        .def_readonly("D5", &HamiltonianCoefficients::D5);
    m.def("generic_coefficients", &generic_coefficients, py::arg("params"),
          "Interaction coefficients valid for any canonical parameter set.");
    m.def("specialized_coefficients", &specialized_coefficients, py::arg("params"),
          "Simplified coefficient table for the delta-zero/theta-pi branch.");

    py::class_<CubicPhaseParams>(m, "CubicPhase")
        .def_readonly("Xi", &CubicPhaseParams::Xi)
        .def_readonly("Delta", &CubicPhaseParams::Delta);
    m.def("cubic_phase", &cubic_phase_params, py::arg("params"),
          "Cubicity Xi and complex gate strength Delta of the coordinate wavefunction.");

    py::class_<Moments>(m, "Moments")
        .def_readonly("mean_n1", &Moments::mean_n1)
        .def_readonly("mean_n2", &Moments::mean_n2)
        .def_readonly("mean_n1n2", &Moments::mean_n1n2)
        .def_readonly("g2_cross", &Moments::g2_cross)
        .def("__repr__", [](const Moments& mm) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "Moments(mean_n1=%.6g, mean_n2=%.6g, mean_n1n2=%.6g, g2_cross=%.6g)",
                          mm.mean_n1, mm.mean_n2, mm.mean_n1n2, mm.g2_cross);
            return std::string(buf);
        });

    py::class_<PNDGrid>(m, "PNDGrid")
        .def_readonly("n_max", &PNDGrid::n_max)
        .def_readonly("total_mass", &PNDGrid::total_mass)
        .def_readonly("convergence_estimate", &PNDGrid::convergence_estimate)
        .def("at", &PNDGrid::at, py::arg("n1"), py::arg("n2"))
        .def_property_readonly("values", &grid_rows,
                               "Nested list of probabilities, row index = n1.")
        .def("__repr__", [](const PNDGrid& g) {
            char buf[120];
            std::snprintf(buf, sizeof(buf), "PNDGrid(n_max=%d, total_mass=%.12g)", g.n_max,
                          g.total_mass);
            return std::string(buf);
        });

    m.def("cutoff_heuristic", &cutoff_heuristic, py::arg("params"), py::arg("beta1"),
          py::arg("beta2"), "Suggested photon-number cutoff for the given state.");
    m.def("pnd", &run_pnd, py::arg("params"), py::arg("beta1"), py::arg("beta2"),
          py::arg("n_max") = 0, py::arg("points_per_axis") = 128, py::arg("half_extent") = 0.0,
          py::arg("threads") = 1, py::arg("convergence_rel_tol") = 1e-6,
          py::call_guard<py::gil_scoped_release>(),
          "Joint photon-number distribution via quadrature; n_max=0 picks a heuristic.");
    m.def("moments", &moments, py::arg("grid"),
          "Mean occupations, cross-correlation and normalized g2 of a grid.");

    py::class_<OracleSummary>(m, "OracleSummary")
        .def_readonly("grid", &OracleSummary::grid)
        .def_readonly("residual1", &OracleSummary::residual1)
        .def_readonly("residual2", &OracleSummary::residual2)
        .def_readonly("fidelity", &OracleSummary::fidelity)
        .def_readonly("route", &OracleSummary::route);
    m.def("oracle_pnd", &run_oracle, py::arg("params"), py::arg("beta1"), py::arg("beta2"),
          py::arg("cutoff") = 40, py::arg("route") = "joint",
          py::arg("residual_threshold") = 1e-6, py::call_guard<py::gil_scoped_release>(),
          "Photon-number distribution of the truncated reference state "
          "(route 'joint' or 'construction').");

    py::class_<SweepGammaRow>(m, "SweepGammaRow")
        .def_readonly("gamma_mod", &SweepGammaRow::gamma_mod)
        .def_readonly("moments", &SweepGammaRow::moments)
        .def_readonly("ok", &SweepGammaRow::ok)
        .def_readonly("message", &SweepGammaRow::message);
    py::class_<SweepThetaRow>(m, "SweepThetaRow")
        .def_readonly("theta1", &SweepThetaRow::theta1)
        .def_readonly("theta2", &SweepThetaRow::theta2)
        .def_readonly("moments", &SweepThetaRow::moments)
        .def_readonly("ok", &SweepThetaRow::ok)
        .def_readonly("message", &SweepThetaRow::message);
    m.def(
        "sweep_gamma",
        [](const CanonicalParams& tmpl, cd beta1, cd beta2, const std::vector<double>& values,
           int points_per_axis, int threads) {
            const QuadratureConfig q = make_quadrature(points_per_axis, 0.0, threads, 1e-6);
            return sweep_gamma(tmpl, beta1, beta2, values, q);
        },
        py::arg("params"), py::arg("beta1"), py::arg("beta2"), py::arg("gamma_values"),
        py::arg("points_per_axis") = 128, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Moments as a function of |gamma| (= |chi|), other parameters fixed.");
    m.def(
        "sweep_theta",
        [](const CanonicalParams& tmpl, cd beta1, cd beta2, const std::vector<double>& t1,
           const std::vector<double>& t2, int points_per_axis, int threads) {
            const QuadratureConfig q = make_quadrature(points_per_axis, 0.0, threads, 1e-6);
            return sweep_theta(tmpl, beta1, beta2, t1, t2, q);
        },
        py::arg("params"), py::arg("beta1"), py::arg("beta2"), py::arg("theta1_values"),
        py::arg("theta2_values"), py::arg("points_per_axis") = 128, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Moments over a grid of rotation angles (theta2 completed per branch).");

    py::class_<Pump>(m, "Pump")
        .def(py::init([](double omega, std::array<double, 3> wavevector, cd amplitude) {
                 Pump p;
                 p.omega = omega;
                 p.wavevector = wavevector;
                 p.amplitude = amplitude;
                 return p;
             }),
             py::arg("omega"), py::arg("wavevector") = std::array<double, 3>{0.0, 0.0, 0.0},
             py::arg("amplitude") = cd(1.0, 0.0))
        .def_readonly("omega", &Pump::omega)
        .def_readonly("wavevector", &Pump::wavevector)
        .def_readonly("amplitude", &Pump::amplitude)
        .def("__repr__", [](const Pump& p) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "Pump(omega=%.9g)", p.omega);
            return std::string(buf);
        });
    py::class_<PumpPairConstraint>(m, "PumpPairConstraint")
        .def_readonly("first_index", &PumpPairConstraint::first_index)
        .def_readonly("second_index", &PumpPairConstraint::second_index)
        .def_readonly("sum", &PumpPairConstraint::sum)
        .def_readonly("fraction", &PumpPairConstraint::fraction);
    py::class_<PumpDesign>(m, "PumpDesign")
        .def_readonly("pumps", &PumpDesign::pumps)
        .def_readonly("constraints", &PumpDesign::constraints);
    m.def("pump_design_four_photon", &pump_design_four_photon, py::arg("omega1"),
          py::arg("omega2"), py::arg("fractions") = std::vector<double>{},
          "Twelve-pump design driving the full interaction set.");
    m.def("pump_design_hempss", &pump_design_hempss, py::arg("omega1"), py::arg("omega2"),
          py::arg("fractions") = std::vector<double>{},
          "Eight-pump design driving only the state-pinning interactions.");

    py::class_<FrequencyRelation>(m, "FrequencyRelation")
        .def_readonly("lhs_indices", &FrequencyRelation::lhs_indices)
        .def_readonly("rhs_indices", &FrequencyRelation::rhs_indices)
        .def_readonly("order", &FrequencyRelation::order);
    m.def("splitting_conditions", &splitting_conditions, py::arg("order"),
          "Distinct ways an order-n sum can split into two pump-sum halves.");

    py::class_<PumpFactor>(m, "PumpFactor")
        .def_readonly("index", &PumpFactor::index)
        .def_readonly("conjugated", &PumpFactor::conjugated);
    py::class_<ProcessTerm>(m, "ProcessTerm")
        .def_readonly("j", &ProcessTerm::j)
        .def_readonly("s", &ProcessTerm::s)
        .def_readonly("l", &ProcessTerm::l)
        .def_readonly("m", &ProcessTerm::m)
        .def_readonly("susceptibility_order", &ProcessTerm::susceptibility_order)
        .def_readonly("pumps", &ProcessTerm::pumps)
        .def_readonly("kappa_label", &ProcessTerm::kappa_label)
        .def_readonly("energy_residual", &ProcessTerm::energy_residual)
        .def("__repr__",
             [](const ProcessTerm& t) { return "ProcessTerm(" + t.kappa_label + ")"; });
    m.def("enumerate_terms", &enumerate_terms, py::arg("order"), py::arg("omega1"),
          py::arg("omega2"), py::arg("pumps"), py::arg("max_mode_exponent") = 3,
          py::arg("tol") = 0.0, py::arg("include_kerr") = true,
          "Energy-conserving interaction terms a given pump set can drive.");
    m.def("check_phase_matching", &check_phase_matching, py::arg("term"), py::arg("k1"),
          py::arg("k2"), py::arg("pumps"), py::arg("tol") = 0.0,
          "Euclidean norm of the wavevector mismatch of one term.");

    py::class_<CouplingRequirement>(m, "CouplingRequirement")
        .def_readonly("j", &CouplingRequirement::j)
        .def_readonly("s", &CouplingRequirement::s)
        .def_readonly("l", &CouplingRequirement::l)
        .def_readonly("m", &CouplingRequirement::m)
        .def_readonly("required_product", &CouplingRequirement::required_product)
        .def_readonly("kappa_label", &CouplingRequirement::kappa_label);
    py::class_<CouplingAssignment>(m, "CouplingAssignment")
        .def_readonly("requirements", &CouplingAssignment::requirements)
        .def_readonly("kerr_ratio", &CouplingAssignment::kerr_ratio)
        .def_readonly("kerr_relation_within_tol", &CouplingAssignment::kerr_relation_within_tol);
    m.def("match_couplings", &match_couplings, py::arg("coefficients"), py::arg("terms"),
          py::arg("ratio_tol") = 0.05,
          "Map each required interaction monomial onto an enumerated term.");
}

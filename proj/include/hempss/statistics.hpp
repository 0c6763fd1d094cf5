#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hempss/canonical.hpp"
#include "hempss/pnd_grid.hpp"
#include "hempss/quadrature.hpp"
#include "hempss/special_functions.hpp"
#include "hempss/states.hpp"

namespace hempss {

// Error thrown when a photon-number grid is too small for the requested
// statistic; the caller should raise n_max.
struct truncation_error : std::runtime_error {
    double total_mass;
    explicit truncation_error(const std::string& what, double mass)
        : std::runtime_error(what), total_mass(mass) {}
};

// First and second photon-number moments of a two-mode distribution.
struct Moments {
    double mean_n1 = 0.0;
    double mean_n2 = 0.0;
    double mean_n1n2 = 0.0;
    double g2_cross = 0.0;
};

// Rough mean-occupation estimate used to size truncations and boxes.
double cutoff_estimate(const CanonicalParams& params, cd beta1, cd beta2);

// Photon-number truncation heuristic derived from cutoff_estimate, clamped
// to [16, 120].
int cutoff_heuristic(const CanonicalParams& params, cd beta1, cd beta2);

// Joint photon-number distribution P(n1, n2) for n1, n2 <= n_max, computed
// by 2-D quadrature of the heterodyne overlap integrals against psi.
//
// Requires a normalized w (post-normalize()) and 0 <= n_max <= 120.  The
// box is sized automatically unless q.half_extent > 0, and points_per_axis
// is raised to 64 + 2*n_max when n_max > 32.  The whole grid is evaluated
// at two resolutions; if any entry moves by more than
// q.convergence_rel_tol (relative, floored at 1e-10 absolute scale) the
// computation throws convergence_error.  Results are independent of
// q.threads.
PNDGrid pnd(const WaveParams& w, const CanonicalParams& params, int n_max,
            const QuadratureConfig& q);

// Grid moments and the cross-mode second-order correlation
// g2 = <n1 n2> / (<n1><n2>).  Requires |total_mass - 1| <= 1e-4; throws
// truncation_error telling the caller to raise n_max otherwise.
Moments moments(const PNDGrid& g);

// Fraction of the distribution's mass on the n1 == n2 diagonal; diagnostic
// only.
double diagonal_mass_ratio(const PNDGrid& g);

struct SweepGammaRow {
    double gamma_mod = 0.0;
    Moments moments;
    bool ok = false;
    std::string message;
};

struct SweepThetaRow {
    double theta1 = 0.0;
    double theta2 = 0.0;
    Moments moments;
    bool ok = false;
    std::string message;
};

// Evaluate moments along a |gamma| grid, holding the template's angles and
// squeezing fixed (the completion branches are independent of the modulus,
// so a canonical template stays canonical).  Failed rows are recorded and
// the sweep continues; row order follows gamma_values.
std::vector<SweepGammaRow> sweep_gamma(const CanonicalParams& tmpl, cd beta1, cd beta2,
                                       const std::vector<double>& gamma_values,
                                       const QuadratureConfig& q);

// Evaluate moments over a (theta1, theta2) grid.  Each point is completed
// canonically by setting phi = theta1 + theta2 and delta2 = phi + pi -
// delta1 (for gamma = 0 the phi rule is the formal closure that keeps the
// squeezing phase tied to the rotation angles).  Row order is theta1-major.
std::vector<SweepThetaRow> sweep_theta(const CanonicalParams& tmpl, cd beta1, cd beta2,
                                       const std::vector<double>& theta1_grid,
                                       const std::vector<double>& theta2_grid,
                                       const QuadratureConfig& q);

}  // namespace hempss

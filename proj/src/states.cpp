#include "hempss/states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hempss/fock.hpp"
#include "hempss/special_functions.hpp"

namespace hempss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularTol = 1e-12;
constexpr double kPhaseTol = 1e-9;
constexpr double kExpGuard = 700.0;
constexpr double kCoordAbsTol = 1e-8;

cd ipow(cd z, int n) {
    cd out(1.0, 0.0);
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}

void require_validated(const CanonicalParams& params) {
    const ValidationReport report = validate(params);
    if (!report.pass) {
        throw std::domain_error(
            "wavefunction parameters require a validated canonical parameter set");
    }
}

void require_order_two(const CanonicalParams& params, const char* what) {
    if (params.nonlinearity_order != 2) {
        throw std::domain_error(std::string(what) + ": defined for nonlinearity order 2 only");
    }
}

struct RotatedCoeffs {
    cd mu1;   // exp(+i*theta1) * mu
    cd mu2;   // exp(+i*theta2) * mu
    cd nu1;   // exp(-i*theta1) * nu
    cd nu2;   // exp(-i*theta2) * nu
};

RotatedCoeffs rotated_coeffs(const CanonicalParams& params) {
    const auto [mu, nu] = linear_coeffs(params);
    RotatedCoeffs rc;
    rc.mu1 = std::polar(1.0, params.theta1) * mu;
    rc.mu2 = std::polar(1.0, params.theta2) * mu;
    rc.nu1 = std::polar(1.0, -params.theta1) * nu;
    rc.nu2 = std::polar(1.0, -params.theta2) * nu;
    return rc;
}

// Full complex exponent of the wavefunction at z, excluding the overall norm.
cd wave_exponent(const WaveParams& w, cd z) {
    const int p = w.order + 1;
    const cd zp = ipow(z, p);
    const cd zcp = ipow(std::conj(z), p);
    return -w.a * std::norm(z) + w.Gamma1 * z + w.Gamma2 * std::conj(z) -
           (w.wB1 * zp + w.wB2 * zcp) / double(p);
}

double require_positive_decay(const WaveParams& w, const char* what) {
    const double ra = w.a.real();
    if (!(ra > 0.0)) {
        throw std::domain_error(std::string(what) +
                                ": Gaussian decay rate Re(a) must be positive");
    }
    return ra;
}

// (2/pi) * Int |psi|^2 d^2 z over the square [-R, R]^2 with G points per axis,
// for a unit-norm wavefunction.
double squared_mass(const WaveParams& w, const QuadratureConfig& q, double half_extent,
                    int points) {
    const std::vector<QuadratureNode> nodes = scaled_nodes(q.rule, points, half_extent);
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    for (const QuadratureNode& nx : nodes) {
        for (const QuadratureNode& ny : nodes) {
            const cd z(nx.x, ny.x);
            const double expo = 2.0 * wave_exponent(w, z).real();
            const double term = (expo < -745.0) ? 0.0 : nx.w * ny.w * std::exp(expo);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return (2.0 / kPi) * sum;
}

// 1-D Fourier-type coordinate integral at a fixed grid size.
cd coordinate_integral(const WaveParams& w, double x1, double x2, double half_extent,
                       int points, QuadratureRule rule) {
    const std::vector<QuadratureNode> nodes = scaled_nodes(rule, points, half_extent);
    const double z1 = 0.5 * (x1 + x2);
    const double k = x2 - x1;
    cd sum(0.0, 0.0);
    for (const QuadratureNode& n : nodes) {
        const cd z(z1, n.x);
        const cd e = wave_exponent(w, z) + cd(0.0, k * n.x);
        if (e.real() < -745.0) continue;
        sum += n.w * std::exp(e);
    }
    return (w.norm / kPi) * sum;
}

}  // namespace

WaveParams wave_params(const CanonicalParams& params, cd beta1, cd beta2) {
    // The singular-denominator guard runs before full validation: at the
    // squeezing strengths where it fires, the unimodularity residual itself
    // is numerically unverifiable.
    const RotatedCoeffs rc = rotated_coeffs(params);
    const cd d1 = rc.mu1 - rc.nu2;
    const cd d2 = rc.mu2 - rc.nu1;
    if (std::abs(d1) < kSingularTol || std::abs(d2) < kSingularTol) {
        throw std::domain_error(
            "wave_params: singular transformation, |mu' - nu''| below 1e-12");
    }
    require_validated(params);
    const double root2 = std::sqrt(2.0);
    const cd gamma = std::polar(params.gamma_mod, params.delta1);
    const cd chi = std::polar(params.chi_mod, params.delta2);

    WaveParams w;
    w.a = (rc.mu1 + rc.nu2) / d1;
    w.wB1 = root2 * gamma / d1;
    w.wB2 = root2 * chi / d2;
    w.Gamma1 = root2 * beta1 / d1;
    w.Gamma2 = root2 * beta2 / d2;
    w.norm = 1.0;
    w.order = params.nonlinearity_order;
    w.beta1 = beta1;
    w.beta2 = beta2;
    return w;
}

cd eval_entangled_wavefunction(const WaveParams& w, const HeterodynePoint& pt) {
    const cd e = wave_exponent(w, pt.z);
    const double total_re = e.real() + std::log(w.norm);
    if (total_re > kExpGuard) {
        throw std::range_error("eval_entangled_wavefunction: exponent exceeds overflow guard");
    }
    return std::exp(e + cd(std::log(w.norm), 0.0));
}

WaveParams normalize(const WaveParams& w, const QuadratureConfig& q) {
    q.check();
    const double ra = require_positive_decay(w, "normalize");
    double half_extent = q.half_extent;
    if (!(half_extent > 0.0)) {
        const cd drive = w.Gamma1 + std::conj(w.Gamma2);
        const double peak = std::abs(drive) / (2.0 * ra);
        half_extent = peak + std::sqrt(19.5 / ra) + 1.0;
    }
    const double coarse = squared_mass(w, q, half_extent, q.points_per_axis);
    const double fine = squared_mass(w, q, half_extent, 2 * q.points_per_axis);
    const double rel = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    if (!(rel <= q.convergence_rel_tol) || !(fine > 0.0)) {
        throw convergence_error(
            "normalize: squared-mass integral did not stabilize under grid doubling", rel);
    }
    WaveParams out = w;
    out.norm = 1.0 / std::sqrt(fine);
    return out;
}

cd eval_coordinate_wavefunction(const WaveParams& w, const CanonicalParams& params,
                                double x1, double x2, const QuadratureConfig& q) {
    (void)params;
    q.check();
    const double ra = require_positive_decay(w, "eval_coordinate_wavefunction");
    double half_extent = q.half_extent;
    if (!(half_extent > 0.0)) {
        const double drive = w.Gamma2.imag() - w.Gamma1.imag();
        const double peak = std::abs(drive) / (2.0 * ra);
        half_extent = peak + std::sqrt(39.0 / ra) + 1.0;
    }
    cd prev = coordinate_integral(w, x1, x2, half_extent, q.points_per_axis, q.rule);
    int points = 2 * q.points_per_axis;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const cd cur = coordinate_integral(w, x1, x2, half_extent, points, q.rule);
        if (std::abs(cur - prev) <= kCoordAbsTol) return cur;
        prev = cur;
        points *= 2;
    }
    throw convergence_error(
        "eval_coordinate_wavefunction: value did not stabilize under grid doubling",
        std::abs(prev));
}

cd xi_expression(const CanonicalParams& params) {
    require_order_two(params, "xi_expression");
    require_validated(params);
    const double Theta = params.theta1 + params.theta2 - params.phi;
    const double c = std::cosh(params.r);
    const double s = std::sinh(params.r);
    const cd numerator = c - s * std::polar(1.0, Theta);
    const double denominator = std::cosh(2.0 * params.r) - std::sinh(2.0 * params.r) * std::cos(Theta);
    return (2.0 * std::sqrt(2.0) / 3.0) * params.gamma_mod * numerator / denominator;
}

double xi(const CanonicalParams& params) {
    return xi_expression(params).real();
}

cd delta(const CanonicalParams& params) {
    require_order_two(params, "delta");
    require_validated(params);
    const auto [mu, nu] = linear_coeffs(params);
    const cd denominator = mu - nu * std::polar(1.0, -(params.theta1 + params.theta2));
    return std::sqrt(2.0) * params.gamma_mod *
           std::polar(1.0, params.delta1 - params.theta1) / (3.0 * denominator);
}

cd delta_closed_form(const CanonicalParams& params) {
    require_order_two(params, "delta_closed_form");
    const auto branch = detect_branch(params);
    if (!branch.has_value()) {
        throw std::domain_error(
            "delta_closed_form: parameters lie on neither completion branch");
    }
    const double sigma = (*branch == CanonicalBranch::DeltaZero_ThetaPi) ? 1.0 : -1.0;
    return (std::sqrt(2.0) * params.gamma_mod / 3.0) * std::exp(-sigma * params.r) *
           std::polar(1.0, params.delta1 - params.theta1);
}

CubicPhaseParams cubic_phase_params(const CanonicalParams& params) {
    CubicPhaseParams cp;
    cp.Xi = xi(params);
    cp.Delta = delta(params);
    return cp;
}

cd eval_cubic_closed_form(const CanonicalParams& params, cd beta1, cd beta2,
                          double x1, double x2) {
    require_order_two(params, "eval_cubic_closed_form");
    if (angle_distance(params.delta1 - params.theta1, kPi / 2.0) > kPhaseTol) {
        throw std::domain_error(
            "eval_cubic_closed_form: requires delta1 - theta1 = pi/2 (mod 2 pi)");
    }
    const WaveParams w = wave_params(params, beta1, beta2);
    // The closed form assumes a purely cubic phase: wB1 = wB2 = i*xi with
    // real xi, which holds on the completion branches under the phase
    // precondition above.
    if (std::abs(w.wB1.real()) > kPhaseTol * (1.0 + std::abs(w.wB1)) ||
        std::abs(w.wB1 - w.wB2) > kPhaseTol * (1.0 + std::abs(w.wB1))) {
        throw std::domain_error(
            "eval_cubic_closed_form: parameters are off the pure cubic-phase branches");
    }
    const double Xi = xi(params);
    const double u = 0.5 * (x1 + x2);
    const cd p = w.a - cd(0.0, 3.0 * Xi * u);
    const cd t = cd(x2 - x1, 0.0) + (w.Gamma1 - w.Gamma2);
    const cd exponent = -t * t / (4.0 * p) - cd(0.0, Xi * u * u * u) - w.a * u * u +
                        (w.Gamma1 + w.Gamma2) * u;
    return (w.norm / std::sqrt(kPi)) / std::sqrt(p) * std::exp(exponent);
}

cd overlap_fock_z(int n1, int n2, const HeterodynePoint& pt, double theta1, double theta2) {
    if (n1 < 0 || n2 < 0) {
        throw std::invalid_argument("overlap_fock_z: occupation numbers must be >= 0");
    }
    const int m = std::min(n1, n2);
    const int M = std::max(n1, n2);
    const int alpha = M - m;
    const double az = std::abs(pt.z);
    if (az == 0.0 && alpha > 0) return cd(0.0, 0.0);

    const double L = laguerre(m, alpha, 2.0 * az * az);
    if (L == 0.0) return cd(0.0, 0.0);

    double log_mag = 0.5 * (log_factorial(m) - log_factorial(M)) +
                     0.5 * alpha * std::log(2.0) - az * az + std::log(std::abs(L));
    if (alpha > 0) log_mag += alpha * std::log(az);

    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (L < 0.0) sign = -sign;

    const double arg_z = (az > 0.0) ? std::arg(pt.z) : 0.0;
    const double phase = n1 * theta1 + n2 * theta2 + (n2 - n1) * arg_z;
    return sign * std::exp(log_mag) * std::polar(1.0, phase);
}

}  // namespace hempss

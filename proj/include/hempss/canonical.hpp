#pragma once

#include <complex>
#include <optional>
#include <utility>

namespace hempss {

// Parameters of the two-mode nonlinear Bogoliubov transformation
//   b1 = mu a1 + nu a2^dag + gamma Z^n,
//   b2 = mu a2 + nu a1^dag + chi (Z^dag)^n,
// with mu = cosh r, nu = sinh r e^{i phi}, Z = (e^{-i theta2} a2
// + e^{i theta1} a1^dag) / sqrt(2), gamma = |gamma| e^{i delta1} and
// chi = |chi| e^{i delta2}. The reference amplitudes entering Z are fixed
// at modulus 1/sqrt(2) each, which is what the 1/sqrt(2) in Z encodes.
//
// Angles are stored wrapped to [0, 2*pi). nonlinearity_order is the power n
// (n = 2 is the four-photon case treated in closed form downstream).
struct CanonicalParams {
    double r = 0.0;
    double phi = 0.0;
    double gamma_mod = 0.0;
    double chi_mod = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    int nonlinearity_order = 2;
};

// The two one-parameter families of exactly canonical phase choices:
//   DeltaZero_ThetaPi : delta1+delta2-phi = 0,    theta1+theta2-phi = +-pi
//   DeltaPi_ThetaZero : delta1+delta2-phi = +-pi, theta1+theta2-phi = 0
enum class CanonicalBranch { DeltaZero_ThetaPi, DeltaPi_ThetaZero };

// Wrap an angle to [0, 2*pi).
double wrap_angle(double a);

// Distance from angle x to target t modulo 2*pi, in [0, pi].
double angle_distance(double x, double t);

// Checked construction: wraps all angles, requires r >= 0, moduli >= 0, order >= 1.
CanonicalParams make_canonical_params(double r, double phi, double gamma_mod, double chi_mod,
                                      double delta1, double delta2, double theta1, double theta2,
                                      int nonlinearity_order);

// Complete the remaining phases from a branch choice: delta2 and theta2 are
// determined by (branch, phi, delta1, theta1) and chi_mod is set equal to
// gamma_mod.
CanonicalParams params_from_branch(CanonicalBranch branch, double r, double phi, double gamma_mod,
                                   double delta1, double theta1, int nonlinearity_order);

// (mu, nu) of the linear part; |mu|^2 - |nu|^2 = 1 identically.
std::pair<std::complex<double>, std::complex<double>> linear_coeffs(const CanonicalParams& p);

// Residual of the first nonlinear canonical-commutation condition. Zero
// (to round-off) exactly when the transformation is canonical.
std::complex<double> residual_nlcc1(const CanonicalParams& p);

// Right-hand side of the closed-form tanh(r) consistency relation in terms
// of the phase sums. Requires equal moduli |chi| = |gamma|.
struct TanhRResult {
    enum class Kind { Value, Degenerate, Infinite } kind;
    double value = 0.0;  // meaningful only for Kind::Value
};
TanhRResult tanh_r_rhs(const CanonicalParams& p);

// Detect whether the phase sums sit on one of the named branches (within
// an absolute angle tolerance of 1e-9).
std::optional<CanonicalBranch> detect_branch(const CanonicalParams& p);

struct ValidationReport {
    double linear_residual = 0.0;       // | |mu|^2 - |nu|^2 - 1 |
    double amplitude_residual = 0.0;    // reference-amplitude modulus balance
    double constraint_residual = 0.0;   // |residual_nlcc1|
    double imaginary_residual = 0.0;    // |(|chi|^2-|gamma|^2) sin(theta1+theta2-phi)|
    std::optional<CanonicalBranch> branch;
    bool pass = false;
};

// Check all canonicity conditions at absolute tolerance tol.
ValidationReport validate(const CanonicalParams& p, double tol = 1e-9);

}  // namespace hempss

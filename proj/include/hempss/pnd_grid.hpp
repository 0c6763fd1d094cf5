#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace hempss {

// Joint photon-number distribution P(n1, n2) on 0..n_max per mode.
//
// Invariants enforced by finalize():
//   * every entry >= -1e-12 on input; entries in (-1e-12, 0) are clipped to 0,
//     anything more negative is an error,
//   * total_mass <= 1 + 1e-6.
struct PNDGrid {
    Eigen::MatrixXd values;  // (n_max+1) x (n_max+1), row index = n1
    int n_max = 0;
    double total_mass = 0.0;
    double convergence_estimate = 0.0;

    double at(int n1, int n2) const { return values(n1, n2); }
};

inline PNDGrid finalize_pnd_grid(Eigen::MatrixXd values, double convergence_estimate) {
    PNDGrid g;
    g.n_max = static_cast<int>(values.rows()) - 1;
    if (values.rows() != values.cols() || g.n_max < 0)
        throw std::invalid_argument("PNDGrid: values must be a non-empty square matrix");
    double mass = 0.0;
    double comp = 0.0;  // Kahan compensation
    for (int n1 = 0; n1 <= g.n_max; ++n1) {
        for (int n2 = 0; n2 <= g.n_max; ++n2) {
            double& p = values(n1, n2);
            if (p < 0.0) {
                if (p > -1e-12) {
                    p = 0.0;  // quadrature round-off
                } else {
                    throw std::runtime_error(
                        "PNDGrid: negative probability " + std::to_string(p) + " at (" +
                        std::to_string(n1) + "," + std::to_string(n2) + ")");
                }
            }
            const double y = p - comp;
            const double t = mass + y;
            comp = (t - mass) - y;
            mass = t;
        }
    }
    if (mass > 1.0 + 1e-6)
        throw std::runtime_error("PNDGrid: total probability mass " + std::to_string(mass) +
                                 " exceeds 1");
    g.values = std::move(values);
    g.total_mass = mass;
    g.convergence_estimate = convergence_estimate;
    return g;
}

}  // namespace hempss

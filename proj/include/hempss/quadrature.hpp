#pragma once

#include <stdexcept>
#include <vector>

namespace hempss {

// Numerical integration rule used for the heterodyne-plane integrals.
enum class QuadratureRule { Trapezoid, GaussLegendre };

// Configuration for 1-D / tensor-product 2-D quadratures on [-R, R].
//
// half_extent == 0 requests automatic box sizing from the Gaussian decay of
// the integrand (see callers); an explicit value must be >= 4.
struct QuadratureConfig {
    double half_extent = 0.0;
    int points_per_axis = 128;
    QuadratureRule rule = QuadratureRule::GaussLegendre;
    double convergence_rel_tol = 1e-6;
    int threads = 1;

    void check() const {
        if (points_per_axis < 32)
            throw std::invalid_argument("QuadratureConfig: points_per_axis must be >= 32");
        if (half_extent != 0.0 && half_extent < 4.0)
            throw std::invalid_argument("QuadratureConfig: explicit half_extent must be >= 4");
        if (convergence_rel_tol <= 0.0)
            throw std::invalid_argument("QuadratureConfig: convergence_rel_tol must be positive");
        if (threads < 1)
            throw std::invalid_argument("QuadratureConfig: threads must be >= 1");
    }
};

struct QuadratureNode {
    double x;
    double w;
};

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence. Deterministic for a given n.
std::vector<QuadratureNode> gauss_legendre_nodes(int n);

// Composite trapezoid nodes/weights on [-1, 1] (n points, end weights halved).
std::vector<QuadratureNode> trapezoid_nodes(int n);

// Nodes scaled to [-half_extent, half_extent] for the requested rule.
std::vector<QuadratureNode> scaled_nodes(QuadratureRule rule, int n, double half_extent);

}  // namespace hempss

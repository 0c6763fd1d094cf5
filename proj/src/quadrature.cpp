#include "hempss/quadrature.hpp"

#include <cmath>

namespace hempss {

std::vector<QuadratureNode> gauss_legendre_nodes(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_nodes: n must be >= 1");
    std::vector<QuadratureNode> nodes(static_cast<size_t>(n));
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Standard initial guess for the k-th root of P_n.
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P_{n-1}(x) by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute derivative at the converged root for the weight.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<size_t>(k)] = {-x, w};
        nodes[static_cast<size_t>(n - 1 - k)] = {x, w};
    }
    if (n % 2 == 1) nodes[static_cast<size_t>(n / 2)].x = 0.0;  // exact midpoint
    return nodes;
}

std::vector<QuadratureNode> trapezoid_nodes(int n) {
    if (n < 2) throw std::invalid_argument("trapezoid_nodes: n must be >= 2");
    std::vector<QuadratureNode> nodes(static_cast<size_t>(n));
    const double h = 2.0 / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? h / 2.0 : h;
        nodes[static_cast<size_t>(k)] = {-1.0 + k * h, w};
    }
    return nodes;
}

std::vector<QuadratureNode> scaled_nodes(QuadratureRule rule, int n, double half_extent) {
    std::vector<QuadratureNode> nodes =
        (rule == QuadratureRule::GaussLegendre) ? gauss_legendre_nodes(n) : trapezoid_nodes(n);
    for (auto& nd : nodes) {
        nd.x *= half_extent;
        nd.w *= half_extent;
    }
    return nodes;
}

}  // namespace hempss

#include "hempss/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hempss/fock.hpp"

namespace hempss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxOccupation = 120;
constexpr double kMassTol = 1e-4;

struct KahanCd {
    cd sum{0.0, 0.0};
    cd comp{0.0, 0.0};
    void add(cd v) {
        const cd y = v - comp;
        const cd t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct KahanD {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

cd ipow(cd z, int n) {
    cd out(1.0, 0.0);
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}

// Flattened grid data shared by every diagonal pass.
struct GridData {
    std::vector<cd> base;    // quadrature weight * psi(z)
    std::vector<cd> conjz;   // conj(z)
    std::vector<double> x;   // 2 |z|^2
    std::vector<double> e0;  // exp(-|z|^2): scaled Laguerre seed
};

GridData build_grid(const WaveParams& w, const std::vector<QuadratureNode>& nodes) {
    const int n = int(nodes.size());
    GridData g;
    g.base.resize(size_t(n) * n);
    g.conjz.resize(size_t(n) * n);
    g.x.resize(size_t(n) * n);
    g.e0.resize(size_t(n) * n);
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j, ++idx) {
            const cd z(nodes[i].x, nodes[j].x);
            const double zz = std::norm(z);
            g.base[idx] = nodes[i].w * nodes[j].w * eval_entangled_wavefunction(w, {z});
            g.conjz[idx] = std::conj(z);
            g.x[idx] = 2.0 * zz;
            g.e0[idx] = (zz > 745.0) ? 0.0 : std::exp(-zz);
        }
    }
    return g;
}

// Accumulate the overlap integrals for diagonals alpha in [alpha_lo, alpha_hi).
// I1[alpha][m] covers (n1, n2) = (m + alpha, m); I2[alpha][m] covers
// (m, m + alpha).  Each diagonal walks the grid in a fixed order, so results
// do not depend on how diagonals are distributed over threads.
void accumulate_diagonals(const GridData& g, int n_max, int alpha_lo, int alpha_hi,
                          std::vector<std::vector<cd>>& I1, std::vector<std::vector<cd>>& I2) {
    const size_t npts = g.base.size();
    std::vector<cd> pw(npts);
    for (size_t idx = 0; idx < npts; ++idx) pw[idx] = ipow(g.conjz[idx], alpha_lo);

    std::vector<KahanCd> acc1, acc2;
    for (int alpha = alpha_lo; alpha < alpha_hi; ++alpha) {
        const int m_count = n_max - alpha + 1;
        acc1.assign(m_count, KahanCd{});
        acc2.assign(m_count, KahanCd{});
        for (size_t idx = 0; idx < npts; ++idx) {
            const double seed = g.e0[idx];
            const cd b = g.base[idx];
            if (seed != 0.0 && b != cd(0.0, 0.0)) {
                const cd b1 = b * pw[idx];
                const cd b2 = (alpha > 0) ? b * std::conj(pw[idx]) : b1;
                const double x = g.x[idx];
                double lprev = 0.0;
                double lcur = seed;  // exp(-x/2) * L_0
                for (int m = 0; m < m_count; ++m) {
                    acc1[m].add(b1 * lcur);
                    if (alpha > 0) acc2[m].add(b2 * lcur);
                    const double lnext =
                        ((2.0 * m + 1.0 + alpha - x) * lcur - (m + alpha) * lprev) / (m + 1.0);
                    lprev = lcur;
                    lcur = lnext;
                }
            }
            pw[idx] *= g.conjz[idx];
        }
        I1[alpha].resize(m_count);
        I2[alpha].resize(m_count);
        for (int m = 0; m < m_count; ++m) {
            I1[alpha][m] = acc1[m].sum;
            I2[alpha][m] = acc2[m].sum;
        }
    }
}

Eigen::MatrixXd pnd_pass(const WaveParams& w, int n_max, const QuadratureConfig& q,
                         double half_extent, int points) {
    const std::vector<QuadratureNode> nodes = scaled_nodes(q.rule, points, half_extent);
    const GridData grid = build_grid(w, nodes);

    std::vector<std::vector<cd>> I1(n_max + 1), I2(n_max + 1);
    const int chunk_count = std::max(1, std::min(q.threads, n_max + 1));
    if (chunk_count == 1) {
        accumulate_diagonals(grid, n_max, 0, n_max + 1, I1, I2);
    } else {
        // Contiguous alpha ranges with roughly equal total m-loop cost.
        double total_cost = 0.0;
        for (int alpha = 0; alpha <= n_max; ++alpha) total_cost += n_max - alpha + 1;
        std::vector<int> bounds{0};
        double acc = 0.0;
        for (int alpha = 0; alpha <= n_max && int(bounds.size()) < chunk_count; ++alpha) {
            acc += n_max - alpha + 1;
            if (acc >= total_cost / chunk_count * double(bounds.size())) bounds.push_back(alpha + 1);
        }
        bounds.back() = std::min(bounds.back(), n_max + 1);
        bounds.push_back(n_max + 1);
        std::vector<std::thread> workers;
        for (size_t k = 0; k + 1 < bounds.size(); ++k) {
            if (bounds[k] >= bounds[k + 1]) continue;
            workers.emplace_back(accumulate_diagonals, std::cref(grid), n_max, bounds[k],
                                 bounds[k + 1], std::ref(I1), std::ref(I2));
        }
        for (std::thread& t : workers) t.join();
    }

    Eigen::MatrixXd values(n_max + 1, n_max + 1);
    for (int alpha = 0; alpha <= n_max; ++alpha) {
        for (int m = 0; m + alpha <= n_max; ++m) {
            const double pref = std::exp((alpha + 2) * std::log(2.0) + std::lgamma(m + 1.0) -
                                         std::lgamma(m + alpha + 1.0)) /
                                (kPi * kPi);
            values(m + alpha, m) = pref * std::norm(I1[alpha][m]);
            if (alpha > 0) values(m, m + alpha) = pref * std::norm(I2[alpha][m]);
        }
    }
    return values;
}

}  // namespace

double cutoff_estimate(const CanonicalParams& params, cd beta1, cd beta2) {
    const double b = std::max(std::abs(beta1), std::abs(beta2));
    const double drive =
        b * b * (std::cosh(2.0 * params.r) - std::sinh(2.0 * params.r) * std::cos(params.phi));
    const double s = std::sinh(params.r);
    const double cubic = 5.0 * params.gamma_mod * std::exp(2.0 * params.r) * (1.0 + b);
    return s * s + drive + cubic;
}

int cutoff_heuristic(const CanonicalParams& params, cd beta1, cd beta2) {
    const double nhat = cutoff_estimate(params, beta1, beta2);
    const int n = int(std::ceil(nhat + 9.0 * std::sqrt(nhat + 1.0) + 10.0));
    return std::clamp(n, 16, kMaxOccupation);
}

PNDGrid pnd(const WaveParams& w, const CanonicalParams& params, int n_max,
            const QuadratureConfig& q) {
    q.check();
    if (n_max < 0) throw std::invalid_argument("pnd: n_max must be >= 0");
    if (n_max > kMaxOccupation)
        throw std::invalid_argument("pnd: n_max above 120 is unsupported (overflow territory)");
    const double ra = w.a.real();
    if (!(ra > 0.0)) throw std::domain_error("pnd: Gaussian decay rate Re(a) must be positive");

    double half_extent = q.half_extent;
    if (!(half_extent > 0.0)) {
        const double nhat = std::max(0.0, cutoff_estimate(params, w.beta1, w.beta2));
        const double c = 1.0 + ra;
        const double peak = std::abs(w.Gamma1 + std::conj(w.Gamma2)) / (2.0 * c);
        const double poly_reach = peak + std::sqrt(double(n_max) / c) + std::sqrt(39.0 / c) + 1.0;
        half_extent = std::max(4.0 + std::sqrt(nhat), poly_reach);
    }

    int points = q.points_per_axis;
    if (n_max > 32) points = std::max(points, 64 + 2 * n_max);

    const Eigen::MatrixXd coarse = pnd_pass(w, n_max, q, half_extent, points);
    const Eigen::MatrixXd fine = pnd_pass(w, n_max, q, half_extent, 2 * points);

    double estimate = 0.0;
    for (int i = 0; i <= n_max; ++i) {
        for (int j = 0; j <= n_max; ++j) {
            const double denom = std::max(fine(i, j), 1e-10);
            estimate = std::max(estimate, std::abs(fine(i, j) - coarse(i, j)) / denom);
        }
    }
    if (estimate > q.convergence_rel_tol) {
        throw convergence_error(
            "pnd: grid doubling moved the distribution beyond the requested tolerance",
            estimate);
    }
    return finalize_pnd_grid(fine, estimate);
}

Moments moments(const PNDGrid& g) {
    if (std::abs(g.total_mass - 1.0) > kMassTol) {
        throw truncation_error(
            "moments: grid mass " + std::to_string(g.total_mass) +
                " is not within 1e-4 of 1; raise n_max to capture the missing tail",
            g.total_mass);
    }
    KahanD s1, s2, s12;
    for (int n1 = 0; n1 <= g.n_max; ++n1) {
        for (int n2 = 0; n2 <= g.n_max; ++n2) {
            const double p = g.values(n1, n2);
            s1.add(n1 * p);
            s2.add(n2 * p);
            s12.add(double(n1) * double(n2) * p);
        }
    }
    Moments m;
    m.mean_n1 = s1.sum / g.total_mass;
    m.mean_n2 = s2.sum / g.total_mass;
    m.mean_n1n2 = s12.sum / g.total_mass;
    const double denom = s1.sum * s2.sum;
    m.g2_cross = (denom > 0.0) ? s12.sum * g.total_mass / denom : 0.0;
    return m;
}

double diagonal_mass_ratio(const PNDGrid& g) {
    KahanD diag;
    for (int n = 0; n <= g.n_max; ++n) diag.add(g.values(n, n));
    return (g.total_mass > 0.0) ? diag.sum / g.total_mass : 0.0;
}

namespace {

// Shared per-row pipeline: normalize, distribution, moments, with automatic
// retries: a truncated grid grows n_max (x1.5 up to the supported cap) and an
// unconverged quadrature doubles the point count (up to 1024 per axis).
Moments row_moments(const CanonicalParams& p, cd beta1, cd beta2, QuadratureConfig q) {
    int n_max = cutoff_heuristic(p, beta1, beta2);
    const WaveParams w = normalize(wave_params(p, beta1, beta2), q);
    int truncation_retries = 0;
    int resolution_retries = 0;
    for (;;) {
        try {
            return moments(pnd(w, p, n_max, q));
        } catch (const truncation_error&) {
            if (truncation_retries >= 2 || n_max >= kMaxOccupation) throw;
            ++truncation_retries;
            n_max = std::min(kMaxOccupation, (n_max * 3 + 1) / 2);
        } catch (const convergence_error&) {
            if (resolution_retries >= 2 || q.points_per_axis >= 1024) throw;
            ++resolution_retries;
            q.points_per_axis = std::min(1024, 2 * q.points_per_axis);
        }
    }
}

}  // namespace

std::vector<SweepGammaRow> sweep_gamma(const CanonicalParams& tmpl, cd beta1, cd beta2,
                                       const std::vector<double>& gamma_values,
                                       const QuadratureConfig& q) {
    std::vector<SweepGammaRow> rows;
    rows.reserve(gamma_values.size());
    for (double g : gamma_values) {
        SweepGammaRow row;
        row.gamma_mod = g;
        try {
            CanonicalParams p = tmpl;
            if (g < 0.0) throw std::invalid_argument("sweep_gamma: |gamma| must be >= 0");
            p.gamma_mod = g;
            p.chi_mod = g;
            row.moments = row_moments(p, beta1, beta2, q);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.message = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepThetaRow> sweep_theta(const CanonicalParams& tmpl, cd beta1, cd beta2,
                                       const std::vector<double>& theta1_grid,
                                       const std::vector<double>& theta2_grid,
                                       const QuadratureConfig& q) {
    std::vector<SweepThetaRow> rows;
    rows.reserve(theta1_grid.size() * theta2_grid.size());
    for (double t1 : theta1_grid) {
        for (double t2 : theta2_grid) {
            SweepThetaRow row;
            row.theta1 = t1;
            row.theta2 = t2;
            try {
                // Tie the squeezing phase to the rotations and re-complete the
                // second nonlinear phase so every grid point is canonical.
                const CanonicalParams p = make_canonical_params(
                    tmpl.r, t1 + t2, tmpl.gamma_mod, tmpl.chi_mod, tmpl.delta1,
                    (t1 + t2) + kPi - tmpl.delta1, t1, t2, tmpl.nonlinearity_order);
                row.moments = row_moments(p, beta1, beta2, q);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.message = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace hempss

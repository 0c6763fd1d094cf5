#include "hempss/fock.hpp"

#include <cmath>
#include <vector>

namespace hempss {

namespace {

void require_same_cutoff(const FockCutoff& a, const FockCutoff& b, const char* op) {
    if (a != b)
        throw std::invalid_argument(std::string(op) + ": cutoff mismatch (" +
                                    std::to_string(a.n1_max) + "," + std::to_string(a.n2_max) +
                                    ") vs (" + std::to_string(b.n1_max) + "," +
                                    std::to_string(b.n2_max) + ")");
}

}  // namespace

std::pair<FockOperator, FockOperator> make_mode_operators(const FockCutoff& cutoff) {
    if (cutoff.n1_max < 1 || cutoff.n2_max < 1)
        throw std::invalid_argument("make_mode_operators: per-mode cutoffs must be >= 1");
    const int d = cutoff.dim();
    std::vector<Eigen::Triplet<cd>> t1, t2;
    t1.reserve(static_cast<size_t>(d));
    t2.reserve(static_cast<size_t>(d));
    for (int n1 = 0; n1 <= cutoff.n1_max; ++n1) {
        for (int n2 = 0; n2 <= cutoff.n2_max; ++n2) {
            const int col = cutoff.flat(n1, n2);
            // a1 |n1, n2> = sqrt(n1) |n1-1, n2>
            if (n1 >= 1) t1.emplace_back(cutoff.flat(n1 - 1, n2), col, cd(std::sqrt(double(n1)), 0.0));
            if (n2 >= 1) t2.emplace_back(cutoff.flat(n1, n2 - 1), col, cd(std::sqrt(double(n2)), 0.0));
        }
    }
    FockOperator a1{SparseOp(d, d), cutoff};
    FockOperator a2{SparseOp(d, d), cutoff};
    a1.mat.setFromTriplets(t1.begin(), t1.end());
    a2.mat.setFromTriplets(t2.begin(), t2.end());
    return {std::move(a1), std::move(a2)};
}

FockOperator identity_op(const FockCutoff& cutoff) {
    const int d = cutoff.dim();
    FockOperator id{SparseOp(d, d), cutoff};
    id.mat.setIdentity();
    return id;
}

FockOperator vacuum_projector_free(const FockCutoff& cutoff) {
    const int d = cutoff.dim();
    FockOperator p{SparseOp(d, d), cutoff};
    std::vector<Eigen::Triplet<cd>> t{{cutoff.flat(0, 0), cutoff.flat(0, 0), cd(1.0, 0.0)}};
    p.mat.setFromTriplets(t.begin(), t.end());
    return p;
}

FockState vacuum_state(const FockCutoff& cutoff) { return basis_state(cutoff, 0, 0); }

FockState basis_state(const FockCutoff& cutoff, int n1, int n2) {
    if (n1 < 0 || n2 < 0 || n1 > cutoff.n1_max || n2 > cutoff.n2_max)
        throw std::invalid_argument("basis_state: occupation outside cutoff");
    FockState v{Eigen::VectorXcd::Zero(cutoff.dim()), cutoff};
    v.amps(cutoff.flat(n1, n2)) = cd(1.0, 0.0);
    return v;
}

FockOperator adjoint(const FockOperator& a) {
    FockOperator r{a.mat.adjoint(), a.cutoff};
    return r;
}

FockOperator compose(const FockOperator& a, const FockOperator& b) {
    require_same_cutoff(a.cutoff, b.cutoff, "compose");
    FockOperator r{(a.mat * b.mat).pruned(), a.cutoff};
    return r;
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
    require_same_cutoff(a.cutoff, b.cutoff, "commutator");
    FockOperator r{((a.mat * b.mat) - (b.mat * a.mat)).pruned(), a.cutoff};
    return r;
}

FockOperator add(const FockOperator& a, const FockOperator& b) {
    require_same_cutoff(a.cutoff, b.cutoff, "add");
    FockOperator r{a.mat + b.mat, a.cutoff};
    return r;
}

FockOperator subtract(const FockOperator& a, const FockOperator& b) {
    require_same_cutoff(a.cutoff, b.cutoff, "subtract");
    FockOperator r{a.mat - b.mat, a.cutoff};
    return r;
}

FockOperator scale(const cd& c, const FockOperator& a) {
    FockOperator r{c * a.mat, a.cutoff};
    return r;
}

FockState apply(const FockOperator& a, const FockState& v) {
    require_same_cutoff(a.cutoff, v.cutoff, "apply");
    FockState r{a.mat * v.amps, v.cutoff};
    return r;
}

double inf_norm(const FockOperator& a) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.mat.rows());
    for (int k = 0; k < a.mat.outerSize(); ++k)
        for (SparseOp::InnerIterator it(a.mat, k); it; ++it)
            row_sums(it.row()) += std::abs(it.value());
    return a.mat.nonZeros() == 0 ? 0.0 : row_sums.maxCoeff();
}

double max_abs_entry(const FockOperator& a) {
    double m = 0.0;
    for (int k = 0; k < a.mat.outerSize(); ++k)
        for (SparseOp::InnerIterator it(a.mat, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

FockOperator project_total_quanta(const FockOperator& a, int band) {
    if (band < 0) throw std::invalid_argument("project_total_quanta: band must be >= 0");
    const FockCutoff& c = a.cutoff;
    std::vector<Eigen::Triplet<cd>> kept;
    kept.reserve(static_cast<size_t>(a.mat.nonZeros()));
    for (int k = 0; k < a.mat.outerSize(); ++k) {
        for (SparseOp::InnerIterator it(a.mat, k); it; ++it) {
            const int row = static_cast<int>(it.row());
            const int col = static_cast<int>(it.col());
            const int qr = c.n1_of(row) + c.n2_of(row);
            const int qc = c.n1_of(col) + c.n2_of(col);
            if (qr <= band && qc <= band) kept.emplace_back(row, col, it.value());
        }
    }
    FockOperator r{SparseOp(c.dim(), c.dim()), c};
    r.mat.setFromTriplets(kept.begin(), kept.end());
    return r;
}

FockState project_state_total_quanta(const FockState& v, int band) {
    FockState r = v;
    for (int i = 0; i < r.amps.size(); ++i) {
        if (v.cutoff.n1_of(i) + v.cutoff.n2_of(i) > band) r.amps(i) = cd(0.0, 0.0);
    }
    return r;
}

FockState exp_apply(const FockOperator& a, const FockState& v, double tol) {
    require_same_cutoff(a.cutoff, v.cutoff, "exp_apply");
    if (tol <= 0.0) throw std::invalid_argument("exp_apply: tol must be positive");

    const double nrm = inf_norm(a);
    constexpr double kMaxSegments = 100000.0;
    if (!(nrm < kMaxSegments))
        throw convergence_error(
            "exp_apply: exponent norm exceeds the segmented-Taylor iteration budget", nrm);
    const int segments = std::max(1, static_cast<int>(std::ceil(nrm)));
    constexpr int kMaxTerms = 400;

    Eigen::VectorXcd x = v.amps;
    const double inv_s = 1.0 / segments;
    for (int seg = 0; seg < segments; ++seg) {
        Eigen::VectorXcd y = x;
        Eigen::VectorXcd term = x;
        int small_streak = 0;
        double resid = 0.0;
        bool converged = false;
        for (int j = 1; j <= kMaxTerms; ++j) {
            term = (a.mat * term) * cd(inv_s / j, 0.0);
            y += term;
            resid = term.norm();
            const double floor_ref = std::max(1.0, y.norm());
            if (resid <= tol * floor_ref / (2.0 * segments)) {
                if (++small_streak >= 2) {
                    converged = true;
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        if (!converged)
            throw convergence_error("exp_apply: Taylor segment did not converge", resid);
        x = std::move(y);
    }
    return FockState{std::move(x), v.cutoff};
}

PNDGrid pnd_of_state(const FockState& v) {
    const double n = v.norm();
    if (std::abs(n - 1.0) > 1e-6)
        throw std::domain_error("pnd_of_state: state norm deviates from 1 by more than 1e-6 (norm " +
                                std::to_string(n) + ")");
    const int n_max = std::min(v.cutoff.n1_max, v.cutoff.n2_max);
    Eigen::MatrixXd p(n_max + 1, n_max + 1);
    for (int n1 = 0; n1 <= n_max; ++n1)
        for (int n2 = 0; n2 <= n_max; ++n2)
            p(n1, n2) = std::norm(v.amps(v.cutoff.flat(n1, n2)));
    return finalize_pnd_grid(std::move(p), 0.0);
}

}  // namespace hempss

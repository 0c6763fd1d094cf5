#include "hempss/processes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace hempss {

namespace {

using cd = std::complex<double>;

std::string kappa_label_for(int j, int s, int l, int m) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "k^{%d%d}_{%d%d}", j, s, l, m);
    return buf;
}

void require_mode_frequencies(double omega1, double omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
        throw std::invalid_argument("mode frequencies must be positive");
    }
}

// Smallest integer relation q1*omega1 ~= q2*omega2 (q <= 6) makes the
// rotating-wave selection ambiguous: distinct exponent vectors would balance
// the same pump sums.
void require_incommensurate(double omega1, double omega2, double tol) {
    for (int q1 = 1; q1 <= 6; ++q1) {
        for (int q2 = 1; q2 <= 6; ++q2) {
            if (std::abs(q1 * omega1 - q2 * omega2) <= tol) {
                throw std::domain_error(
                    "mode frequencies are commensurate (" + std::to_string(q1) + ":" +
                    std::to_string(q2) + "); term selection would be ambiguous");
            }
        }
    }
}

double default_tolerance(double omega1, double omega2, const std::vector<Pump>& pumps) {
    double peak = std::max(omega1, omega2);
    for (const auto& p : pumps) peak = std::max(peak, p.omega);
    return 1e-9 * peak;
}

// A term and its hermitian conjugate (exponents swapped
// creation<->annihilation, pump flags flipped) are the same physical
// interaction. Keep the pump-absorbing representative: fewest conjugated
// pump factors, then the lexicographically larger exponent tuple, then the
// larger flag pair.
bool is_representative(int j, int s, int l, int m, bool ci, bool cj) {
    const int conj_count = (ci ? 1 : 0) + (cj ? 1 : 0);
    if (conj_count != 1) return conj_count == 0;
    const auto direct = std::make_tuple(j, s, l, m);
    const auto conjugate = std::make_tuple(l, m, j, s);
    if (direct != conjugate) return direct > conjugate;
    return std::make_tuple(ci, cj) > std::make_tuple(!ci, !cj);
}

std::vector<double> resolve_fractions(const std::vector<double>& fractions, std::size_t pairs) {
    if (fractions.empty()) return std::vector<double>(pairs, 0.5);
    if (fractions.size() != pairs) {
        throw std::invalid_argument("expected " + std::to_string(pairs) +
                                    " splitting fractions, got " + std::to_string(fractions.size()));
    }
    for (double f : fractions) {
        if (!(f > 0.0) || !(f < 1.0)) {
            throw std::invalid_argument("splitting fractions must lie strictly inside (0,1)");
        }
    }
    return fractions;
}

PumpDesign design_from_sums(double omega1, double omega2, const std::vector<double>& sums,
                            const std::vector<double>& fractions) {
    require_mode_frequencies(omega1, omega2);
    require_incommensurate(omega1, omega2, 1e-9 * std::max(omega1, omega2));
    const std::vector<double> frac = resolve_fractions(fractions, sums.size());
    PumpDesign design;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        if (!(sums[k] > 0.0)) {
            throw std::domain_error("pump design infeasible: pair sum " + std::to_string(k) +
                                    " is not positive (" + std::to_string(sums[k]) + ")");
        }
        Pump a;
        a.omega = frac[k] * sums[k];
        Pump b;
        b.omega = (1.0 - frac[k]) * sums[k];
        const int first = static_cast<int>(design.pumps.size());
        design.pumps.push_back(a);
        design.pumps.push_back(b);
        design.constraints.push_back({first, first + 1, sums[k], frac[k]});
    }
    return design;
}

}  // namespace

std::vector<FrequencyRelation> splitting_conditions(int order) {
    if (order < 2 || order > 5) {
        throw std::out_of_range("splitting_conditions: order must lie in [2, 5]");
    }
    const int total = order + 1;
    std::vector<FrequencyRelation> shapes;
    for (int s = 1; 2 * s <= total; ++s) {
        FrequencyRelation rel;
        rel.order = order;
        for (int i = 0; i < s; ++i) rel.lhs_indices.push_back(i);
        for (int i = s; i < total; ++i) rel.rhs_indices.push_back(i);
        shapes.push_back(std::move(rel));
    }
    return shapes;
}

std::vector<ProcessTerm> enumerate_terms(int order, double omega1, double omega2,
                                         const std::vector<Pump>& pumps, int max_mode_exponent,
                                         double tol, bool include_kerr) {
    if (order < 2 || order > 5) {
        throw std::out_of_range("enumerate_terms: order must lie in [2, 5]");
    }
    if (max_mode_exponent < 0) {
        throw std::invalid_argument("max_mode_exponent must be non-negative");
    }
    require_mode_frequencies(omega1, omega2);
    for (const auto& p : pumps) {
        if (!(p.omega > 0.0)) throw std::invalid_argument("pump frequencies must be positive");
    }
    const double eff_tol = tol > 0.0 ? tol : default_tolerance(omega1, omega2, pumps);
    require_incommensurate(omega1, omega2, eff_tol);

    std::vector<ProcessTerm> terms;

    // Zero-pump survivors: the third-order Kerr diagonals n_i^2-type terms.
    if (include_kerr && order == 3) {
        for (int j = 2; j >= 0; --j) {
            const int s = 2 - j;
            if (j > max_mode_exponent || s > max_mode_exponent) continue;
            ProcessTerm t;
            t.j = j;
            t.s = s;
            t.l = j;
            t.m = s;
            t.susceptibility_order = order;
            t.kappa_label = kappa_label_for(j, s, j, s);
            t.energy_residual = 0.0;
            terms.push_back(std::move(t));
        }
    }

    // Pump-pair survivors: exactly two classical pump factors, so
    // j + s + l + m == order - 1.
    const int mode_budget = order - 1;
    const int cap = std::min(max_mode_exponent, mode_budget);
    const int n_pumps = static_cast<int>(pumps.size());
    for (int pi = 0; pi < n_pumps; ++pi) {
        for (int pj = pi + 1; pj < n_pumps; ++pj) {
            for (int flags = 0; flags < 4; ++flags) {
                const bool ci = (flags & 1) != 0;
                const bool cj = (flags & 2) != 0;
                // Conjugated pump factors join the creation side of the
                // balance, unconjugated ones the annihilation side.
                const double pump_net = (ci ? pumps[pi].omega : -pumps[pi].omega) +
                                        (cj ? pumps[pj].omega : -pumps[pj].omega);
                for (int j = 0; j <= cap; ++j) {
                    for (int s = 0; s <= cap && j + s <= mode_budget; ++s) {
                        for (int l = 0; l <= cap && j + s + l <= mode_budget; ++l) {
                            const int m = mode_budget - j - s - l;
                            if (m > cap) continue;
                            const double balance =
                                (j - l) * omega1 + (s - m) * omega2 + pump_net;
                            if (std::abs(balance) > eff_tol) continue;
                            if (!is_representative(j, s, l, m, ci, cj)) {
                                continue;  // hermitian conjugate is the representative
                            }
                            ProcessTerm t;
                            t.j = j;
                            t.s = s;
                            t.l = l;
                            t.m = m;
                            t.susceptibility_order = order;
                            t.pumps = {{pi, ci}, {pj, cj}};
                            t.kappa_label = kappa_label_for(j, s, l, m);
                            t.energy_residual = std::abs(balance);
                            terms.push_back(std::move(t));
                        }
                    }
                }
            }
        }
    }

    std::sort(terms.begin(), terms.end(), [](const ProcessTerm& a, const ProcessTerm& b) {
        const auto lhs = std::make_tuple(a.j, a.s, a.l, a.m);
        const auto rhs = std::make_tuple(b.j, b.s, b.l, b.m);
        if (lhs != rhs) return lhs < rhs;
        const auto pa = std::make_tuple(a.pumps.size(), a.pumps.empty() ? 0 : a.pumps[0].index,
                                        a.pumps.size() < 2 ? 0 : a.pumps[1].index,
                                        a.pumps.empty() ? false : a.pumps[0].conjugated,
                                        a.pumps.size() < 2 ? false : a.pumps[1].conjugated);
        const auto pb = std::make_tuple(b.pumps.size(), b.pumps.empty() ? 0 : b.pumps[0].index,
                                        b.pumps.size() < 2 ? 0 : b.pumps[1].index,
                                        b.pumps.empty() ? false : b.pumps[0].conjugated,
                                        b.pumps.size() < 2 ? false : b.pumps[1].conjugated);
        return pa < pb;
    });
    return terms;
}

double check_phase_matching(const ProcessTerm& t, const std::array<double, 3>& k1,
                            const std::array<double, 3>& k2, const std::vector<Pump>& pumps,
                            double /*tol*/) {
    std::array<double, 3> residual{0.0, 0.0, 0.0};
    for (int c = 0; c < 3; ++c) {
        residual[c] = (t.j - t.l) * k1[c] + (t.s - t.m) * k2[c];
    }
    for (const auto& pf : t.pumps) {
        if (pf.index < 0 || pf.index >= static_cast<int>(pumps.size())) {
            throw std::invalid_argument("phase matching: term references pump index " +
                                        std::to_string(pf.index) +
                                        " but no wavevector was supplied for it");
        }
        const auto& k = pumps[static_cast<std::size_t>(pf.index)].wavevector;
        for (int c = 0; c < 3; ++c) {
            residual[c] += pf.conjugated ? k[c] : -k[c];
        }
    }
    return std::sqrt(residual[0] * residual[0] + residual[1] * residual[1] +
                     residual[2] * residual[2]);
}

PumpDesign pump_design_four_photon(double omega1, double omega2,
                                   const std::vector<double>& fractions) {
    const std::vector<double> sums = {omega1 + omega2,       2.0 * (omega1 + omega2),
                                      3.0 * omega1,          3.0 * omega2,
                                      2.0 * omega1 - omega2, 2.0 * omega2 - omega1};
    return design_from_sums(omega1, omega2, sums, fractions);
}

PumpDesign pump_design_hempss(double omega1, double omega2,
                              const std::vector<double>& fractions) {
    const std::vector<double> sums = {3.0 * omega1, 3.0 * omega2, 2.0 * omega1 - omega2,
                                      2.0 * omega2 - omega1};
    return design_from_sums(omega1, omega2, sums, fractions);
}

CouplingAssignment match_couplings(const HamiltonianCoefficients& target,
                                   const std::vector<ProcessTerm>& terms, double ratio_tol) {
    struct Entry {
        int j, s, l, m;
        cd value;
    };
    // Normal-ordered monomial coefficients of the target generator; n1*n2
    // carries 4*C0 and each self-Kerr diagonal carries C0.
    const std::vector<Entry> wanted = {
        {1, 1, 0, 0, target.D1},          {2, 0, 0, 1, target.D2},
        {0, 2, 1, 0, target.D2p},         {3, 0, 0, 0, target.D3},
        {0, 3, 0, 0, target.D3p},         {2, 2, 0, 0, target.D4},
        {2, 1, 1, 0, target.D5},          {1, 2, 0, 1, target.D5},
        {2, 0, 2, 0, cd(target.C0, 0.0)}, {0, 2, 0, 2, cd(target.C0, 0.0)},
        {1, 1, 1, 1, cd(4.0 * target.C0, 0.0)},
    };

    const auto covered = [&terms](int j, int s, int l, int m) {
        for (const auto& t : terms) {
            if (t.j == j && t.s == s && t.l == l && t.m == m) return true;
        }
        return false;
    };

    CouplingAssignment out;
    std::string missing;
    for (const auto& w : wanted) {
        if (std::abs(w.value) == 0.0) continue;
        if (!covered(w.j, w.s, w.l, w.m)) {
            missing += " (" + std::to_string(w.j) + "," + std::to_string(w.s) + "," +
                       std::to_string(w.l) + "," + std::to_string(w.m) + ")";
            continue;
        }
        CouplingRequirement req;
        req.j = w.j;
        req.s = w.s;
        req.l = w.l;
        req.m = w.m;
        req.required_product = w.value;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "k^{%d%d}_{%d%d}", w.j, w.s, w.l, w.m);
        req.kappa_label = buf;
        out.requirements.push_back(std::move(req));
    }
    if (!missing.empty()) {
        throw std::runtime_error("coupling match failed: no enumerated term drives monomial(s)" +
                                 missing);
    }

    const auto find_req = [&out](int j, int s, int l, int m) -> const CouplingRequirement* {
        for (const auto& r : out.requirements) {
            if (r.j == j && r.s == s && r.l == l && r.m == m) return &r;
        }
        return nullptr;
    };
    const CouplingRequirement* self1 = find_req(2, 0, 2, 0);
    const CouplingRequirement* self2 = find_req(0, 2, 0, 2);
    const CouplingRequirement* cross = find_req(1, 1, 1, 1);
    if (self1 != nullptr && cross != nullptr && std::abs(cross->required_product) > 0.0) {
        out.kerr_ratio = std::abs(self1->required_product) / std::abs(cross->required_product);
        // Report whether the commonly quoted pattern (equal self-Kerr
        // couplings at twice the cross coupling) holds for this target.
        bool equal_selfs = true;
        if (self2 != nullptr) {
            const double scale = std::max(std::abs(self1->required_product), 1e-300);
            equal_selfs =
                std::abs(self1->required_product - self2->required_product) <= ratio_tol * scale;
        }
        out.kerr_relation_within_tol =
            equal_selfs && std::abs(out.kerr_ratio / 2.0 - 1.0) <= ratio_tol;
    }
    return out;
}

}  // namespace hempss

#include "hempss/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hempss {

namespace {

constexpr double kDumpFloor = 1e-15;

nlohmann::json complex_to_json(const cd& z) { return nlohmann::json::array({z.real(), z.imag()}); }

std::string route_name(OracleRoute route) {
    return route == OracleRoute::JointEigen ? "joint_eigen" : "unitary_construction";
}

}  // namespace

nlohmann::json params_to_json(const CanonicalParams& p) {
    return nlohmann::json{{"r", p.r},
                          {"phi", p.phi},
                          {"gamma_mod", p.gamma_mod},
                          {"chi_mod", p.chi_mod},
                          {"delta1", p.delta1},
                          {"delta2", p.delta2},
                          {"theta1", p.theta1},
                          {"theta2", p.theta2},
                          {"order", p.nonlinearity_order}};
}

CanonicalParams params_from_json(const nlohmann::json& j) {
    return make_canonical_params(j.at("r").get<double>(), j.at("phi").get<double>(),
                                 j.at("gamma_mod").get<double>(), j.at("chi_mod").get<double>(),
                                 j.at("delta1").get<double>(), j.at("delta2").get<double>(),
                                 j.at("theta1").get<double>(), j.at("theta2").get<double>(),
                                 j.at("order").get<int>());
}

nlohmann::json state_to_json(const FockState& state) {
    nlohmann::json entries = nlohmann::json::array();
    for (int idx = 0; idx < state.amps.size(); ++idx) {
        const cd amp = state.amps[idx];
        if (std::abs(amp) < kDumpFloor) continue;
        entries.push_back(nlohmann::json::array({state.cutoff.n1_of(idx), state.cutoff.n2_of(idx),
                                                 amp.real(), amp.imag()}));
    }
    return nlohmann::json{{"cutoff", {state.cutoff.n1_max, state.cutoff.n2_max}},
                          {"entries", std::move(entries)}};
}

FockState state_from_json(const nlohmann::json& j) {
    const auto& cut = j.at("cutoff");
    if (!cut.is_array() || cut.size() != 2) {
        throw std::invalid_argument("state JSON: cutoff must be [n1_max, n2_max]");
    }
    const FockCutoff cutoff(cut[0].get<int>(), cut[1].get<int>());
    FockState state{Eigen::VectorXcd::Zero(cutoff.dim()), cutoff};
    for (const auto& entry : j.at("entries")) {
        if (!entry.is_array() || entry.size() != 4) {
            throw std::invalid_argument("state JSON: entries must be [n1, n2, re, im]");
        }
        const int n1 = entry[0].get<int>();
        const int n2 = entry[1].get<int>();
        if (n1 < 0 || n1 > cutoff.n1_max || n2 < 0 || n2 > cutoff.n2_max) {
            throw std::invalid_argument("state JSON: entry occupation outside cutoff");
        }
        state.amps[cutoff.flat(n1, n2)] = cd(entry[2].get<double>(), entry[3].get<double>());
    }
    return state;
}

nlohmann::json coefficients_to_json(const HamiltonianCoefficients& c) {
    return nlohmann::json{{"A0", c.A0},
                          {"B0", c.B0},
                          {"C0", c.C0},
                          {"D1", complex_to_json(c.D1)},
                          {"D2", complex_to_json(c.D2)},
                          {"D2p", complex_to_json(c.D2p)},
                          {"D3", complex_to_json(c.D3)},
                          {"D3p", complex_to_json(c.D3p)},
                          {"D4", complex_to_json(c.D4)},
                          {"D5", complex_to_json(c.D5)}};
}

nlohmann::json oracle_to_json(const OracleResult& r) {
    nlohmann::json j = state_to_json(r.state);
    j["metadata"] = nlohmann::json{{"residual1", r.residual1},
                                   {"residual2", r.residual2},
                                   {"route", route_name(r.route)},
                                   {"fidelity", r.fidelity_vs_other_route}};
    return j;
}

nlohmann::json pumps_to_json(const std::vector<Pump>& pumps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pumps) {
        arr.push_back(nlohmann::json{
            {"omega", p.omega},
            {"wavevector", {p.wavevector[0], p.wavevector[1], p.wavevector[2]}},
            {"amplitude", complex_to_json(p.amplitude)}});
    }
    return arr;
}

std::vector<Pump> pumps_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("pumps JSON: expected an array");
    std::vector<Pump> pumps;
    pumps.reserve(j.size());
    for (const auto& entry : j) {
        Pump p;
        p.omega = entry.at("omega").get<double>();
        if (entry.contains("wavevector")) {
            const auto& wv = entry.at("wavevector");
            if (!wv.is_array() || wv.size() != 3) {
                throw std::invalid_argument("pumps JSON: wavevector must be [kx, ky, kz]");
            }
            for (int c = 0; c < 3; ++c) p.wavevector[static_cast<std::size_t>(c)] = wv[c].get<double>();
        }
        if (entry.contains("amplitude")) {
            const auto& amp = entry.at("amplitude");
            if (!amp.is_array() || amp.size() != 2) {
                throw std::invalid_argument("pumps JSON: amplitude must be [re, im]");
            }
            p.amplitude = cd(amp[0].get<double>(), amp[1].get<double>());
        }
        pumps.push_back(p);
    }
    return pumps;
}

nlohmann::json terms_to_json(const std::vector<ProcessTerm>& terms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms) {
        nlohmann::json pumps = nlohmann::json::array();
        for (const auto& pf : t.pumps) {
            pumps.push_back(nlohmann::json{{"index", pf.index}, {"conjugated", pf.conjugated}});
        }
        arr.push_back(nlohmann::json{{"j", t.j},
                                     {"s", t.s},
                                     {"l", t.l},
                                     {"m", t.m},
                                     {"order", t.susceptibility_order},
                                     {"pumps", std::move(pumps)},
                                     {"kappa", t.kappa_label}});
    }
    return arr;
}

nlohmann::json design_to_json(const PumpDesign& d) {
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto& c : d.constraints) {
        constraints.push_back(nlohmann::json{{"first_index", c.first_index},
                                             {"second_index", c.second_index},
                                             {"sum", c.sum},
                                             {"fraction", c.fraction}});
    }
    return nlohmann::json{{"pumps", pumps_to_json(d.pumps)},
                          {"constraints", std::move(constraints)}};
}

std::string format_sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string pnd_to_csv(const PNDGrid& grid) {
    std::string out = "n1,n2,P\n";
    for (int n1 = 0; n1 <= grid.n_max; ++n1) {
        for (int n2 = 0; n2 <= grid.n_max; ++n2) {
            out += std::to_string(n1);
            out += ',';
            out += std::to_string(n2);
            out += ',';
            out += format_sig12(grid.at(n1, n2));
            out += '\n';
        }
    }
    return out;
}

}  // namespace hempss

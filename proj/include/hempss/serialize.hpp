#pragma once

#include <string>
#include <vector>

#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"
#include "hempss/hamiltonian.hpp"
#include "hempss/oracle.hpp"
#include "hempss/pnd_grid.hpp"
#include "hempss/processes.hpp"
#include "json.hpp"

namespace hempss {

// --- JSON conversions -----------------------------------------------------
//
// Parameter sets round-trip through the flat object
//   {r, phi, gamma_mod, chi_mod, delta1, delta2, theta1, theta2, order}.
// States dump as {"cutoff":[n1_max,n2_max],"entries":[[n1,n2,re,im],...]},
// with amplitudes below 1e-15 omitted. Complex coefficients serialize as
// [re, im] pairs.

nlohmann::json params_to_json(const CanonicalParams& p);
CanonicalParams params_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const FockState& state);
FockState state_from_json(const nlohmann::json& j);

nlohmann::json coefficients_to_json(const HamiltonianCoefficients& c);

// State plus a metadata block {residual1, residual2, route, fidelity}.
nlohmann::json oracle_to_json(const OracleResult& r);

nlohmann::json pumps_to_json(const std::vector<Pump>& pumps);
std::vector<Pump> pumps_from_json(const nlohmann::json& j);

nlohmann::json terms_to_json(const std::vector<ProcessTerm>& terms);
nlohmann::json design_to_json(const PumpDesign& d);

// --- CSV emission ----------------------------------------------------------
//
// All CSV output is comma-separated with a header row, 12-significant-digit
// floats, and LF line endings, so repeated runs are byte-identical.

std::string format_sig12(double x);

// Header "n1,n2,P" followed by one row per occupation pair, n1-major.
std::string pnd_to_csv(const PNDGrid& grid);

}  // namespace hempss

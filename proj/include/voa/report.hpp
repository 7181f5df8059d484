#pragma once

#include <string>

#include "json.hpp"
#include "voa/fock.hpp"
#include "voa/lambda_poly.hpp"
#include "voa/linalg.hpp"

namespace voa {

using ordered_json = nlohmann::ordered_json;

// Outcome of a machine check. `details` carries check-specific data
// (arguments, discrepancies, witnesses) ready for JSON output.
struct CheckReport {
  std::string name;
  bool pass = true;
  ordered_json details = ordered_json::object();
};

inline ordered_json state_json(const FockState& s) {
  ordered_json arr = ordered_json::array();
  for (const auto& [m, c] : s.terms()) arr.push_back({c.str(), m.str()});
  return arr;
}

inline ordered_json poly_json(const LambdaPoly& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [k, s] : p.coefficients())
    arr.push_back({k.first, k.second, state_json(s)});
  return arr;
}

inline ordered_json report_json(const CheckReport& r) {
  ordered_json out;
  out["check"] = r.name;
  out["pass"] = r.pass;
  for (const auto& [k, v] : r.details.items()) out[k] = v;
  return out;
}

}  // namespace voa

#pragma once

// JSON and CSV serialization. Complex numbers are written as [re, im].
//
//   pure state      {"two_j": n, "amplitudes": [[re, im], ...]}
//   density matrix  {"two_j": n, "matrix": [[[re, im], ...], ...]}
//   configuration   {"two_j": n, "points": [[theta_bar, phi], ...]}
//   mixture         {"two_j": n, "atoms": [{"weight", "theta_bar", "phi"}, ...]}

#include <string>
#include <variant>

#include <json.hpp>

#include "qq/majorana.hpp"
#include "qq/qq_search.hpp"
#include "qq/quantumness.hpp"

namespace qq::io {

using json = nlohmann::json;

// Malformed input raises ParseError; the message names the offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const PureState& psi);
json to_json(const DensityMatrix& rho);
json to_json(const MajoranaConfig& config);
json to_json(const ClassicalMixture& mixture);
json to_json(const QPConfig& cfg);
json to_json(const SearchConfig& cfg);
json to_json(const QPResult& r);
json to_json(const QQResult& r);

PureState pure_state_from_json(const json& j);
DensityMatrix density_from_json(const json& j);
MajoranaConfig config_from_json(const json& j);
ClassicalMixture mixture_from_json(const json& j);

// Either kind of state, dispatched on the "amplitudes" / "matrix" key.
using AnyState = std::variant<PureState, DensityMatrix>;
AnyState state_from_json(const json& j);
DensityMatrix as_density(const AnyState& s);

// Parses text, reporting line and column on syntax errors.
json parse_text(const std::string& text, const std::string& origin);
json read_file(const std::string& path);
// Pretty-printed with a trailing newline; doubles round-trip exactly.
void write_file(const std::string& path, const json& j);

// theta_bar,phi,x,y,z
std::string majorana_csv(const MajoranaConfig& config);
// theta_bar,phi,x,y,z,weight; throws on an empty mixture.
std::string atoms_csv(const ClassicalMixture& mixture);

struct RunManifest {
  std::string command;
  json config;
  std::uint64_t rng_seed = 0;
  std::string version = QQ_VERSION;
  double wall_clock_seconds = 0.0;

  // Without the duration, so that embedding it keeps outputs reproducible.
  json reproducible() const;
  json full() const;
};

}  // namespace qq::io

#include "qq/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace qq::io {

namespace {

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

complex complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

SpinJ spin_from(const json& j) {
  const json& t = field(j, "two_j");
  if (!t.is_number_integer() || t.get<long long>() < 0) throw ParseError("\"two_j\" must be a non-negative integer");
  return SpinJ(t.get<int>());
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

json to_json(const PureState& psi) {
  json a = json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) a.push_back(complex_json(psi.amplitudes()(k)));
  return {{"two_j", psi.spin().two_j()}, {"amplitudes", a}};
}

json to_json(const DensityMatrix& rho) {
  json m = json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(complex_json(rho.matrix()(r, c)));
    m.push_back(row);
  }
  return {{"two_j", rho.spin().two_j()}, {"matrix", m}};
}

json to_json(const MajoranaConfig& config) {
  json p = json::array();
  for (const auto& d : config.points) p.push_back(json::array({d.theta_bar, d.phi}));
  return {{"two_j", config.spin.two_j()}, {"points", p}};
}

json to_json(const ClassicalMixture& mixture) {
  json a = json::array();
  for (const auto& at : mixture.atoms) {
    a.push_back({{"weight", at.weight}, {"theta_bar", at.dir.theta_bar}, {"phi", at.dir.phi}});
  }
  return {{"two_j", mixture.spin.two_j()}, {"atoms", a}};
}

json to_json(const QPConfig& c) {
  return {{"n_directions", c.n_directions},       {"n_rounds", c.n_rounds},
          {"merge_threshold", c.merge_threshold}, {"weight_floor", c.weight_floor},
          {"convergence_tol", c.convergence_tol}, {"rng_seed", c.rng_seed},
          {"stall_rounds", c.stall_rounds},       {"certify_rounds", c.certify_rounds},
          {"refine_candidates", c.refine_candidates}};
}

json to_json(const SearchConfig& c) {
  return {{"n_restarts", c.n_restarts},
          {"inner", to_json(c.inner)},
          {"final_inner", to_json(c.final_inner)},
          {"polish_tol", c.polish_tol},
          {"rng_seed", c.rng_seed},
          {"simplex_max_evals", c.simplex_max_evals},
          {"simplex_initial_step", c.simplex_initial_step},
          {"polish_max_iter", c.polish_max_iter},
          {"symmetrize_result", c.symmetrize_result},
          {"symmetrize_tol", c.symmetrize_tol}};
}

json to_json(const QPResult& r) {
  return {{"q_squared", r.q_squared},
          {"q", r.q()},
          {"mixture", to_json(r.mixture)},
          {"rounds_used", r.rounds_used},
          {"kkt_residual", r.kkt_residual},
          {"dual_gap", r.dual_gap},
          {"converged", r.converged}};
}

json to_json(const QQResult& r) {
  return {{"two_j", r.state.spin().two_j()},
          {"q_squared", r.q_squared},
          {"config", to_json(r.config)},
          {"state", to_json(r.state)},
          {"mixture", to_json(r.mixture)},
          {"signature", canonical_signature(r.config).angles},
          {"diagnostics",
           {{"eigen_residual", r.eigen_residual},
            {"eigen_index", r.eigen_index},
            {"restarts_used", r.restarts_used},
            {"distinct_optima", r.distinct_optima},
            {"evaluations", r.evaluations},
            {"dual_gap", r.dual_gap},
            {"restart_values", r.restart_values}}}};
}

PureState pure_state_from_json(const json& j) {
  const SpinJ spin = spin_from(j);
  const json& a = field(j, "amplitudes");
  if (!a.is_array() || static_cast<int>(a.size()) != spin.dim()) {
    throw ParseError("\"amplitudes\" must hold two_j + 1 entries");
  }
  CVector v(spin.dim());
  for (int k = 0; k < spin.dim(); ++k) v(k) = complex_from(a[static_cast<std::size_t>(k)], "amplitudes[" + std::to_string(k) + "]");
  try {
    return {spin, v};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid pure state: ") + e.what());
  }
}

DensityMatrix density_from_json(const json& j) {
  const SpinJ spin = spin_from(j);
  const json& m = field(j, "matrix");
  const auto d = static_cast<std::size_t>(spin.dim());
  if (!m.is_array() || m.size() != d) throw ParseError("\"matrix\" must have two_j + 1 rows");
  CMatrix rho(spin.dim(), spin.dim());
  for (std::size_t r = 0; r < d; ++r) {
    if (!m[r].is_array() || m[r].size() != d) throw ParseError("matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < d; ++c) {
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from(m[r][c], "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  try {
    return {spin, rho};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what());
  }
}

MajoranaConfig config_from_json(const json& j) {
  const SpinJ spin = spin_from(j);
  const json& p = field(j, "points");
  if (!p.is_array() || static_cast<int>(p.size()) != spin.two_j()) throw ParseError("\"points\" must hold two_j entries");
  std::vector<SphereDirection> pts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!p[i].is_array() || p[i].size() != 2) throw ParseError(where + ": expected [theta_bar, phi]");
    try {
      pts.emplace_back(number(p[i][0], where), number(p[i][1], where));
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return {spin, std::move(pts)};
}

ClassicalMixture mixture_from_json(const json& j) {
  ClassicalMixture m;
  m.spin = spin_from(j);
  const json& a = field(j, "atoms");
  if (!a.is_array()) throw ParseError("\"atoms\" must be an array");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    try {
      m.atoms.push_back({number(field(a[i], "weight"), where),
                         SphereDirection(number(field(a[i], "theta_bar"), where), number(field(a[i], "phi"), where))});
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return m;
}

AnyState state_from_json(const json& j) {
  if (j.is_object() && j.contains("amplitudes")) return pure_state_from_json(j);
  if (j.is_object() && j.contains("matrix")) return density_from_json(j);
  throw ParseError("state must contain \"amplitudes\" or \"matrix\"");
}

DensityMatrix as_density(const AnyState& s) {
  if (const auto* p = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*p);
  return std::get<DensityMatrix>(s);
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string majorana_csv(const MajoranaConfig& config) {
  std::string s = "theta_bar,phi,x,y,z\n";
  for (const auto& p : config.points) {
    const Vec3 v = p.unit_vector();
    s += fmt(p.theta_bar) + ',' + fmt(p.phi) + ',' + fmt(v.x()) + ',' + fmt(v.y()) + ',' + fmt(v.z()) + '\n';
  }
  return s;
}

std::string atoms_csv(const ClassicalMixture& mixture) {
  if (mixture.atoms.empty()) {
    throw std::invalid_argument("mixture has no atoms: nothing to export (was the QP solved?)");
  }
  std::string s = "theta_bar,phi,x,y,z,weight\n";
  for (const auto& a : mixture.atoms) {
    const Vec3 v = a.dir.unit_vector();
    s += fmt(a.dir.theta_bar) + ',' + fmt(a.dir.phi) + ',' + fmt(v.x()) + ',' + fmt(v.y()) + ',' + fmt(v.z()) + ',' +
         fmt(a.weight) + '\n';
  }
  return s;
}

json RunManifest::reproducible() const {
  return {{"command", command}, {"config", config}, {"rng_seed", rng_seed}, {"version", version}};
}

json RunManifest::full() const {
  json j = reproducible();
  j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

}  // namespace qq::io

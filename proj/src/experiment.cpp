// Copyright 2026 The ctcdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctcdisc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ctcdisc/markov.hpp"
#include "ctcdisc/quantum.hpp"

namespace ctcdisc {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& context) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ConfigError("cannot parse number '" + s + "' in " + context);
  return v;
}

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for '" + key + "'");
  }
}

void require_keys(const YAML::Node& map, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

CVector parse_amplitudes(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence() || node.size() == 0)
    throw ConfigError(where + ": expected a non-empty list of amplitudes");
  CVector v;
  for (const auto& a : node) v.push_back(parse_complex(scalar_as<std::string>(a, where)));
  return v;
}

CVector normalize_loose(CVector v, const std::string& where) {
  const double n = norm(v);
  if (std::abs(n - 1.0) > 1e-6)
    throw ConfigError(where + ": amplitudes are not normalized (norm " + format_double(n) + ")");
  for (auto& x : v) x /= n;
  return v;
}

std::vector<unsigned> parse_grid(const YAML::Node& node) {
  std::vector<unsigned> grid;
  if (node.IsSequence()) {
    for (const auto& x : node) grid.push_back(scalar_as<unsigned>(x, "n_grid"));
  } else if (node.IsMap()) {
    require_keys(node, {"from", "to", "step"}, "n_grid");
    const auto from = scalar_as<unsigned>(node["from"], "n_grid.from");
    const auto to = scalar_as<unsigned>(node["to"], "n_grid.to");
    const auto step = node["step"] ? scalar_as<unsigned>(node["step"], "n_grid.step") : 1u;
    if (step == 0 || to < from) throw ConfigError("n_grid: need from <= to and step >= 1");
    for (unsigned n = from; n <= to; n += step) grid.push_back(n);
  } else {
    throw ConfigError("n_grid: expected a list or {from, to, step}");
  }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw ConfigError("n_grid must be strictly increasing");
  return grid;
}

void apply_override(YAML::Node& root, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' is not key=value");
  const std::string key = trim(item.substr(0, eq));
  const std::string value = item.substr(eq + 1);
  YAML::Node node;
  try {
    node = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError("override '" + item + "': " + e.what());
  }
  std::vector<std::string> path;
  std::stringstream ss(key);
  for (std::string seg; std::getline(ss, seg, '.');) path.push_back(seg);
  YAML::Node cur;
  cur.reset(root);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    YAML::Node child = cur[path[i]];
    if (!child.IsDefined() || child.IsNull() || child.IsScalar()) {
      cur[path[i]] = YAML::Node(YAML::NodeType::Map);
      child = cur[path[i]];
    }
    cur.reset(child);
  }
  cur[path.back()] = node;
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::MonteCarlo: return "montecarlo";
    case Mode::Exponent: return "exponent";
    case Mode::FixedPoint: return "fixedpoint";
  }
  return "?";
}

std::filesystem::path output_path(const ExperimentConfig& cfg, const std::filesystem::path& dir,
                                  const std::string& suffix = "") {
  std::filesystem::path name = cfg.output.empty() ? std::string(mode_name(cfg.mode)) + ".csv" : cfg.output;
  if (!suffix.empty()) name = name.stem().string() + suffix + name.extension().string();
  return name.is_absolute() ? name : dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  out << body;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s = trim(raw);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw ConfigError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s, "'" + raw + "'"), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, "'" + raw + "'");
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {parse_real(s.substr(0, split), "'" + raw + "'"), imag_of(s.substr(split))};
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

ExperimentConfig parse_config(const std::string& yaml_text, const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  for (const auto& o : overrides) apply_override(root, o);

  require_keys(root,
               {"problem", "priors", "omega", "mode", "n", "n_grid", "trials", "seed", "montecarlo",
                "brute_force", "exponent_source", "target", "max_iters", "tol", "output"},
               "config");

  ExperimentConfig cfg;
  const YAML::Node problem = root["problem"];
  if (!problem || !problem.IsMap()) throw ConfigError("missing 'problem' section");
  require_keys(problem, {"kind", "states", "bloch", "unitaries"}, "problem");
  if (!problem["kind"]) throw ConfigError("problem.kind is required");
  cfg.problem_kind = scalar_as<std::string>(problem["kind"], "problem.kind");
  static const std::set<std::string> kinds{"bb84", "two_state", "qubit_set", "explicit"};
  if (!kinds.contains(cfg.problem_kind)) throw ConfigError("unknown problem.kind '" + cfg.problem_kind + "'");

  const bool has_states = static_cast<bool>(problem["states"]);
  const bool has_bloch = static_cast<bool>(problem["bloch"]);
  if (cfg.problem_kind == "bb84") {
    if (has_states || has_bloch || problem["unitaries"])
      throw ConfigError("bb84 takes no states or unitaries");
  } else {
    if (has_states == has_bloch) throw ConfigError("give exactly one of problem.states or problem.bloch");
    if (has_states) {
      const YAML::Node list = problem["states"];
      if (!list.IsSequence()) throw ConfigError("problem.states must be a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "problem.states[" + std::to_string(i) + "]";
        cfg.states.push_back(normalize_loose(parse_amplitudes(list[i], where), where));
      }
    } else {
      const YAML::Node list = problem["bloch"];
      if (!list.IsSequence()) throw ConfigError("problem.bloch must be a list of [theta, phi]");
      for (const auto& ang : list) {
        if (!ang.IsSequence() || ang.size() != 2) throw ConfigError("problem.bloch entries are [theta, phi]");
        const double theta = scalar_as<double>(ang[0], "bloch theta");
        const double phi = scalar_as<double>(ang[1], "bloch phi");
        cfg.states.push_back({std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)});
      }
    }
    if (cfg.problem_kind == "explicit") {
      const YAML::Node us = problem["unitaries"];
      if (!us || !us.IsSequence()) throw ConfigError("explicit problem needs problem.unitaries");
      for (std::size_t u = 0; u < us.size(); ++u) {
        const std::string where = "problem.unitaries[" + std::to_string(u) + "]";
        if (!us[u].IsSequence() || us[u].size() == 0) throw ConfigError(where + ": expected rows");
        const std::size_t rows = us[u].size();
        CMatrix m(rows, rows);
        for (std::size_t r = 0; r < rows; ++r) {
          const CVector row = parse_amplitudes(us[u][r], where);
          if (row.size() != rows) throw ConfigError(where + ": matrix must be square");
          for (std::size_t c = 0; c < rows; ++c) m(r, c) = row[c];
        }
        cfg.unitaries.push_back(std::move(m));
      }
    } else if (problem["unitaries"]) {
      throw ConfigError("problem.unitaries is only valid for kind: explicit");
    }
  }

  if (root["priors"]) {
    std::vector<double> p;
    for (const auto& x : root["priors"]) p.push_back(scalar_as<double>(x, "priors"));
    cfg.priors = std::move(p);
  }

  if (const YAML::Node om = root["omega"]) {
    if (om.IsScalar()) {
      const auto s = om.as<std::string>();
      if (s == "mixed") cfg.omega.kind = OmegaSpec::Kind::MaximallyMixed;
      else if (s == "best") cfg.omega.kind = OmegaSpec::Kind::Best;
      else throw ConfigError("omega: expected 'mixed', 'best', {basis: j} or {diagonal: [...]}");
    } else if (om.IsMap()) {
      require_keys(om, {"basis", "diagonal"}, "omega");
      if (om["basis"] && om["diagonal"]) throw ConfigError("omega: give basis or diagonal, not both");
      if (om["basis"]) {
        cfg.omega.index = scalar_as<std::size_t>(om["basis"], "omega.basis");
      } else if (om["diagonal"]) {
        cfg.omega.kind = OmegaSpec::Kind::Diagonal;
        for (const auto& x : om["diagonal"]) cfg.omega.diagonal.push_back(scalar_as<double>(x, "omega.diagonal"));
      }
    } else {
      throw ConfigError("omega: unsupported form");
    }
  }

  const auto mode = root["mode"] ? scalar_as<std::string>(root["mode"], "mode") : std::string("exact");
  if (mode == "exact") cfg.mode = Mode::Exact;
  else if (mode == "montecarlo") cfg.mode = Mode::MonteCarlo;
  else if (mode == "exponent") cfg.mode = Mode::Exponent;
  else if (mode == "fixedpoint") cfg.mode = Mode::FixedPoint;
  else throw ConfigError("unknown mode '" + mode + "'");

  if (root["n"]) cfg.n = scalar_as<unsigned>(root["n"], "n");
  if (root["n_grid"]) cfg.n_grid = parse_grid(root["n_grid"]);
  if (root["trials"]) cfg.trials = scalar_as<std::uint64_t>(root["trials"], "trials");
  if (root["seed"]) cfg.seed = scalar_as<std::uint64_t>(root["seed"], "seed");
  if (root["montecarlo"]) cfg.montecarlo_columns = scalar_as<bool>(root["montecarlo"], "montecarlo");
  if (root["brute_force"]) cfg.brute_force = scalar_as<bool>(root["brute_force"], "brute_force");
  if (root["exponent_source"]) {
    const auto src = scalar_as<std::string>(root["exponent_source"], "exponent_source");
    if (src == "exact") cfg.exponent_source = ExponentSource::Exact;
    else if (src == "montecarlo") cfg.exponent_source = ExponentSource::MonteCarlo;
    else throw ConfigError("exponent_source must be exact or montecarlo");
  }
  if (root["target"]) cfg.target = scalar_as<std::size_t>(root["target"], "target");
  if (root["max_iters"]) cfg.max_iters = scalar_as<std::size_t>(root["max_iters"], "max_iters");
  if (root["tol"]) cfg.tol = scalar_as<double>(root["tol"], "tol");
  if (root["output"]) cfg.output = scalar_as<std::string>(root["output"], "output");

  const bool needs_trials = cfg.mode == Mode::MonteCarlo || cfg.montecarlo_columns ||
                            (cfg.mode == Mode::Exponent && cfg.exponent_source == ExponentSource::MonteCarlo);
  if (needs_trials && cfg.trials == 0) throw ConfigError("this mode needs trials >= 1");
  if (cfg.mode == Mode::MonteCarlo && cfg.n == 0) throw ConfigError("montecarlo mode needs n >= 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

DiscriminationProblem build_problem(const ExperimentConfig& cfg) {
  std::vector<PureState> states;
  for (const auto& v : cfg.states) states.push_back(PureState::normalized(v));
  const auto priors_for = [&](std::size_t n) {
    if (!cfg.priors) return std::vector<double>(n, 1.0 / static_cast<double>(n));
    if (cfg.priors->size() != n) throw ConfigError("priors: expected " + std::to_string(n) + " entries");
    return *cfg.priors;
  };

  std::optional<DiscriminationProblem> problem;
  if (cfg.problem_kind == "bb84") {
    auto [s, us] = bb84_unitaries();
    problem.emplace(StateSet(s.states(), priors_for(4)), std::move(us));
  } else if (cfg.problem_kind == "two_state") {
    if (states.size() != 2 || states[0].dim() != 2 || states[1].dim() != 2)
      throw ConfigError("two_state needs exactly two qubit states");
    problem.emplace(make_two_state_problem(states[0], states[1], priors_for(2)));
  } else if (cfg.problem_kind == "qubit_set") {
    if (states.size() < 3) throw ConfigError("qubit_set needs at least three states");
    for (const auto& s : states)
      if (s.dim() != 2) throw ConfigError("qubit_set states must be qubits");
    const std::size_t n = states.size();
    problem.emplace(make_qubit_set_problem(StateSet(std::move(states), priors_for(n))));
  } else {
    const std::size_t n = states.size();
    if (cfg.unitaries.size() != n) throw ConfigError("explicit: need one unitary per state");
    for (const auto& s : states)
      if (s.dim() != n) throw ConfigError("explicit: states must be N-dimensional");
    for (const auto& u : cfg.unitaries)
      if (u.rows() != n) throw ConfigError("explicit: unitaries must be N x N");
    StateSet ss(std::move(states), priors_for(n));
    if (is_degenerate(ss)) throw ValidationError("degenerate state set");
    problem.emplace(std::move(ss), UnitarySet(cfg.unitaries));
  }

  const std::size_t n = problem->size();
  switch (cfg.omega.kind) {
    case OmegaSpec::Kind::Basis:
      if (cfg.omega.index >= n) throw ConfigError("omega.basis out of range");
      return problem->with_omega(DensityMatrix::basis_projector(n, cfg.omega.index));
    case OmegaSpec::Kind::Diagonal:
      if (cfg.omega.diagonal.size() != n) throw ConfigError("omega.diagonal must have N entries");
      try {
        return problem->with_omega(DensityMatrix::from_diagonal(cfg.omega.diagonal));
      } catch (const ValidationError& e) {
        throw ConfigError(std::string("omega.diagonal: ") + e.what());
      }
    case OmegaSpec::Kind::MaximallyMixed:
      return problem->with_omega(DensityMatrix::maximally_mixed(n));
    case OmegaSpec::Kind::Best: {
      const BestInitialState best = best_initial_state(*problem, cfg.n);
      return problem->with_omega(DensityMatrix::basis_projector(n, best.index));
    }
  }
  return *problem;
}

std::vector<DecayRow> decay_table(const DiscriminationProblem& problem, const std::vector<unsigned>& n_grid,
                                  const std::optional<SimConfig>& mc, bool brute_force) {
  std::vector<DecayRow> rows;
  if (n_grid.empty()) return rows;
  const std::vector<double> log_curve = log_error_curve(problem, n_grid.back());
  for (unsigned n : n_grid) {
    const ExactProbabilities ex = exact_probabilities(problem, n);
    DecayRow row{n, ex.p_error, ex.p_success,
                 n == 0 ? std::numeric_limits<double>::quiet_NaN() : -log_curve[n] / n,
                 {}, {}, {}};
    if (mc && n > 0) {
      SimConfig c = *mc;
      c.n_copies = n;
      const SimResult r = run_adaptive(problem, c);
      row.p_e_mc = r.empirical_p_e;
      row.mc_stderr = r.std_error;
    } else if (mc) {
      row.p_e_mc = std::numeric_limits<double>::quiet_NaN();
      row.mc_stderr = std::numeric_limits<double>::quiet_NaN();
    }
    if (brute_force) row.p_e_brute = brute_force_error(problem, n);
    rows.push_back(row);
  }
  return rows;
}

std::string decay_table_csv(const std::vector<DecayRow>& rows) {
  const bool mc = !rows.empty() && rows.front().p_e_mc.has_value();
  const bool bf = !rows.empty() && rows.front().p_e_brute.has_value();
  std::string out = "n,p_e_exact,p_s_exact,neg_log_pe_over_n";
  if (mc) out += ",p_e_mc,mc_stderr";
  if (bf) out += ",p_e_brute";
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_double(r.p_e) + ',' + format_double(r.p_s) + ',' +
           format_double(r.neg_log_pe_over_n);
    if (mc) out += ',' + format_double(*r.p_e_mc) + ',' + format_double(*r.mc_stderr);
    if (bf) out += ',' + format_double(*r.p_e_brute);
    out += '\n';
  }
  return out;
}

std::vector<unsigned> default_exponent_grid(const DiscriminationProblem& problem) {
  constexpr unsigned kSearch = 100'000;
  const std::vector<double> curve = log_error_curve(problem, kSearch);
  unsigned n_min = 50;
  for (unsigned n = 0; n <= kSearch; ++n)
    if (curve[n] < std::log(1e-3)) {
      n_min = std::max(n_min, n);
      break;
    }
  std::vector<unsigned> grid;
  for (unsigned n = n_min; n <= n_min + 150; ++n) grid.push_back(n);
  return grid;
}

RunOutcome run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const DiscriminationProblem problem = build_problem(cfg);
  RunOutcome outcome;
  std::ostringstream summary;
  summary << "mode=" << mode_name(cfg.mode);

  switch (cfg.mode) {
    case Mode::Exact: {
      std::vector<unsigned> grid = cfg.n_grid;
      if (grid.empty())
        for (unsigned n = 0; n <= cfg.n; ++n) grid.push_back(n);
      std::optional<SimConfig> mc;
      if (cfg.montecarlo_columns) mc = SimConfig{1, cfg.trials, cfg.seed, FixedIndex{0}, 0};
      if (mc) mc->initial = SampleFromOmega{};
      const auto rows = decay_table(problem, grid, mc, cfg.brute_force);
      const auto path = output_path(cfg, out_dir);
      write_file(path, decay_table_csv(rows));
      outcome.files.push_back(path);
      summary << " rows=" << rows.size() << " n_max=" << rows.back().n
              << " p_e=" << format_double(rows.back().p_e);
      break;
    }
    case Mode::MonteCarlo: {
      const SimConfig sc{cfg.n, cfg.trials, cfg.seed, SampleFromOmega{}, 0};
      const SimResult r = run_adaptive(problem, sc);
      const double exact = exact_probabilities(problem, cfg.n).p_error;
      const double z = r.std_error > 0.0 ? (r.empirical_p_e - exact) / r.std_error
                                         : (r.empirical_p_e == exact ? 0.0 : INFINITY);
      std::string body = "n,trials,seed,errors,empirical_p_e,std_error,exact_p_e,z_score\n";
      body += std::to_string(cfg.n) + ',' + std::to_string(cfg.trials) + ',' + std::to_string(cfg.seed) + ',' +
              std::to_string(r.errors) + ',' + format_double(r.empirical_p_e) + ',' +
              format_double(r.std_error) + ',' + format_double(exact) + ',' + format_double(z) + '\n';
      const auto path = output_path(cfg, out_dir);
      write_file(path, body);
      std::string conf = "true_state,guess,count\n";
      for (std::size_t i = 0; i < r.confusion.size(); ++i)
        for (std::size_t j = 0; j < r.confusion.size(); ++j)
          conf += std::to_string(i) + ',' + std::to_string(j) + ',' + std::to_string(r.confusion[i][j]) + '\n';
      const auto cpath = output_path(cfg, out_dir, "_confusion");
      write_file(cpath, conf);
      outcome.files = {path, cpath};
      summary << " n=" << cfg.n << " trials=" << cfg.trials << " empirical_p_e=" << format_double(r.empirical_p_e)
              << " exact_p_e=" << format_double(exact) << " z=" << format_double(z);
      break;
    }
    case Mode::Exponent: {
      const ExponentReport rep = exponent_report(problem);
      const std::vector<unsigned> grid = cfg.n_grid.empty() ? default_exponent_grid(problem) : cfg.n_grid;
      ExponentEstimate est{NAN, NAN, NAN, {}, {}};
      try {
        const SimConfig sc{1, std::max<std::uint64_t>(cfg.trials, 1), cfg.seed, SampleFromOmega{}, 0};
        est = estimate_exponent(problem, grid, sc, cfg.exponent_source);
      } catch (const std::invalid_argument&) {
        // No usable points (e.g. orthogonal states); leave NaN.
      }
      std::string body = "tau,xi_lower,gersh_col,gersh_row,chernoff,xi_hat_regression,ci_lo,ci_hi\n";
      body += format_double(rep.tau) + ',' + format_double(rep.xi_lower) + ',' + format_double(rep.gersh_col) +
              ',' + format_double(rep.gersh_row) + ',' + format_double(rep.chernoff) + ',' +
              format_double(est.xi_hat) + ',' + format_double(est.ci_lo) + ',' + format_double(est.ci_hi) + '\n';
      const auto path = output_path(cfg, out_dir);
      write_file(path, body);
      outcome.files.push_back(path);
      summary << " tau=" << format_double(rep.tau) << " xi_lower=" << format_double(rep.xi_lower)
              << " chernoff=" << format_double(rep.chernoff) << " xi_hat=" << format_double(est.xi_hat);
      break;
    }
    case Mode::FixedPoint: {
      if (cfg.target >= problem.size()) throw ConfigError("target out of range");
      const InteractionUnitary v = build_interaction_unitary(problem.unitaries());
      const DensityMatrix rho = DensityMatrix::from_pure(problem.states()[cfg.target]);
      const DensityMatrix goal = DensityMatrix::basis_projector(problem.size(), cfg.target);
      std::string body = "iter,residual,trace_distance_to_target\n";
      const FixedPointResult res = iterate_to_fixed_point(
          v, rho, problem.omega(), cfg.max_iters, cfg.tol,
          [&](std::size_t it, const DensityMatrix& sigma, double residual) {
            body += std::to_string(it) + ',' + format_double(residual) + ',' +
                    format_double(trace_distance(sigma, goal)) + '\n';
          });
      const auto path = output_path(cfg, out_dir);
      write_file(path, body);
      outcome.files.push_back(path);
      summary << " target=" << cfg.target << " iterations=" << res.iterations
              << " residual=" << format_double(res.residual)
              << " trace_distance=" << format_double(trace_distance(res.state, goal))
              << " converged=" << (res.converged ? "yes" : "no");
      break;
    }
  }
  outcome.summary = summary.str();
  return outcome;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const YAML::Exception*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e))
    return 2;
  if (dynamic_cast<const ValidationError*>(&e)) return 3;
  if (dynamic_cast<const ResourceGuardError*>(&e)) return 4;
  return 1;
}

}  // namespace ctcdisc

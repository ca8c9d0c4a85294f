// Copyright 2026 The mtdecide Authors.
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

#include "mtdecide/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mtdecide {

using nlohmann::json;

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(std::string_view cell, std::string_view what) {
  T value{};
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw FormatError("csv: bad " + std::string(what) + " '" + std::string(cell) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json matrix_json(const AgentMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

AgentMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array()) throw FormatError("json: expected a matrix");
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  AgentMatrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim) throw FormatError("json: ragged matrix");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out(v);
  for (auto& x : out) ++x;
  return out;
}

json band_json(const SeriesBand& b) {
  auto series = [](const std::vector<std::optional<double>>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(optional_json(x));
    return a;
  };
  return {{"mean", series(b.mean)},
          {"p10", series(b.p10)},
          {"p50", series(b.p50)},
          {"p90", series(b.p90)},
          {"samples", b.samples}};
}

json config_json(const ExperimentConfig& c) {
  json j = {
      {"mode", to_string(c.mode)},
      {"n_agents", c.n_agents},
      {"dim", c.dim},
      {"n_models", c.n_models},
      {"max_degree", c.max_degree},
      {"radius", c.radius},
      {"model_range", {c.model_range.lo, c.model_range.hi}},
      {"noise_variance", {c.noise.noise_variance_lo, c.noise.noise_variance_hi}},
      {"regressor_variance", {c.noise.regressor_variance_lo, c.noise.regressor_variance_hi}},
      {"alpha", c.alpha},
      {"beta", c.beta},
      {"nu", c.nu},
      {"mu", c.mu},
      {"max_iters", c.max_iters},
      {"n_trials", c.n_trials},
      {"seed", c.seed},
      {"target_agent", c.target_agent ? json(*c.target_agent + 1) : json(nullptr)},
      {"reassign_at", c.reassign_at},
      {"equilibrium_breaking", c.equilibrium_breaking},
      {"decision_start", c.decision_start},
      {"hold_window", c.hold_window},
  };
  if (c.mode == Mode::kMobile) {
    j["motion"] = {{"goal_gain", c.motion.goal_gain},
                   {"align_gain", c.motion.align_gain},
                   {"repel_gain", c.motion.repel_gain},
                   {"max_speed", c.motion.max_speed},
                   {"repel_radius", c.motion.repel_radius},
                   {"comm_radius", c.motion.comm_radius},
                   {"spawn_extent", c.motion.spawn_extent},
                   {"start_iteration", c.motion.start_iteration}};
  }
  return j;
}

}  // namespace

void write_rows_csv(std::ostream& out, std::span<const IterationRow> rows, std::size_t n_models) {
  out << "iter";
  for (std::size_t j = 1; j <= n_models; ++j) out << ",msd_" << j;
  out << ",msd_d,distinct_desired,all_agreed,coverage\n";
  for (const auto& row : rows) {
    out << row.iteration;
    for (std::size_t j = 0; j < n_models; ++j) {
      out << ',';
      if (j < row.msd_observed.size() && row.msd_observed[j]) out << format_real(*row.msd_observed[j]);
    }
    out << ',';
    if (row.msd_desired) out << format_real(*row.msd_desired);
    out << ',' << row.distinct_desired << ',' << (row.all_agreed ? 1 : 0) << ',';
    if (row.coverage) out << *row.coverage;
    out << '\n';
  }
}

std::vector<IterationRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv: missing header");
  const auto header = split(line);
  if (header.size() < 5 || header.front() != "iter" || header[header.size() - 4] != "msd_d") {
    throw FormatError("csv: unexpected header '" + line + "'");
  }
  const std::size_t n_models = header.size() - 5;
  std::vector<IterationRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw FormatError("csv: wrong cell count in '" + line + "'");
    IterationRow row;
    row.iteration = parse_number<std::size_t>(cells[0], "iter");
    row.msd_observed.resize(n_models);
    for (std::size_t j = 0; j < n_models; ++j) {
      if (!cells[1 + j].empty()) row.msd_observed[j] = parse_number<double>(cells[1 + j], "msd");
    }
    const std::size_t base = 1 + n_models;
    if (!cells[base].empty()) row.msd_desired = parse_number<double>(cells[base], "msd_d");
    row.distinct_desired = parse_number<std::size_t>(cells[base + 1], "distinct_desired");
    row.all_agreed = parse_number<int>(cells[base + 2], "all_agreed") != 0;
    if (!cells[base + 3].empty()) row.coverage = parse_number<std::size_t>(cells[base + 3], "coverage");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points) {
  out << "iter,agent,x,y,desired_label\n";
  for (const auto& p : points) {
    out << p.iteration << ',' << p.agent + 1 << ',' << format_real(p.x) << ','
        << format_real(p.y) << ',' << p.desired_label << '\n';
  }
}

std::string record_to_json(const RunRecord& r) {
  json j = {
      {"mode", to_string(r.mode)},
      {"beta", r.beta},
      {"hold_window", r.hold_window},
      {"models", matrix_json(r.models)},
      {"assignment", one_based(r.assignment)},
      {"target_agent", r.target_agent ? json(*r.target_agent + 1) : json(nullptr)},
      {"final_w", matrix_json(r.final_w)},
      {"final_agreement", r.final_agreement},
      {"switch_counts", r.switch_counts},
      {"first_agreement", r.first_agreement ? json(*r.first_agreement) : json(nullptr)},
      {"failure", r.failure ? json(*r.failure) : json(nullptr)},
      {"iterations", r.rows.size()},
  };
  const SuccessVerdict v = evaluate_success(r);
  j["success"] = v.success;
  j["final_label"] = v.model ? json(*v.model + 1) : json(0);
  return j.dump(2);
}

RunRecord record_from_json(std::string_view text, std::vector<IterationRow> rows) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("record json: ") + e.what());
  }
  try {
    RunRecord r;
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!mode) throw FormatError("record json: unknown mode");
    r.mode = *mode;
    r.beta = j.at("beta").get<double>();
    r.hold_window = j.at("hold_window").get<std::size_t>();
    r.models = matrix_from_json(j.at("models"));
    r.assignment = j.at("assignment").get<std::vector<std::size_t>>();
    for (auto& a : r.assignment) {
      if (a == 0) throw FormatError("record json: assignment is one-based");
      --a;
    }
    if (!j.at("target_agent").is_null()) r.target_agent = j.at("target_agent").get<std::size_t>() - 1;
    r.final_w = matrix_from_json(j.at("final_w"));
    r.final_agreement = j.at("final_agreement").get<std::vector<double>>();
    r.switch_counts = j.at("switch_counts").get<std::vector<std::size_t>>();
    if (!j.at("first_agreement").is_null()) r.first_agreement = j.at("first_agreement").get<std::size_t>();
    if (!j.at("failure").is_null()) r.failure = j.at("failure").get<std::string>();
    r.rows = std::move(rows);
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("record json: ") + e.what());
  }
}

std::string network_to_json(const Topology& topology, const ModelSet& models) {
  json agents = json::array();
  for (AgentId k = 0; k < topology.size(); ++k) {
    const Point2 p = topology.positions()[k];
    json a = {{"id", k + 1}, {"x", p.x}, {"y", p.y}, {"degree", topology.degree(k)}};
    if (k < models.agents()) a["model"] = models.assignment[k] + 1;
    agents.push_back(a);
  }
  json links = json::array();
  for (auto [a, b] : topology.edges()) links.push_back({a + 1, b + 1});
  json j = {{"agents", agents},
            {"links", links},
            {"models", matrix_json(models.models)},
            {"assignment", one_based(models.assignment)}};
  return j.dump(2);
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

std::string summary_to_json(const MonteCarloSummary& s) {
  json trials = json::array();
  for (const auto& t : s.trials) {
    trials.push_back({{"trial", t.index},
                      {"seed", t.seed},
                      {"success", t.success},
                      {"final_label", t.model ? json(*t.model + 1) : json(0)},
                      {"switches", t.switches},
                      {"first_agreement",
                       t.first_agreement ? json(*t.first_agreement) : json(nullptr)},
                      {"diverged", t.diverged}});
  }
  json observed = json::array();
  for (const auto& b : s.msd_observed) observed.push_back(band_json(b));
  json j = {{"schema_version", MonteCarloSummary::kSchemaVersion},
            {"config", config_json(s.config)},
            {"n_trials", s.trials.size()},
            {"successes", s.successes},
            {"success_rate", s.success_rate},
            {"trials", trials},
            {"msd_observed", observed},
            {"msd_desired", band_json(s.msd_desired)}};
  return j.dump(2);
}

std::string snapshot_to_json(const RoundView& round) {
  const std::size_t n = round.topology.size();
  json labels = json::array();
  for (const auto& v : round.labels) {
    labels.push_back({{"agent", v.agent + 1},
                      {"agreement", v.agreement},
                      {"model_count", v.model_count},
                      {"labels", v.labels},
                      {"majority", one_based(v.majority)}});
  }
  json j = {{"iteration", round.iteration},
            {"n_agents", n},
            {"psi", matrix_json(round.diffusion.psi)},
            {"phi", matrix_json(round.diffusion.phi)},
            {"w_prev", matrix_json(round.w_prev)},
            {"w", matrix_json(round.w)},
            {"E", round.clusters.e},
            {"A", round.combination.dense()},
            {"H", round.desired.h.dense()},
            {"A_dot", round.desired.a_dot.dense()},
            {"A_ddot", round.desired.a_ddot.dense()},
            {"labels", labels}};
  if (round.anchor) {
    json sources = json::array();
    for (const auto& s : round.anchor->source) sources.push_back(s ? *s + 1 : 0);
    j["anchor"] = matrix_json(round.anchor->anchor);
    j["source"] = sources;
  }
  if (round.motion) {
    json pos = json::array();
    for (const auto& p : round.motion->positions) pos.push_back({p.x, p.y});
    j["positions"] = pos;
  }
  return j.dump();
}

}  // namespace mtdecide

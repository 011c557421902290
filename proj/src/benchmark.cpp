#include "stark/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "stark/siegert.hpp"

namespace stark::bench {

namespace {

constexpr std::string_view kHeader = "F,e_pert,e_num_re,e_num_im,sigma_percent,iterations,converged";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_optional_number(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  const std::string copy(field);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size()) throw std::invalid_argument("not a number: '" + copy + "'");
  return v;
}

int parse_int(std::string_view field) {
  field = trim(field);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("not an integer: '" + std::string(field) + "'");
  return v;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

} // namespace

double default_field_max(unsigned n) {
  if (n == 0) throw std::invalid_argument("principal quantum number must be positive");
  if (n == 1) return 0.1;
  if (n == 2) return 0.01;
  const double n4 = std::pow(static_cast<double>(n), 4);
  return 1.0 / (20.0 * n4);
}

RunConfig resolved(RunConfig cfg) {
  if (cfg.states.empty()) throw std::invalid_argument("no state selected");
  if (cfg.f_max < 0.0) cfg.f_max = default_field_max(cfg.states.front().principal());
  if (cfg.steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (!(cfg.f_min >= 0.0)) throw std::invalid_argument("fmin must be nonnegative");
  if (!(cfg.f_max >= cfg.f_min)) throw std::invalid_argument("fmax must not be below fmin");
  if (cfg.order != 1 && cfg.order != 2) throw std::invalid_argument("order must be 1 or 2");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  return cfg;
}

std::vector<double> field_grid(const RunConfig& cfg) {
  std::vector<double> out;
  out.reserve(cfg.steps);
  if (cfg.steps == 1) {
    out.push_back(cfg.f_min);
    return out;
  }
  const double span = cfg.f_max - cfg.f_min;
  for (unsigned i = 0; i < cfg.steps; ++i) out.push_back(cfg.f_min + span * i / (cfg.steps - 1));
  out.back() = cfg.f_max;
  return out;
}

Summary Report::summary() const {
  Summary s;
  for (const auto& run : runs)
    for (const auto& row : run.rows) {
      if (!row.converged) {
        s.all_converged = false;
        ++s.failures;
      }
      if (row.sigma_percent) s.max_sigma_percent = std::max(s.max_sigma_percent.value_or(0.0), *row.sigma_percent);
    }
  return s;
}

DeviationRow make_row(const ParabolicState& s, double field, int order, const std::optional<std::complex<double>>& energy,
                      int iterations) {
  DeviationRow row;
  row.field = field;
  row.e_pert = perturbation::stark_energy(s, field, order);
  row.iterations = iterations;
  if (energy) {
    row.converged = true;
    row.e_num_re = energy->real();
    row.e_num_im = energy->imag();
    row.sigma_percent = std::abs((row.e_pert - energy->real()) / energy->real()) * 100.0;
  }
  return row;
}

Report run(const RunConfig& input, unsigned threads) {
  const RunConfig cfg = resolved(input);
  const std::vector<double> grid = field_grid(cfg);
  siegert::SolverOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;

  Report report{cfg, std::vector<StateRun>(cfg.states.size())};
  auto work = [&](std::size_t i) {
    const ParabolicState& s = cfg.states[i];
    StateRun run{s, {}};
    for (const auto& point : siegert::energy_scan(s, grid, opts)) {
      if (point.solution)
        run.rows.push_back(make_row(s, point.field, cfg.order, point.solution->energy, point.solution->iterations));
      else
        run.rows.push_back(make_row(s, point.field, cfg.order, std::nullopt, 0));
    }
    report.runs[i] = std::move(run);
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, cfg.states.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.states.size(); ++i) work(i);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cfg.states.size(); i = next++) work(i);
    });
  for (auto& t : pool) t.join();
  return report;
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::string states;
  for (const auto& s : cfg.states) states += (states.empty() ? "" : ";") + format_state(s);
  return {{"states", states},
          {"fmin", format_number(cfg.f_min)},
          {"fmax", format_number(cfg.f_max)},
          {"steps", std::to_string(cfg.steps)},
          {"order", std::to_string(cfg.order)},
          {"tol", format_number(cfg.tol)},
          {"max_iter", std::to_string(cfg.max_iter)}};
}

std::string to_csv(const Report& report) {
  std::string out;
  for (const auto& [k, v] : config_echo(report.config)) out += "# " + k + "=" + v + "\n";
  out += kHeader;
  out += '\n';
  for (const auto& run : report.runs) {
    out += "# state=" + format_state(run.state) + "\n";
    for (const auto& r : run.rows) {
      out += format_number(r.field) + ',' + format_number(r.e_pert) + ',' + optional_number(r.e_num_re) + ',' +
             optional_number(r.e_num_im) + ',' + optional_number(r.sigma_percent) + ',' + std::to_string(r.iterations) +
             ',' + (r.converged ? "true" : "false") + '\n';
    }
  }
  const Summary s = report.summary();
  out += "# summary max_sigma_percent=" + optional_number(s.max_sigma_percent) +
         " all_converged=" + (s.all_converged ? "true" : "false") + "\n";
  return out;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_echo(report.config)) config[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& run : report.runs)
    for (const auto& r : run.rows) {
      nlohmann::ordered_json row;
      row["state"] = format_state(run.state);
      row["F"] = r.field;
      row["e_pert"] = r.e_pert;
      row["e_num_re"] = optional_json(r.e_num_re);
      row["e_num_im"] = optional_json(r.e_num_im);
      row["sigma_percent"] = optional_json(r.sigma_percent);
      row["iterations"] = r.iterations;
      row["converged"] = r.converged;
      rows.push_back(std::move(row));
    }
  const Summary s = report.summary();
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  doc["config"] = std::move(config);
  doc["summary"] = {{"max_sigma_percent", optional_json(s.max_sigma_percent)}, {"all_converged", s.all_converged}};
  return doc.dump(2) + "\n";
}

std::vector<DeviationRow> parse_csv(std::string_view text) {
  std::vector<DeviationRow> rows;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw std::invalid_argument("unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 7) throw std::invalid_argument("expected 7 CSV fields, got " + std::to_string(fields.size()));
    DeviationRow r;
    const auto field = parse_optional_number(fields[0]);
    const auto e_pert = parse_optional_number(fields[1]);
    if (!field || !e_pert) throw std::invalid_argument("F and e_pert are mandatory");
    r.field = *field;
    r.e_pert = *e_pert;
    r.e_num_re = parse_optional_number(fields[2]);
    r.e_num_im = parse_optional_number(fields[3]);
    r.sigma_percent = parse_optional_number(fields[4]);
    r.iterations = parse_int(fields[5]);
    const auto flag = trim(fields[6]);
    if (flag != "true" && flag != "false") throw std::invalid_argument("converged must be true or false");
    r.converged = flag == "true";
    rows.push_back(r);
  }
  if (!header_seen) throw std::invalid_argument("missing CSV header");
  return rows;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ParabolicState parse_state(std::string_view text) {
  const auto parts = split(trim(text), ',');
  if (parts.size() != 3) throw std::invalid_argument("state must be n1,n2,m");
  return perturbation::make_state(parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]));
}

std::string format_state(const ParabolicState& s) {
  return std::to_string(s.n1) + "," + std::to_string(s.n2) + "," + std::to_string(s.m);
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  int lineno = 0;
  for (std::string_view line : split(text, '\n')) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
  }
  return out;
}

} // namespace stark::bench

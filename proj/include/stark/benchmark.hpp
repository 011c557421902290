#pragma once

// Deviation benchmark: perturbative energy against the numerical reference on
// a field grid, with CSV/JSON emission.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stark/perturbation.hpp"

namespace stark::bench {

using perturbation::ParabolicState;

struct DeviationRow {
  double field = 0.0;
  double e_pert = 0.0;
  std::optional<double> e_num_re;
  std::optional<double> e_num_im;
  std::optional<double> sigma_percent;  ///< |(e_pert - Re E)/Re E| * 100, converged rows only
  int iterations = 0;
  bool converged = false;

  friend bool operator==(const DeviationRow&, const DeviationRow&) = default;
};

enum class Format { csv, json };

struct RunConfig {
  std::vector<ParabolicState> states;
  double f_min = 0.0;
  double f_max = -1.0;  ///< negative: default_field_max of the first state
  unsigned steps = 21;  ///< number of grid points
  int order = 2;
  double tol = 1e-10;
  int max_iter = 100;
};

/// 0.1 for n = 1, 0.01 for n = 2, 1/(20 n^4) otherwise.
double default_field_max(unsigned n);

/// Fills defaults and checks steps >= 1, f_max >= f_min >= 0, order in {1, 2},
/// at least one state. Throws std::invalid_argument.
RunConfig resolved(RunConfig cfg);

/// Evenly spaced grid, `steps` points from f_min to f_max (f_min alone for one point).
std::vector<double> field_grid(const RunConfig& cfg);

struct StateRun {
  ParabolicState state;
  std::vector<DeviationRow> rows;
};

struct Summary {
  std::optional<double> max_sigma_percent;
  bool all_converged = true;
  std::size_t failures = 0;
};

struct Report {
  RunConfig config;
  std::vector<StateRun> runs;

  Summary summary() const;
};

DeviationRow make_row(const ParabolicState& s, double field, int order, const std::optional<std::complex<double>>& energy,
                      int iterations);

/// Runs every state of cfg (warm-started scan per state). States are spread
/// over up to `threads` workers; row order is independent of the thread count.
Report run(const RunConfig& cfg, unsigned threads = 1);

/// Flat key=value echo of the configuration, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

/// Rows of a CSV produced by to_csv, in file order. Comment lines are skipped.
/// Throws std::invalid_argument on malformed input.
std::vector<DeviationRow> parse_csv(std::string_view text);

/// Shortest round-trip decimal, "%.17g".
std::string format_number(double v);

/// "n1,n2,m" with optional sign on m; throws std::invalid_argument.
ParabolicState parse_state(std::string_view text);
std::string format_state(const ParabolicState& s);

/// key=value lines; '#' starts a comment; blank lines ignored; keys and
/// values are trimmed. Throws std::invalid_argument on a line without '='
/// or a repeated key.
std::map<std::string, std::string> parse_key_values(std::string_view text);

} // namespace stark::bench

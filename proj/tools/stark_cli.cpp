// stark: command-line front end over libstark's C interface.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stark/stark.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStrict = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(stark_status st) {
  if (st == STARK_OK) return;
  const std::string msg = std::string(stark_status_name(st)) + ": " + stark_last_error();
  if (st == STARK_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw ApiError(msg);
}

std::string num(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

stark_state parse_state(const std::string& text) {
  stark_state s{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d%c", &s.n1, &s.n2, &s.m, &tail) != 3)
    throw UsageError("--state expects n1,n2,m (got '" + text + "')");
  if (s.n1 < 0 || s.n2 < 0) throw UsageError("parabolic quantum numbers must be nonnegative");
  return s;
}

std::string state_label(stark_state s) {
  return "(" + std::to_string(s.n1) + "," + std::to_string(s.n2) + "," + std::to_string(s.m) + ")";
}

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STARK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ApiError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw ApiError("write to '" + path + "' failed");
}

struct Expansion {
  explicit Expansion(stark_state s) { check(stark_expansion_create(s, &handle)); }
  ~Expansion() { stark_expansion_destroy(handle); }
  Expansion(const Expansion&) = delete;
  Expansion& operator=(const Expansion&) = delete;

  std::string exact(stark_coefficient which, double* value = nullptr) const {
    size_t needed = 0;
    check(stark_expansion_coefficient(handle, which, nullptr, 0, &needed, nullptr));
    std::string buf(needed, '\0');
    check(stark_expansion_coefficient(handle, which, buf.data(), buf.size(), nullptr, value));
    buf.resize(needed - 1);
    return buf;
  }

  stark_expansion* handle = nullptr;
};

std::string zint_exact(unsigned a, unsigned k, unsigned kp, unsigned m, double* value) {
  size_t needed = 0;
  check(stark_zint(a, k, kp, m, nullptr, 0, &needed, nullptr));
  std::string buf(needed, '\0');
  check(stark_zint(a, k, kp, m, buf.data(), buf.size(), nullptr, value));
  buf.resize(needed - 1);
  return buf;
}

std::vector<double> linspace(double lo, double hi, unsigned points) {
  if (points < 1) throw UsageError("--steps must be at least 1");
  if (!(lo >= 0.0) || !(hi >= lo)) throw UsageError("need 0 <= fmin <= fmax");
  std::vector<double> out;
  if (points == 1) return {lo};
  for (unsigned i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
  out.back() = hi;
  return out;
}

int cmd_energy(const std::string& state_text, double field, int order) {
  const stark_state s = parse_state(state_text);
  if (order < 0 || order > 2) throw UsageError("--order must be 0, 1 or 2");
  if (!(field >= 0.0)) throw UsageError("--field must be nonnegative");
  const Expansion e(s);
  unsigned n = 0;
  check(stark_principal_number(s, &n));
  std::cout << "state " << state_label(s) << "  n = " << n << "\n";
  const char* names[] = {"e0", "e1", "e2"};
  for (int i = 0; i < 3; ++i) {
    double v = 0.0;
    const std::string r = e.exact(static_cast<stark_coefficient>(i), &v);
    std::cout << names[i] << " = " << r << " (" << num(v) << ")\n";
  }
  double energy = 0.0;
  check(stark_expansion_energy(e.handle, field, order, &energy));
  std::cout << "E(F=" << num(field, 15) << ", order " << order << ") = " << num(energy, 15) << "\n";
  return 0;
}

int cmd_states(unsigned n) {
  size_t count = 0;
  check(stark_enumerate_states(n, nullptr, 0, &count));
  std::vector<stark_state> states(count);
  check(stark_enumerate_states(n, states.data(), states.size(), &count));
  std::cout << "n1 n2 m e0 e1 e2\n";
  for (const auto& s : states) {
    const Expansion e(s);
    std::cout << s.n1 << ' ' << s.n2 << ' ' << s.m << ' ' << e.exact(STARK_COEF_E0) << ' ' << e.exact(STARK_COEF_E1)
              << ' ' << e.exact(STARK_COEF_E2) << "\n";
  }
  return 0;
}

int cmd_zint(unsigned a, unsigned k, unsigned kp, unsigned m, bool check_flag) {
  double value = 0.0;
  const std::string exact = zint_exact(a, k, kp, m, &value);
  std::cout << exact << "\n";
  if (check_flag) {
    double quad = 0.0;
    check(stark_zint_quadrature(a, k, kp, m, &quad));
    std::cout << "quadrature " << num(quad) << "\n";
    std::cout << "abs_diff " << num(std::abs(quad - value), 3) << "\n";
  }
  return 0;
}

int cmd_basis_plot(unsigned k, unsigned m, double x_max, unsigned points, const std::string& out) {
  if (x_max <= 0.0) x_max = 4.0 * (k + m + 1) + 8.0;
  std::vector<double> x(points), density(points);
  check(stark_basis_samples(k, m, x_max, points, x.data(), density.data()));
  unsigned nodes = 0;
  check(stark_basis_node_count(k, m, &nodes));
  std::ostringstream text;
  text << "# k=" << k << " m=" << m << " nodes=" << nodes << "\n# x density\n";
  for (unsigned i = 0; i < points; ++i) text << num(x[i]) << ' ' << num(density[i]) << '\n';
  emit(text.str(), out);
  return 0;
}

stark_solver_options solver_options(double tol) {
  stark_solver_options o;
  stark_solver_options_default(&o);
  if (tol > 0.0) o.tol = tol;
  return o;
}

int cmd_numeric(const std::string& state_text, double field, double tol) {
  const stark_state s = parse_state(state_text);
  const stark_solver_options o = solver_options(tol);
  stark_siegert_result r;
  check(stark_siegert_energy(s, field, &o, &r));
  // E(-F) of a state is E(F) of its mirror image
  const Expansion e(field < 0.0 ? stark_state{s.n2, s.n1, s.m} : s);
  double pert = 0.0;
  check(stark_expansion_energy(e.handle, std::abs(field), 2, &pert));
  std::cout << "state " << state_label(s) << "  F = " << num(field, 15) << "\n";
  std::cout << "E_num = " << num(r.energy_re) << " " << (r.energy_im < 0 ? "- " : "+ ") << num(std::abs(r.energy_im))
            << "i\n";
  std::cout << "beta1 = " << num(r.beta1_re) << "  beta2 = " << num(r.beta2_re) << "\n";
  std::cout << "E_pert(order 2) = " << num(pert) << "\n";
  std::cout << "sigma_percent = " << num(std::abs((pert - r.energy_re) / r.energy_re) * 100.0, 6) << "\n";
  std::cout << "iterations = " << r.iterations << "  residual = " << num(r.residual, 3)
            << "  boundary = " << (r.outgoing ? "outgoing" : "decaying") << "\n";
  return 0;
}

int cmd_scan(const std::string& state_text, double fmin, double fmax, unsigned steps, double tol,
             const std::string& out, const std::string& format) {
  const stark_state s = parse_state(state_text);
  const std::vector<double> fields = linspace(fmin, fmax, steps);
  const stark_solver_options o = solver_options(tol);
  std::vector<stark_siegert_result> results(fields.size());
  std::vector<stark_status> statuses(fields.size());
  check(stark_energy_scan(s, fields.data(), fields.size(), &o, results.data(), statuses.data()));
  std::ostringstream text;
  bool failed = false;
  if (format == "json") {
    text << "{\n  \"state\": \"" << s.n1 << ',' << s.n2 << ',' << s.m << "\",\n  \"points\": [\n";
    for (size_t i = 0; i < fields.size(); ++i) {
      const auto& r = results[i];
      const bool ok = statuses[i] == STARK_OK;
      failed |= !ok;
      text << "    {\"F\": " << num(fields[i]);
      if (ok)
        text << ", \"e_re\": " << num(r.energy_re) << ", \"e_im\": " << num(r.energy_im) << ", \"beta1\": "
             << num(r.beta1_re) << ", \"iterations\": " << r.iterations;
      text << ", \"status\": \"" << stark_status_name(statuses[i]) << "\"}" << (i + 1 < fields.size() ? "," : "")
           << "\n";
    }
    text << "  ]\n}\n";
  } else {
    text << "F,e_re,e_im,beta1,iterations,status\n";
    for (size_t i = 0; i < fields.size(); ++i) {
      const auto& r = results[i];
      const bool ok = statuses[i] == STARK_OK;
      failed |= !ok;
      text << num(fields[i]) << ',' << (ok ? num(r.energy_re) : "") << ',' << (ok ? num(r.energy_im) : "") << ','
           << (ok ? num(r.beta1_re) : "") << ',' << r.iterations << ',' << stark_status_name(statuses[i]) << '\n';
    }
  }
  emit(text.str(), out);
  return failed ? kExitFailure : 0;
}

struct BenchFlags {
  std::string config;
  std::string state;
  unsigned shell = 0;
  double fmin = 0.0, fmax = 0.0, tol = 0.0;
  unsigned steps = 0;
  int order = 0;
  std::string out, format;
  bool strict = false;
};

int cmd_bench(const BenchFlags& f, const CLI::App& app) {
  stark_bench_config cfg;
  stark_bench_config_default(&cfg);
  if (!f.config.empty()) {
    const stark_status st = stark_bench_config_load(f.config.c_str(), &cfg);
    if (st == STARK_ERR_IO || st == STARK_ERR_INVALID_ARGUMENT)
      throw UsageError(std::string(stark_status_name(st)) + ": " + stark_last_error());
    check(st);
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--state")) {
    cfg.state = parse_state(f.state);
    cfg.shell = 0;
  }
  if (given("--shell")) cfg.shell = f.shell;
  if (given("--fmin")) cfg.fmin = f.fmin;
  if (given("--fmax")) cfg.fmax = f.fmax;
  if (given("--steps")) cfg.steps = f.steps;
  if (given("--order")) cfg.order = f.order;
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--strict")) cfg.strict = f.strict ? 1 : 0;
  if (given("--format")) cfg.format = f.format == "json" ? STARK_FORMAT_JSON : STARK_FORMAT_CSV;
  if (given("--out")) {
    if (f.out.size() >= STARK_PATH_MAX) throw UsageError("--out path too long");
    std::snprintf(cfg.out_path, sizeof cfg.out_path, "%s", f.out.c_str());
  }
  if (cfg.shell == 0 && cfg.state.n1 < 0) throw UsageError("invalid state");

  stark_bench* raw = nullptr;
  check(stark_bench_run(&cfg, thread_budget(), &raw));
  const std::unique_ptr<stark_bench, decltype(&stark_bench_destroy)> bench(raw, &stark_bench_destroy);

  if (cfg.out_path[0] != '\0') {
    const stark_status st = stark_bench_write(bench.get(), cfg.out_path, cfg.format);
    if (st == STARK_ERR_IO) throw ApiError(stark_last_error());
    check(st);
  } else {
    size_t needed = 0;
    check(stark_bench_render(bench.get(), cfg.format, nullptr, 0, &needed));
    std::string text(needed, '\0');
    check(stark_bench_render(bench.get(), cfg.format, text.data(), text.size(), nullptr));
    text.resize(needed - 1);
    std::cout << text;
    std::cout.flush();
  }

  double max_sigma = 0.0;
  int all_converged = 0;
  size_t failures = 0;
  check(stark_bench_summary(bench.get(), &max_sigma, &all_converged, &failures));
  std::cerr << "summary: max_sigma_percent=" << (std::isnan(max_sigma) ? std::string("n/a") : num(max_sigma, 6))
            << " failed_points=" << failures << "\n";
  if (all_converged) return 0;
  return cfg.strict ? kExitStrict : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stark shifts of hydrogen: perturbative coefficients, exact Laguerre integrals, numerical resonances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", stark_version());

  std::string state = "0,0,0";
  double field = 0.0;
  int order = 2;

  auto* energy = app.add_subcommand("energy", "perturbative coefficients and E(F)");
  energy->add_option("--state", state, "n1,n2,m")->required();
  energy->add_option("--field", field, "field strength (a.u.)");
  energy->add_option("--order", order, "truncation order 0, 1 or 2");

  unsigned shell_n = 1;
  auto* states = app.add_subcommand("states", "substates of a shell with e0, e1, e2");
  states->add_option("-n,--n", shell_n, "principal quantum number")->required()->check(CLI::PositiveNumber);

  unsigned za = 0, zk = 0, zkp = 0, zm = 0;
  bool zcheck = false;
  auto* zint = app.add_subcommand("zint", "exact Z(alpha, k, k') integral");
  zint->add_option("-a,--alpha", za)->required();
  zint->add_option("-k", zk)->required();
  zint->add_option("-K,--kprime", zkp)->required();
  zint->add_option("-m", zm)->required();
  zint->add_flag("--check", zcheck, "compare with Gauss-Laguerre quadrature");

  unsigned bk = 0, bm = 0, bpoints = 401;
  double bxmax = 0.0;
  std::string bout;
  auto* basis = app.add_subcommand("basis-plot", "normalised |u_{k,m}|^2 samples");
  basis->add_option("-k", bk)->required();
  basis->add_option("-m", bm)->required();
  basis->add_option("--xmax", bxmax, "right end (default 4(k+m+1)+8)");
  basis->add_option("--points", bpoints)->check(CLI::Range(2u, 10000000u));
  basis->add_option("--out", bout, "output file (default stdout)");

  double tol = 0.0;
  auto* numeric = app.add_subcommand("numeric", "complex resonance energy of one state");
  numeric->add_option("--state", state, "n1,n2,m")->required();
  numeric->add_option("--field", field, "field strength (a.u.); negative mirrors the state");
  numeric->add_option("--tol", tol, "mismatch tolerance");

  double fmin = 0.0, fmax = 0.01;
  unsigned steps = 11;
  std::string out, format = "csv";
  auto* scan = app.add_subcommand("scan", "warm-started resonance energies over a field grid");
  scan->add_option("--state", state, "n1,n2,m")->required();
  scan->add_option("--fmin", fmin);
  scan->add_option("--fmax", fmax);
  scan->add_option("--steps", steps, "number of grid points");
  scan->add_option("--tol", tol);
  scan->add_option("--out", out);
  scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "relative deviation sigma of E(F) against the numerical energies");
  bench->add_option("--config", bf.config, "key=value file; flags override it");
  bench->add_option("--state", bf.state, "n1,n2,m");
  bench->add_option("--shell", bf.shell, "all substates of shell n")->check(CLI::PositiveNumber);
  bench->add_option("--fmin", bf.fmin);
  bench->add_option("--fmax", bf.fmax);
  bench->add_option("--steps", bf.steps, "number of grid points");
  bench->add_option("--order", bf.order, "1 or 2");
  bench->add_option("--tol", bf.tol);
  bench->add_option("--out", bf.out);
  bench->add_option("--format", bf.format)->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--strict", bf.strict, "exit 3 when any point fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*energy) return cmd_energy(state, field, order);
    if (*states) return cmd_states(shell_n);
    if (*zint) return cmd_zint(za, zk, zkp, zm, zcheck);
    if (*basis) return cmd_basis_plot(bk, bm, bxmax, bpoints, bout);
    if (*numeric) return cmd_numeric(state, field, tol);
    if (*scan) return cmd_scan(state, fmin, fmax, steps, tol, out, format);
    if (*bench) return cmd_bench(bf, *bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

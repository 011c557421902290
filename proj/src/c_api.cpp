#include "stark/stark.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "stark/benchmark.hpp"
#include "stark/integrals.hpp"
#include "stark/laguerre.hpp"
#include "stark/perturbation.hpp"
#include "stark/siegert.hpp"

struct stark_expansion {
  stark::perturbation::ParabolicState state;
  stark::perturbation::StarkExpansion coefficients;
};

struct stark_bench {
  stark::bench::Report report;
};

namespace {

namespace pt = stark::perturbation;
namespace sg = stark::siegert;
namespace bn = stark::bench;

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

stark_status fail(stark_status status, const std::string& message) {
  last_error = message;
  return status;
}

stark_status from_kind(sg::ErrorKind kind) {
  switch (kind) {
    case sg::ErrorKind::no_convergence: return STARK_ERR_NO_CONVERGENCE;
    case sg::ErrorKind::node_mismatch: return STARK_ERR_NODE_MISMATCH;
    case sg::ErrorKind::state_misidentified: return STARK_ERR_STATE_MISIDENTIFIED;
    case sg::ErrorKind::barrier_not_resolved: return STARK_ERR_BARRIER_NOT_RESOLVED;
  }
  return STARK_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <class F>
stark_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const sg::SolverError& e) {
    return fail(from_kind(e.kind()), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(STARK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(STARK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(STARK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(STARK_ERR_INTERNAL, e.what());
  }
}

pt::ParabolicState to_state(stark_state s) { return pt::make_state(s.n1, s.n2, s.m); }

stark_state from_state(const pt::ParabolicState& s) {
  return {static_cast<int>(s.n1), static_cast<int>(s.n2), static_cast<int>(s.m)};
}

stark_status copy_string(const std::string& text, char* buf, size_t buflen, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buflen == 0 && buf == nullptr) return STARK_OK;
  if (!buf || buflen < text.size() + 1) return fail(STARK_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return STARK_OK;
}

sg::SolverOptions to_options(const stark_solver_options* o) {
  sg::SolverOptions opts;
  if (!o) return opts;
  opts.tol = o->tol;
  opts.max_iter = o->max_iter;
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw std::invalid_argument("tol and max_iter must be positive");
  opts.grid = {std::max(o->step, 0.0), std::max(o->x_max, 0.0)};
  opts.weak_field_threshold = o->weak_field_threshold;
  opts.theta = o->theta;
  if (o->has_initial_energy) opts.initial_energy = sg::Complex(o->initial_energy_re, o->initial_energy_im);
  return opts;
}

void fill_result(const sg::SiegertSolution& s, stark_siegert_result* out) {
  out->energy_re = s.energy.real();
  out->energy_im = s.energy.imag();
  out->beta1_re = s.beta1.real();
  out->beta1_im = s.beta1.imag();
  out->beta2_re = s.beta2.real();
  out->beta2_im = s.beta2.imag();
  out->iterations = s.iterations;
  out->residual = s.residual;
  out->converged = s.converged ? 1 : 0;
  out->n1_found = s.n1_found;
  out->n2_found = s.n2_found;
  out->outgoing = s.mode == sg::BoundaryMode::outgoing ? 1 : 0;
}

void clear_result(stark_siegert_result* out) {
  *out = stark_siegert_result{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0, kNaN, 0, 0, 0, 0};
}

bn::RunConfig to_run_config(const stark_bench_config& c) {
  bn::RunConfig cfg;
  if (c.shell > 0) cfg.states = pt::enumerate_states(c.shell);
  else cfg.states = {to_state(c.state)};
  cfg.f_min = c.fmin;
  cfg.f_max = c.fmax;
  cfg.steps = c.steps;
  cfg.order = c.order;
  cfg.tol = c.tol;
  cfg.max_iter = c.max_iter;
  return bn::resolved(cfg);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: " + key + " is not a number: '" + v + "'");
  return d;
}

long parse_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long l = 0;
  try {
    l = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw std::invalid_argument("config: " + key + " is not an integer: '" + v + "'");
  return l;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("config: " + key + " must be true or false");
}

} // namespace

extern "C" {

const char* stark_version(void) { return "1.0.0"; }

const char* stark_status_name(stark_status status) {
  switch (status) {
    case STARK_OK: return "ok";
    case STARK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case STARK_ERR_NO_CONVERGENCE: return "no convergence";
    case STARK_ERR_NODE_MISMATCH: return "node mismatch";
    case STARK_ERR_STATE_MISIDENTIFIED: return "state misidentified";
    case STARK_ERR_BARRIER_NOT_RESOLVED: return "barrier not resolved";
    case STARK_ERR_IO: return "i/o error";
    case STARK_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case STARK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* stark_last_error(void) { return last_error.c_str(); }

stark_status stark_expansion_create(stark_state state, stark_expansion** out) {
  return guarded([&] {
    if (!out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    const auto s = to_state(state);
    *out = new stark_expansion{s, pt::expansion(s)};
    return STARK_OK;
  });
}

void stark_expansion_destroy(stark_expansion* e) { delete e; }

stark_status stark_expansion_coefficient(const stark_expansion* e, stark_coefficient which, char* buf, size_t buflen,
                                         size_t* needed, double* value) {
  return guarded([&] {
    if (!e) return fail(STARK_ERR_INVALID_ARGUMENT, "expansion is null");
    stark::Rational r;
    switch (which) {
      case STARK_COEF_E0: r = e->coefficients.e0; break;
      case STARK_COEF_E1: r = e->coefficients.e1; break;
      case STARK_COEF_E2: r = e->coefficients.e2; break;
      case STARK_COEF_E1_FROM_INTEGRALS: r = pt::e1_from_integrals(e->state); break;
      case STARK_COEF_E2_FROM_INTEGRALS: r = pt::e2_from_integrals(e->state); break;
      case STARK_COEF_E2_PRINTED_K: r = pt::e2_printed_k(e->state); break;
      default: return fail(STARK_ERR_INVALID_ARGUMENT, "unknown coefficient");
    }
    if (value) *value = stark::to_double(r);
    return copy_string(stark::to_string(r), buf, buflen, needed);
  });
}

stark_status stark_expansion_energy(const stark_expansion* e, double field, int order, double* out) {
  return guarded([&] {
    if (!e || !out) return fail(STARK_ERR_INVALID_ARGUMENT, "null argument");
    if (!(field >= 0.0)) return fail(STARK_ERR_INVALID_ARGUMENT, "field must be nonnegative");
    *out = e->coefficients.energy(field, order);
    return STARK_OK;
  });
}

stark_status stark_principal_number(stark_state state, unsigned* out) {
  return guarded([&] {
    if (!out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    *out = to_state(state).principal();
    return STARK_OK;
  });
}

stark_status stark_enumerate_states(unsigned n, stark_state* out, size_t capacity, size_t* count) {
  return guarded([&] {
    if (!count) return fail(STARK_ERR_INVALID_ARGUMENT, "count is null");
    const auto states = pt::enumerate_states(n);
    *count = states.size();
    if (capacity > 0 && !out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    for (size_t i = 0; i < states.size() && i < capacity; ++i) out[i] = from_state(states[i]);
    return STARK_OK;
  });
}

stark_status stark_zint(unsigned alpha, unsigned k, unsigned kprime, unsigned m, char* buf, size_t buflen,
                        size_t* needed, double* value) {
  return guarded([&] {
    const stark::Rational r = stark::integrals::z_closed_form({alpha, k, kprime, m});
    if (value) *value = stark::to_double(r);
    return copy_string(stark::to_string(r), buf, buflen, needed);
  });
}

stark_status stark_zint_quadrature(unsigned alpha, unsigned k, unsigned kprime, unsigned m, double* out) {
  return guarded([&] {
    if (!out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    *out = stark::integrals::z_quadrature({alpha, k, kprime, m});
    return STARK_OK;
  });
}

stark_status stark_basis_samples(unsigned k, unsigned m, double x_max, size_t n_points, double* x, double* density) {
  return guarded([&] {
    if (!x || !density) return fail(STARK_ERR_INVALID_ARGUMENT, "null output array");
    const auto samples = stark::laguerre::u_plot_samples(k, m, x_max, n_points);
    for (size_t i = 0; i < samples.size(); ++i) {
      x[i] = samples[i].x;
      density[i] = samples[i].density;
    }
    return STARK_OK;
  });
}

stark_status stark_basis_node_count(unsigned k, unsigned m, unsigned* out) {
  return guarded([&] {
    if (!out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    *out = stark::laguerre::BasisFunction{k, m}.node_count();
    return STARK_OK;
  });
}

void stark_solver_options_default(stark_solver_options* opts) {
  if (!opts) return;
  const sg::SolverOptions d;
  *opts = stark_solver_options{d.tol, d.max_iter, 0.0, 0.0, d.weak_field_threshold, d.theta, 0, 0.0, 0.0};
}

stark_status stark_siegert_energy(stark_state state, double field, const stark_solver_options* opts,
                                  stark_siegert_result* out) {
  return guarded([&] {
    if (!out) return fail(STARK_ERR_INVALID_ARGUMENT, "out is null");
    clear_result(out);
    if (!std::isfinite(field)) return fail(STARK_ERR_INVALID_ARGUMENT, "field must be finite");
    fill_result(sg::siegert_energy(to_state(state), field, to_options(opts)), out);
    return STARK_OK;
  });
}

stark_status stark_energy_scan(stark_state state, const double* fields, size_t count, const stark_solver_options* opts,
                               stark_siegert_result* results, stark_status* statuses) {
  return guarded([&] {
    if (count > 0 && (!fields || !results || !statuses)) return fail(STARK_ERR_INVALID_ARGUMENT, "null array");
    const auto points = sg::energy_scan(to_state(state), std::span<const double>(fields, count), to_options(opts));
    for (size_t i = 0; i < points.size(); ++i) {
      clear_result(&results[i]);
      if (points[i].solution) {
        fill_result(*points[i].solution, &results[i]);
        statuses[i] = STARK_OK;
      } else {
        statuses[i] = points[i].error ? from_kind(*points[i].error) : STARK_ERR_INTERNAL;
      }
    }
    return STARK_OK;
  });
}

void stark_bench_config_default(stark_bench_config* cfg) {
  if (!cfg) return;
  std::memset(cfg, 0, sizeof *cfg);
  const bn::RunConfig d;
  cfg->fmin = d.f_min;
  cfg->fmax = d.f_max;
  cfg->steps = d.steps;
  cfg->order = d.order;
  cfg->tol = d.tol;
  cfg->max_iter = d.max_iter;
  cfg->format = STARK_FORMAT_CSV;
}

stark_status stark_bench_config_load(const char* path, stark_bench_config* cfg) {
  return guarded([&] {
    if (!path || !cfg) return fail(STARK_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(STARK_ERR_IO, std::string("cannot open config file '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    stark_bench_config next = *cfg;
    for (const auto& [key, value] : bn::parse_key_values(text.str())) {
      if (key == "state") next.state = from_state(bn::parse_state(value));
      else if (key == "shell") next.shell = static_cast<unsigned>(parse_long(key, value));
      else if (key == "fmin") next.fmin = parse_double(key, value);
      else if (key == "fmax") next.fmax = parse_double(key, value);
      else if (key == "steps") next.steps = static_cast<unsigned>(parse_long(key, value));
      else if (key == "order") next.order = static_cast<int>(parse_long(key, value));
      else if (key == "tol") next.tol = parse_double(key, value);
      else if (key == "max_iter") next.max_iter = static_cast<int>(parse_long(key, value));
      else if (key == "strict") next.strict = parse_bool(key, value) ? 1 : 0;
      else if (key == "format") {
        if (value == "csv") next.format = STARK_FORMAT_CSV;
        else if (value == "json") next.format = STARK_FORMAT_JSON;
        else throw std::invalid_argument("config: format must be csv or json");
      } else if (key == "out") {
        if (value.size() >= STARK_PATH_MAX) throw std::invalid_argument("config: out path too long");
        std::memcpy(next.out_path, value.c_str(), value.size() + 1);
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
    *cfg = next;
    return STARK_OK;
  });
}

stark_status stark_bench_run(const stark_bench_config* cfg, unsigned threads, stark_bench** out) {
  return guarded([&] {
    if (!cfg || !out) return fail(STARK_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    const bn::RunConfig run = to_run_config(*cfg);
    *out = new stark_bench{bn::run(run, threads == 0 ? 1 : threads)};
    return STARK_OK;
  });
}

void stark_bench_destroy(stark_bench* b) { delete b; }

size_t stark_bench_row_count(const stark_bench* b) {
  if (!b) return 0;
  size_t n = 0;
  for (const auto& run : b->report.runs) n += run.rows.size();
  return n;
}

stark_status stark_bench_row(const stark_bench* b, size_t index, stark_deviation_row* out) {
  return guarded([&] {
    if (!b || !out) return fail(STARK_ERR_INVALID_ARGUMENT, "null argument");
    for (const auto& run : b->report.runs) {
      if (index < run.rows.size()) {
        const auto& r = run.rows[index];
        *out = stark_deviation_row{from_state(run.state), r.field, r.e_pert, r.e_num_re.value_or(kNaN),
                                   r.e_num_im.value_or(kNaN), r.sigma_percent.value_or(kNaN), r.iterations,
                                   r.converged ? 1 : 0};
        return STARK_OK;
      }
      index -= run.rows.size();
    }
    return fail(STARK_ERR_INVALID_ARGUMENT, "row index out of range");
  });
}

stark_status stark_bench_summary(const stark_bench* b, double* max_sigma, int* all_converged, size_t* failures) {
  return guarded([&] {
    if (!b) return fail(STARK_ERR_INVALID_ARGUMENT, "bench is null");
    const bn::Summary s = b->report.summary();
    if (max_sigma) *max_sigma = s.max_sigma_percent.value_or(kNaN);
    if (all_converged) *all_converged = s.all_converged ? 1 : 0;
    if (failures) *failures = s.failures;
    return STARK_OK;
  });
}

stark_status stark_bench_render(const stark_bench* b, stark_format format, char* buf, size_t buflen, size_t* needed) {
  return guarded([&] {
    if (!b) return fail(STARK_ERR_INVALID_ARGUMENT, "bench is null");
    const std::string text = format == STARK_FORMAT_JSON ? bn::to_json(b->report) : bn::to_csv(b->report);
    return copy_string(text, buf, buflen, needed);
  });
}

stark_status stark_bench_write(const stark_bench* b, const char* path, stark_format format) {
  return guarded([&] {
    if (!b || !path) return fail(STARK_ERR_INVALID_ARGUMENT, "null argument");
    const std::string text = format == STARK_FORMAT_JSON ? bn::to_json(b->report) : bn::to_csv(b->report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return fail(STARK_ERR_IO, std::string("cannot open '") + path + "' for writing");
    out << text;
    out.flush();
    if (!out) return fail(STARK_ERR_IO, std::string("write to '") + path + "' failed");
    return STARK_OK;
  });
}

} // extern "C"

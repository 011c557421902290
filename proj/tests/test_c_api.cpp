#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "stark/stark.h"

namespace {

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

} // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(stark_version()) > 0);
  CHECK(std::string(stark_status_name(STARK_OK)) == "ok");
  CHECK(std::string(stark_status_name(STARK_ERR_BARRIER_NOT_RESOLVED)).size() > 0);
}

TEST_CASE("expansion handle") {
  stark_expansion* e = nullptr;
  REQUIRE(stark_expansion_create({0, 0, 0}, &e) == STARK_OK);
  char buf[64];
  size_t needed = 0;
  double v = 0;
  CHECK(stark_expansion_coefficient(e, STARK_COEF_E2, buf, sizeof buf, &needed, &v) == STARK_OK);
  CHECK(std::string(buf) == "-9/4");
  CHECK(needed == 5);
  CHECK(v == -2.25);
  CHECK(stark_expansion_coefficient(e, STARK_COEF_E2_PRINTED_K, buf, sizeof buf, &needed, &v) == STARK_OK);
  CHECK(std::string(buf) == "-3/4");
  CHECK(stark_expansion_coefficient(e, STARK_COEF_E2, buf, 3, &needed, nullptr) == STARK_ERR_BUFFER_TOO_SMALL);
  CHECK(needed == 5);
  // size query
  needed = 0;
  CHECK(stark_expansion_coefficient(e, STARK_COEF_E2, nullptr, 0, &needed, &v) == STARK_OK);
  CHECK(needed == 5);
  double energy = 0;
  CHECK(stark_expansion_energy(e, 0.1, 2, &energy) == STARK_OK);
  CHECK(energy == doctest::Approx(-0.5225));
  CHECK(stark_expansion_energy(e, -0.1, 2, &energy) == STARK_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(stark_last_error()) > 0);
  CHECK(stark_expansion_energy(e, 0.1, 1, &energy) == STARK_OK);
  CHECK(std::strlen(stark_last_error()) == 0);
  stark_expansion_destroy(e);
  stark_expansion_destroy(nullptr);

  CHECK(stark_expansion_create({-1, 0, 0}, &e) == STARK_ERR_INVALID_ARGUMENT);
  CHECK(stark_expansion_create({0, 0, 0}, nullptr) == STARK_ERR_INVALID_ARGUMENT);
  CHECK(stark_expansion_energy(nullptr, 0.1, 2, &energy) == STARK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("states and principal number") {
  unsigned n = 0;
  CHECK(stark_principal_number({1, 2, -3}, &n) == STARK_OK);
  CHECK(n == 7);
  stark_state states[3];
  size_t count = 0;
  CHECK(stark_enumerate_states(2, states, 3, &count) == STARK_OK);
  CHECK(count == 3);
  CHECK(states[0].n1 == 1);
  CHECK(states[2].m == 1);
  CHECK(stark_enumerate_states(4, nullptr, 0, &count) == STARK_OK);
  CHECK(count == 10);
  CHECK(stark_enumerate_states(0, nullptr, 0, &count) == STARK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("integrals and basis") {
  char buf[32];
  double v = 0;
  CHECK(stark_zint(1, 1, 2, 0, buf, sizeof buf, nullptr, &v) == STARK_OK);
  CHECK(std::string(buf) == "-2");
  CHECK(stark_zint(0, 3, 3, 1, buf, sizeof buf, nullptr, &v) == STARK_OK);
  CHECK(v == 4.0);
  double q = 0;
  CHECK(stark_zint_quadrature(0, 3, 3, 1, &q) == STARK_OK);
  CHECK(q == doctest::Approx(4.0));
  std::vector<double> x(11), d(11);
  CHECK(stark_basis_samples(0, 0, 10.0, 11, x.data(), d.data()) == STARK_OK);
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(stark_basis_samples(0, 0, 10.0, 1, x.data(), d.data()) == STARK_ERR_INVALID_ARGUMENT);
  unsigned nodes = 0;
  CHECK(stark_basis_node_count(3, 2, &nodes) == STARK_OK);
  CHECK(nodes == 3);
}

TEST_CASE("siegert through the C interface") {
  stark_siegert_result r{};
  CHECK(stark_siegert_energy({0, 0, 0}, 0.0, nullptr, &r) == STARK_OK);
  CHECK(r.energy_re == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(r.converged == 1);
  CHECK(r.outgoing == 0);

  stark_solver_options opts;
  stark_solver_options_default(&opts);
  CHECK(opts.tol == 1e-10);
  CHECK(opts.max_iter == 100);
  opts.x_max = 6.0;
  CHECK(stark_siegert_energy({0, 0, 0}, 0.03, &opts, &r) == STARK_ERR_BARRIER_NOT_RESOLVED);
  CHECK(std::strlen(stark_last_error()) > 0);

  const double fields[] = {0.0, 0.01, 0.02};
  stark_siegert_result results[3];
  stark_status statuses[3];
  CHECK(stark_energy_scan({0, 0, 0}, fields, 3, nullptr, results, statuses) == STARK_OK);
  for (auto s : statuses) CHECK(s == STARK_OK);
  CHECK(results[2].energy_re < results[1].energy_re);
  const double unsorted[] = {0.02, 0.0};
  CHECK(stark_energy_scan({0, 0, 0}, unsorted, 2, nullptr, results, statuses) == STARK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bench config file") {
  const auto path = temp_path("stark_c_api_config.txt");
  {
    std::ofstream f(path);
    f << "# ground state\nstate=0,0,0\nfmax=0.02\nsteps=3\nformat=json\nstrict=1\n";
  }
  stark_bench_config cfg;
  stark_bench_config_default(&cfg);
  CHECK(cfg.steps == 21);
  CHECK(cfg.fmax < 0);
  REQUIRE(stark_bench_config_load(path.c_str(), &cfg) == STARK_OK);
  CHECK(cfg.fmax == 0.02);
  CHECK(cfg.steps == 3);
  CHECK(cfg.format == STARK_FORMAT_JSON);
  CHECK(cfg.strict == 1);

  {
    std::ofstream f(path);
    f << "bogus=1\n";
  }
  CHECK(stark_bench_config_load(path.c_str(), &cfg) == STARK_ERR_INVALID_ARGUMENT);
  CHECK(stark_bench_config_load("/nonexistent/stark.cfg", &cfg) == STARK_ERR_IO);
  std::remove(path.c_str());
}

TEST_CASE("bench run, render and write") {
  stark_bench_config cfg;
  stark_bench_config_default(&cfg);
  cfg.state = {1, 0, 0};
  cfg.steps = 3;
  stark_bench* b = nullptr;
  REQUIRE(stark_bench_run(&cfg, 2, &b) == STARK_OK);
  REQUIRE(stark_bench_row_count(b) == 3);
  stark_deviation_row row;
  CHECK(stark_bench_row(b, 2, &row) == STARK_OK);
  CHECK(row.field == 0.01);
  CHECK(row.converged == 1);
  CHECK(row.sigma_percent > 0.2);
  CHECK(row.sigma_percent < 0.8);
  CHECK(stark_bench_row(b, 3, &row) == STARK_ERR_INVALID_ARGUMENT);
  double top = 0;
  int all = 0;
  size_t failures = 9;
  CHECK(stark_bench_summary(b, &top, &all, &failures) == STARK_OK);
  CHECK(all == 1);
  CHECK(failures == 0);
  size_t needed = 0;
  CHECK(stark_bench_render(b, STARK_FORMAT_CSV, nullptr, 0, &needed) == STARK_OK);
  std::string text(needed, '\0');
  CHECK(stark_bench_render(b, STARK_FORMAT_CSV, text.data(), text.size(), &needed) == STARK_OK);
  text.resize(needed - 1);
  CHECK(text.find("# state=1,0,0") != std::string::npos);

  const auto path = temp_path("stark_c_api_out.csv");
  CHECK(stark_bench_write(b, path.c_str(), STARK_FORMAT_CSV) == STARK_OK);
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == text);
  std::remove(path.c_str());
  CHECK(stark_bench_write(b, "/nonexistent/dir/out.csv", STARK_FORMAT_CSV) == STARK_ERR_IO);
  stark_bench_destroy(b);

  cfg.steps = 0;
  CHECK(stark_bench_run(&cfg, 1, &b) == STARK_ERR_INVALID_ARGUMENT);
}

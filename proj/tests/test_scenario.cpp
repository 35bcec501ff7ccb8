#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "suc/base_series.hpp"
#include "suc/error_model.hpp"
#include "suc/rng.hpp"
#include "suc/scenario_set.hpp"

using namespace suc;

TEST_CASE("moving-average coefficients") {
  CHECK(ma_coefficient(0.0, 3) == 0.0);
  CHECK(ma_coefficient(0.9, 1) == doctest::Approx(0.9));
  CHECK(ma_coefficient(0.9, 2) == doctest::Approx(0.81));
  CHECK_THROWS(ma_coefficient(0.9, 0));
  CHECK_THROWS(ma_coefficient(1.0, 1));
}

TEST_CASE("variance amplification factor") {
  CHECK(variance_factor(0.3, 1) == doctest::Approx(1.0));
  CHECK(variance_factor(0.0, 7) == doctest::Approx(1.0));
  CHECK(variance_factor(0.5, 2) == doctest::Approx(1.25));
  CHECK(variance_factor(0.9, 400) == doctest::Approx(5.263158).epsilon(1e-6));
  CHECK(variance_factor_limit(0.9) == doctest::Approx(5.263157894736843));
  // Nondecreasing in the lead and converging to the limit.
  double prev = 0;
  for (int k = 1; k <= 60; ++k) {
    const double a = variance_factor(0.9, k);
    CHECK(a >= prev - 1e-12);
    prev = a;
  }
  CHECK(prev <= variance_factor_limit(0.9) + 1e-12);
}

TEST_CASE("variance stabilization threshold") {
  // A_k / A_inf = 1 - 0.81^k reaches 0.99 from k = 22 on.
  const double limit = variance_factor_limit(0.9);
  CHECK(variance_factor(0.9, 21) / limit < 0.99);
  for (int k = 22; k <= 80; ++k)
    CHECK(variance_factor(0.9, k) / limit >= 0.99);
}

TEST_CASE("sigma calibration") {
  CHECK(calibrate_sigma(0.25, 0.9) == doctest::Approx(0.03632415786283894));
  CHECK(calibrate_sigma(0.25, 0.0) == doctest::Approx(0.25 / 3.0));
  CHECK(calibrate_sigma(0.0, 0.9) == 0.0);
}

TEST_CASE("zero sigma collapses the error paths") {
  const auto p = ErrorModelParams::calibrated(0.0, 0.9);
  const auto eps = generate_errors(p, 20, 123);
  for (double e : eps) CHECK(e == 0.0);
}

TEST_CASE("Monte Carlo variance matches sigma^2 A_k" * doctest::timeout(60)) {
  const auto p = ErrorModelParams::calibrated(0.25, 0.9);
  const int n = 100000;
  const int K = 34;
  double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
  const int leads[3] = {1, 5, 34};
  for (int i = 0; i < n; ++i) {
    const auto eps = generate_errors(p, K, mix_seed(777, i));
    for (int j = 0; j < 3; ++j) {
      const double e = eps[leads[j] - 1];
      sum[j] += e;
      sumsq[j] += e * e;
    }
  }
  for (int j = 0; j < 3; ++j) {
    const double mean = sum[j] / n;
    const double var = sumsq[j] / n - mean * mean;
    const double target = p.sigma * p.sigma * variance_factor(0.9, leads[j]);
    CHECK(std::abs(var - target) / target < 0.02);
  }
}

TEST_CASE("three-sigma calibration bounds the error at long leads") {
  const auto p = ErrorModelParams::calibrated(0.25, 0.9);
  const int n = 100000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const auto eps = generate_errors(p, 34, mix_seed(4242, i));
    inside += std::abs(eps[33]) <= 0.25;
  }
  const double frac = static_cast<double>(inside) / n;
  CHECK(frac >= 0.99);
  CHECK(frac <= 1.0);
}

namespace {

BaseSeries tiny_series(int steps = 24) {
  SyntheticSeriesParams sp;
  sp.steps = steps;
  return make_synthetic_series(sp);
}

}  // namespace

TEST_CASE("single zero-deviation scenario equals the base") {
  TimeGrid grid;
  const auto base = tiny_series();
  const auto set = mean_scenario(base, grid, -10.0, 0, grid.horizon_steps);
  REQUIRE(set.count() == 1);
  for (int t = 0; t < grid.horizon_steps; ++t)
    CHECK(set.residual_at(0, t) == doctest::Approx(base.residual(t)));
}

TEST_CASE("scenario means are unbiased") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.25, 0.9);
  const int M = 10000;
  const auto set = generate_scenario_set(base, grid, -10.0, 0,
                                         grid.horizon_steps, M, params, 99,
                                         StreamKind::Training);
  for (int t : {0, 7, 15, 23}) {
    double mean = 0;
    for (int s = 0; s < M; ++s) mean += set.sources[s][0][t];
    mean /= M;
    CHECK(std::abs(mean - base.consumption[t]) / base.consumption[t] < 0.01);
  }
}

TEST_CASE("PV stays exactly zero at night") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.25, 0.9);
  const auto set = generate_scenario_set(base, grid, -10.0, 0,
                                         grid.horizon_steps, 50, params, 7,
                                         StreamKind::Training);
  for (int t = 0; t < grid.horizon_steps; ++t) {
    if (base.renewables[0][t] != 0.0) continue;
    for (int s = 0; s < set.count(); ++s) CHECK(set.sources[s][1][t] == 0.0);
  }
}

TEST_CASE("reproducibility and stream separation") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.10, 0.9);
  const auto a = generate_scenario_set(base, grid, -10.0, 0, 24, 5, params,
                                       1234, StreamKind::Training);
  const auto b = generate_scenario_set(base, grid, -10.0, 0, 24, 5, params,
                                       1234, StreamKind::Training);
  CHECK(a.residual == b.residual);
  const auto c = generate_scenario_set(base, grid, -10.0, 0, 24, 5, params,
                                       1234, StreamKind::Evaluation);
  CHECK(a.residual != c.residual);
  // Nested in M: first scenarios coincide.
  const auto big = generate_scenario_set(base, grid, -10.0, 0, 24, 9, params,
                                         1234, StreamKind::Training);
  for (int s = 0; s < 5; ++s) CHECK(a.residual[s] == big.residual[s]);
}

TEST_CASE("later issue times cover shorter windows") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.10, 0.9);
  int prev_steps = 1 << 30;
  for (int block = 1; block <= grid.n_blocks(); ++block) {
    const int begin = grid.block_start_step(block);
    const auto set = generate_scenario_set(
        base, grid, grid.eval_issue_hours(block), begin, grid.horizon_steps, 3,
        params, 5, StreamKind::Evaluation);
    CHECK(set.window_steps() < prev_steps);
    prev_steps = set.window_steps();
  }
}

TEST_CASE("window preceding the issue time is rejected") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.10, 0.9);
  CHECK_THROWS(generate_scenario_set(base, grid, 5.0, 0, 24, 3, params, 5,
                                     StreamKind::Training));
}

TEST_CASE("scenario set round-trips through its file format") {
  TimeGrid grid;
  auto base = tiny_series();
  const auto params = ErrorModelParams::calibrated(0.10, 0.9);
  const auto set = generate_scenario_set(base, grid, -3.0, 0, 24, 4, params,
                                         77, StreamKind::Training);
  const std::string path = "scenario_roundtrip.tmp";
  write_scenario_set(path, set);
  const auto back = read_scenario_set(path);
  std::remove(path.c_str());
  REQUIRE(back.count() == set.count());
  CHECK(back.window_begin == set.window_begin);
  for (int s = 0; s < set.count(); ++s)
    for (int t = 0; t < set.window_steps(); ++t)
      CHECK(back.residual[s][t] ==
            doctest::Approx(set.residual[s][t]).epsilon(1e-9));
}

TEST_CASE("base series file round-trip") {
  auto base = tiny_series();
  const std::string path = "series_roundtrip.tmp";
  write_base_series(path, base);
  const auto back = read_base_series(path);
  std::remove(path.c_str());
  REQUIRE(back.steps() == base.steps());
  REQUIRE(back.renewable_names == base.renewable_names);
  for (int t = 0; t < base.steps(); ++t)
    CHECK(back.residual(t) == doctest::Approx(base.residual(t)).epsilon(1e-6));
}

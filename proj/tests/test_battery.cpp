#include <qbattery/battery.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace qbattery;

namespace {

model_params jch(int n, int m, double beta, double kappa, topology topo = topology::line) {
  model_params p;
  p.model = model_kind::jch;
  p.n = n;
  p.m = m;
  p.beta = beta;
  p.kappa = kappa;
  p.topo = topo;
  return p;
}

search_config horizon(double t_max) {
  search_config c;
  c.t_max = t_max;
  return c;
}

}  // namespace

TEST(RabiOracle, Examples) {
  auto r = rabi_oracle({0.0, 0.05, 1});
  EXPECT_NEAR(r.omega, 0.05, 1e-15);
  EXPECT_NEAR(r.tau_first_max, 10.0 * std::numbers::pi, 1e-12);
  r = rabi_oracle({0.0, 0.1, 4});
  EXPECT_NEAR(r.omega, 0.2, 1e-15);
  EXPECT_NEAR(r.tau_first_max, 7.85398, 1e-5);
  for (int m : {1, 3, 7}) {
    r = rabi_oracle({0.3, 0.0, m});
    EXPECT_NEAR(r.omega, 0.15, 1e-15);
    EXPECT_NEAR(r.tau_first_max, 10.4720, 1e-4);
  }
  EXPECT_THROW(rabi_oracle({0.0, 0.0, 1}), degenerate_error);
  EXPECT_THROW(rabi_oracle({0.0, 0.05, 0}), parameter_error);
}

TEST(RabiOracle, ClosedFormMatchesDetunedSimulation) {
  auto p = jch(1, 2, 0.07, 0.0);
  p.omega_a = 1.2;
  const rabi_params rp{p.detuning(), p.beta, p.m};
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(1.3 * i);
  for (const auto& [t, e] : energy_series(p, grid)) EXPECT_NEAR(e, rabi_energy(rp, t, p.omega_c, p.omega_a), 1e-10);
}

TEST(EnergySeries, NoCouplingIsFlat) {
  model_params d;
  d.model = model_kind::dicke;
  d.n = 3;
  d.beta = 0.0;
  d.beta_prime = 0.0;
  for (const auto& p : {jch(3, 1, 0.0, 0.5), d})
    for (const auto& [t, e] : energy_series(p, {1.0, 10.0, 100.0})) EXPECT_NEAR(e, 0.0, 1e-14);
}

TEST(EnergySeries, SingleCavity) {
  std::vector<double> grid;
  for (int i = 1; i <= 300; ++i) grid.push_back(0.37 * i);
  for (const auto& [t, e] : energy_series(jch(1, 1, 0.05, 0.0), grid))
    EXPECT_NEAR(e, std::pow(std::sin(0.05 * t), 2), 1e-12);
}

TEST(EnergySeries, ThreeCavitiesAreThreeRabiCopies) {
  std::vector<double> grid;
  for (int i = 1; i <= 200; ++i) grid.push_back(0.9 * i);
  const auto three = energy_series(jch(3, 1, 0.05, 0.0), grid);
  const auto one = energy_series(jch(1, 1, 0.05, 0.0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(three[i].second, 3.0 * one[i].second, 1e-10);
}

TEST(EnergySeries, FactorizesWithoutHopping) {
  std::vector<double> grid;
  for (int i = 1; i <= 60; ++i) grid.push_back(3.3 * i);
  for (int m = 1; m <= 3; ++m) {
    const auto single = energy_series(jch(1, m, 0.05, 0.0), grid);
    for (int n = 2; n <= 4; ++n) {
      const auto many = energy_series(jch(n, m, 0.05, 0.0), grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(many[i].second, n * single[i].second, 1e-8) << "N=" << n << " m=" << m;
    }
  }
}

TEST(EnergySeries, Errors) {
  const auto p = jch(1, 1, 0.05, 0.0);
  EXPECT_THROW(energy_series(p, {}), parameter_error);
  EXPECT_THROW(energy_series(p, {0.0, 1.0}), parameter_error);
  EXPECT_THROW(energy_series(p, {1.0, 1.0}), parameter_error);
  EXPECT_THROW(energy_series(p, {2.0, 1.0}), parameter_error);
}

TEST(MaxPower, SineSquared) {
  const double omega = 0.05;
  auto e = [omega](double t) { return std::pow(std::sin(omega * t), 2); };
  const auto r = max_power(e, horizon(10.0 * std::numbers::pi / omega));
  const double x = oracle::tan_root();
  EXPECT_NEAR(x, 1.16556, 1e-5);
  EXPECT_NEAR(r.tau, x / omega, 1e-6 * x / omega);
  EXPECT_NEAR(r.p_max, omega * std::pow(std::sin(x), 2) / x, 1e-12);
  const auto [t_scan, q_scan] = oracle::dense_quotient_max(e, 10.0 * std::numbers::pi / omega, 1000000);
  EXPECT_GE(r.p_max, q_scan * (1.0 - 1e-12));
  EXPECT_NEAR(r.p_max, q_scan, 1e-6 * q_scan);
  EXPECT_NEAR(r.tau, t_scan, 1e-3 * t_scan);
  EXPECT_EQ(r.notice, power_notice::none);
}

TEST(MaxPower, ResultInvariants) {
  auto e = [](double t) { return 2.0 * std::pow(std::sin(0.1 * t), 2); };
  const auto r = max_power(e, horizon(300.0));
  EXPECT_NEAR(r.p_max, r.e_at_tau / r.tau, 1e-12 * r.p_max);
  EXPECT_GE(r.e_at_tau, 0.0);
  EXPECT_LE(r.e_at_tau, r.e_max);
  EXPECT_LE(r.e_max, 2.0 + 1e-9);
  ASSERT_FALSE(r.series.empty());
  EXPECT_GT(r.series.front().first, 0.0);
  for (std::size_t i = 1; i < r.series.size(); ++i) EXPECT_GT(r.series[i].first, r.series[i - 1].first);
}

TEST(MaxPower, ConstantSignalPeaksAtGridMinimum) {
  const auto cfg = horizon(100.0);
  const auto r = max_power([](double) { return 0.5; }, cfg);
  EXPECT_EQ(r.notice, power_notice::boundary_minimum);
  EXPECT_DOUBLE_EQ(r.tau, 100.0 / cfg.n_samples);
  EXPECT_DOUBLE_EQ(r.p_max, 0.5 / r.tau);
}

TEST(MaxPower, GrowingSignalHitsHorizon) {
  const auto r = max_power([](double t) { return t * t; }, horizon(10.0));
  EXPECT_EQ(r.notice, power_notice::boundary_horizon);
  EXPECT_NEAR(r.tau, 10.0, 1e-12);
}

TEST(MaxPower, NoCouplingIsFlat) {
  const auto r = quench_power(jch(2, 1, 0.0, 0.1));
  EXPECT_EQ(r.p_max, 0.0);
  EXPECT_TRUE(std::isnan(r.tau));
  EXPECT_EQ(r.notice, power_notice::flat_signal);
}

TEST(MaxPower, DerivativeMetric) {
  auto cfg = horizon(200.0);
  cfg.metric = power_metric::derivative;
  const auto r = max_power([](double t) { return std::pow(std::sin(0.05 * t), 2); }, cfg);
  // dE/dt = 0.05 sin(0.1 t), largest at t = 5 pi + 20 pi k.
  EXPECT_NEAR(r.p_max, 0.05, 1e-9);
  EXPECT_NEAR(std::sin(0.1 * r.tau), 1.0, 1e-8);
}

TEST(MaxPower, Errors) {
  auto e = [](double t) { return t; };
  EXPECT_THROW(max_power(e, horizon(0.0)), parameter_error);
  auto cfg = horizon(1.0);
  cfg.n_samples = 1;
  EXPECT_THROW(max_power(e, cfg), parameter_error);
  cfg = horizon(1.0);
  cfg.rel_tol = 0.0;
  EXPECT_THROW(max_power(e, cfg), parameter_error);
}

TEST(MaxPower, RefinementBeatsGridAndMatchesDenseScan) {
  for (double kappa : {0.05, 0.5}) {
    const auto p = jch(3, 1, 0.05, kappa);
    quench q(p);
    auto cfg = resolve_search(p, {});
    cfg.n_samples = 256;
    const auto r = max_power([&q](double t) { return q.energy(t); }, cfg);
    double best_grid = 0.0;
    for (const auto& [t, e] : r.series) best_grid = std::max(best_grid, e / t);
    EXPECT_GE(r.p_max, best_grid);
    const auto [t_scan, q_scan] = oracle::dense_quotient_max([&q](double t) { return q.energy(t); }, cfg.t_max, 25600);
    EXPECT_NEAR(r.p_max, q_scan, cfg.rel_tol * q_scan) << "kappa=" << kappa;
  }
}

TEST(QuenchPower, FirstEnergyMaximumMatchesRabiTime) {
  for (int m = 1; m <= 3; ++m) {
    const auto p = jch(2, m, 0.05, 0.0);
    const auto r = quench_power(p, {}, {}, false);
    std::size_t k = 1;
    while (r.series[k + 1].second > r.series[k].second) ++k;
    quench q(p);
    const double t_grid = r.series[k].first;
    const auto peak = detail::golden_max([&q](double t) { return q.energy(t); }, r.series[k - 1].first,
                                         r.series[k + 1].first, 1e-9, {t_grid, q.energy(t_grid)});
    const double expected = std::numbers::pi / (2.0 * std::sqrt(m) * 0.05);
    EXPECT_NEAR(peak.first, expected, 1e-6 * expected) << "m=" << m;
  }
}

TEST(QuenchPower, ScalingIdentitiesWithoutHopping) {
  const double base = quench_power(jch(1, 1, 0.05, 0.0)).p_max;
  for (int n = 2; n <= 4; ++n) EXPECT_NEAR(quench_power(jch(n, 1, 0.05, 0.0)).p_max / n, base, 1e-8);
  for (int m = 2; m <= 4; ++m)
    EXPECT_NEAR(quench_power(jch(2, m, 0.05, 0.0)).p_max / (2.0 * std::sqrt(m)), base, 1e-8);
}

TEST(QuenchPower, PruningDoesNotChangeResult) {
  for (double kappa : {0.0, 0.05, 0.5}) {
    const auto p = jch(3, 1, 0.05, kappa);
    const auto pruned = quench_power(p, {}, {}, true);
    const auto full = quench_power(p, {}, {}, false);
    EXPECT_EQ(pruned.p_max, full.p_max);
    EXPECT_EQ(pruned.tau, full.tau);
    EXPECT_LE(pruned.series.size(), full.series.size());
  }
}

TEST(DefaultHorizon, FiveRabiPeriods) {
  EXPECT_NEAR(default_horizon(jch(2, 4, 0.05, 0.0)), 10.0 * std::numbers::pi / 0.1, 1e-12);
  EXPECT_EQ(default_horizon(jch(2, 1, 0.0, 0.0)), 100.0);
  model_params d;
  d.model = model_kind::dicke;
  d.beta = 0.05;
  d.beta_prime = 0.5;
  EXPECT_NEAR(default_horizon(d), 10.0 * std::numbers::pi / 0.5, 1e-12);
}

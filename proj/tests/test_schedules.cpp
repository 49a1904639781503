#include "deconv/schedules.hpp"

#include "deconv/rng.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

using namespace deconv;

TEST_CASE("stepsize sequence") {
  CHECK(StepsizeSchedule{1.0}.at(4) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(StepsizeSchedule{1.93}.at(1) == doctest::Approx(1.93).epsilon(1e-15));
  CHECK(StepsizeSchedule{5.0 / 3.0}.at(5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (double g : {2.0 / 3.0, 1.0, 4.0 / 3.0, 5.0 / 3.0, 1.736, 1.93})
    CHECK(StepsizeSchedule{g}.at(1) == g);
  CHECK_THROWS_AS(StepsizeSchedule{1.0}.at(0), std::invalid_argument);
  CHECK_THROWS_AS(StepsizeSchedule{0.0}.at(1), std::invalid_argument);
}

TEST_CASE("bandwidth sequence") {
  CHECK(BandwidthSchedule{1.0, 1.0 / 7.0}.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  // 128^{1/7} = 2 exactly
  CHECK(BandwidthSchedule{0.7634, 1.0 / 7.0}.at(128) ==
        doctest::Approx(0.3817).epsilon(1e-12));
  // 512^{2/9} = 4 exactly
  CHECK(BandwidthSchedule{2.0, 2.0 / 9.0}.at(512) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(BandwidthSchedule{2.0, 0.0}.at(97) == 2.0); // constant mode
  CHECK_THROWS_AS((BandwidthSchedule{1.0, 0.5}.at(0)), std::invalid_argument);
  CHECK_THROWS_AS((BandwidthSchedule{1.0, 1.0}.at(1)), std::invalid_argument);
  CHECK_THROWS_AS((BandwidthSchedule{-1.0, 0.5}.at(1)), std::invalid_argument);

  BandwidthSchedule bw{1.3, 1.0 / 7.0};
  for (std::size_t k = 1; k < 40; ++k) CHECK(bw.at(k + 1) < bw.at(k));
}

TEST_CASE("pilot scale") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  // type-7 quartiles are 1 and 3, sd is sqrt(2.5)
  CHECK(pilot_scale(x) == doctest::Approx(2.0 / 1.349).epsilon(1e-12));
  CHECK(pilot_scale(x) == doctest::Approx(1.4826).epsilon(1e-4));

  std::vector<double> deg = {5.0, 5.0, 5.0};
  CHECK_THROWS_AS(pilot_scale(deg), std::invalid_argument);
  std::vector<double> one = {5.0};
  CHECK_THROWS_AS(pilot_scale(one), std::invalid_argument);

  // IQR of zero falls back to the standard deviation
  std::vector<double> spike = {0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0};
  CHECK(pilot_scale(spike) > 0.0);

  // min semantics: never larger than either branch
  RngStream rng(99, 0);
  std::vector<double> s(200);
  for (double& v : s) v = rng.normal();
  double sd = 0.0, m = 0.0;
  for (double v : s) m += v;
  m /= s.size();
  for (double v : s) sd += (v - m) * (v - m);
  sd = std::sqrt(sd / (s.size() - 1));
  CHECK(pilot_scale(s) <= sd * (1.0 + 1e-12));
}

TEST_CASE("pilot scale is translation invariant and scale equivariant") {
  RngStream rng(7, 3);
  std::vector<double> s(150);
  for (double& v : s) v = rng.normal() + 0.2 * rng.uniform01();
  double base = pilot_scale(s);
  std::vector<double> shifted(s), scaled(s);
  for (double& v : shifted) v += 17.5;
  for (double& v : scaled) v *= 3.25;
  CHECK(pilot_scale(shifted) == doctest::Approx(base).epsilon(1e-12));
  CHECK(pilot_scale(scaled) == doctest::Approx(3.25 * base).epsilon(1e-12));
}

TEST_CASE("pilot bandwidth sequence") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  auto pilot = make_pilot(x, 2.0 / 9.0);
  CHECK(pilot.at(1) == doctest::Approx(pilot.scale).epsilon(1e-15));
  CHECK(pilot.at(512) == doctest::Approx(pilot.scale / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS((PilotBandwidthSpec{0.0, 1.0}.at(1)), std::invalid_argument);
}

TEST_CASE("gs index probe") {
  auto power_seq = [](double expo, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 1; k <= n; ++k) v[k - 1] = std::pow(double(k), expo);
    return v;
  };
  CHECK(gs_index_probe(power_seq(-1.0 / 7.0, 10000)) ==
        doctest::Approx(-1.0 / 7.0).epsilon(1e-3));
  CHECK(gs_index_probe(power_seq(0.5, 10000)) == doctest::Approx(0.5).epsilon(1e-3));
  std::vector<double> constant(50, 3.3);
  CHECK(gs_index_probe(constant) == 0.0);
  std::vector<double> bad = {1.0, -1.0, 2.0};
  CHECK_THROWS_AS(gs_index_probe(bad), std::invalid_argument);
  std::vector<double> tiny = {1.0, 2.0};
  CHECK_THROWS_AS(gs_index_probe(tiny), std::invalid_argument);
}

TEST_CASE("weighted-sum limit of the recursion") {
  // v_n * T_n with T_k = (1 - gamma_k) T_{k-1} + gamma_k / v_k tends to
  // 1/(1 + 2/7) = 7/9 for gamma0 = 1 and v_k = k^{-2/7}.
  const std::size_t n = 10000;
  double t = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double gamma = 1.0 / static_cast<double>(k);
    double v = std::pow(static_cast<double>(k), -2.0 / 7.0);
    t = (1.0 - gamma) * t + gamma / v;
  }
  double value = std::pow(static_cast<double>(n), -2.0 / 7.0) * t;
  CHECK(value == doctest::Approx(7.0 / 9.0).epsilon(0.02));
}

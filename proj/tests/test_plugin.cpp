#include "deconv/plugin.hpp"

#include "deconv/kernels.hpp"
#include "deconv/rng.hpp"
#include "deconv/schedules.hpp"
#include "deconv/simlab.hpp"
#include "deconv/stats.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace deconv;

namespace {
constexpr double kI1Target = 0.28209479177387814;  // int phi^2 = 1/(2 sqrt(pi))
constexpr double kI2Target = 0.030629323904578367; // int x^2 phi^3 = 1/(6 pi sqrt(3))

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  RngStream rng(seed, stream);
  std::vector<double> d(n);
  for (double& v : d) v = rng.normal();
  return d;
}
} // namespace

TEST_CASE("i1_recursive two identical points, hand expansion") {
  std::vector<double> data = {0.0, 0.0};
  PilotBandwidthSpec pilot{2.0 / 9.0, 1.0};
  auto est = i1_recursive(data, 0.0, pilot);
  // weights: w_2 = 1.93/2, w_1 = 1.93 * (1 - 1.93/2); all kernel arguments 0
  double w2 = 0.965, w1 = 1.93 * (1.0 - 0.965);
  double b2 = std::pow(2.0, -2.0 / 9.0);
  double phi0 = 1.0 / std::sqrt(2.0 * M_PI);
  double expected = w1 * phi0 + w2 * (1.0 / b2) * phi0; // same for both i
  CHECK(est.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(est.usable);
}

TEST_CASE("i1_batch two-point identity") {
  PilotBandwidthSpec pilot{2.0 / 9.0, 1.0};
  double d = 0.8;
  std::vector<double> data = {0.0, d};
  double b = pilot.at(2);
  auto est = i1_batch(data, 0.0, pilot);
  auto p = DeconvKernelParams::from_ratio(0.0);
  CHECK(est.value == doctest::Approx(deconv_kernel(d / b, p) / b).epsilon(1e-12));
}

TEST_CASE("functional estimators reject tiny samples") {
  std::vector<double> one = {1.0};
  std::vector<double> two = {1.0, 2.0};
  CHECK_THROWS_AS(i1_recursive(one, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(i1_batch(one, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(i2_recursive(two, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(i2_batch(two, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(i1_recursive(two, -1.0), std::invalid_argument);
}

TEST_CASE("i2 estimators flag degenerate all-zero data") {
  std::vector<double> zeros = {0.0, 0.0, 0.0};
  PilotBandwidthSpec pilot{1.0 / 6.0, 1.0};
  auto rec = i2_recursive(zeros, 0.0, pilot);
  CHECK(rec.value == 0.0);
  CHECK_FALSE(rec.usable);
  auto bat = i2_batch(zeros, 0.0, pilot);
  CHECK(bat.value == 0.0);
  CHECK_FALSE(bat.usable);
}

TEST_CASE("i2_batch differs from the diagonal-included sum") {
  auto data = normal_sample(40, 808, 0);
  auto pilot = make_pilot(data, 1.0 / 6.0);
  double b = pilot.at(data.size());
  auto p = DeconvKernelParams::from_ratio(0.0);
  // diagonal j = k contributes a sum of squares, strictly positive here
  double diag = 0.0;
  for (double yi : data)
    for (double yj : data) {
      double k1 = deconv_kernel_deriv((yi - yj) / b, p);
      diag += k1 * k1;
    }
  CHECK(diag > 0.0);
  double nd = static_cast<double>(data.size());
  auto est = i2_batch(data, 0.0, pilot);
  double with_diag = est.value + diag / (nd * nd * nd * b * b * b * b);
  CHECK(with_diag > est.value);
}

TEST_CASE("i2_batch is permutation invariant") {
  auto data = normal_sample(30, 909, 0);
  auto pilot = make_pilot(data, 1.0 / 6.0);
  auto base = i2_batch(data, 0.3, pilot);
  std::vector<double> shuffled(data);
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[3], shuffled[17]);
  auto perm = i2_batch(shuffled, 0.3, pilot);
  CHECK(perm.value == doctest::Approx(base.value).epsilon(1e-9));
}

TEST_CASE("i1_batch scale equivariance") {
  auto data = normal_sample(2000, 4242, 1);
  double scale = 2.5;
  std::vector<double> scaled(data);
  for (double& v : scaled) v *= scale;
  double base = i1_batch(data, 0.0).value;
  double after = i1_batch(scaled, 0.0).value;
  CHECK(after == doctest::Approx(base / scale).epsilon(0.10));
}

TEST_CASE("i1 estimators near the density functional (sigma = 0)") {
  std::size_t hits_rec = 0, hits_bat = 0;
  const std::size_t runs = 10;
  for (std::uint64_t s = 0; s < runs; ++s) {
    auto data = normal_sample(2000, 1000, s);
    hits_rec += std::abs(i1_recursive(data, 0.0).value / kI1Target - 1.0) <= 0.25;
    hits_bat += std::abs(i1_batch(data, 0.0).value / kI1Target - 1.0) <= 0.25;
  }
  CHECK(hits_rec == runs);
  CHECK(hits_bat == runs);
}

TEST_CASE("i2 estimators near the derivative functional (sigma = 0)") {
  std::size_t hits_rec = 0, hits_bat = 0;
  const std::size_t runs = 10;
  for (std::uint64_t s = 0; s < runs; ++s) {
    auto data = normal_sample(400, 2000, s);
    hits_rec += std::abs(i2_recursive(data, 0.0).value / kI2Target - 1.0) <= 0.5;
    hits_bat += std::abs(i2_batch(data, 0.0).value / kI2Target - 1.0) <= 0.5;
  }
  CHECK(hits_rec >= 8);
  CHECK(hits_bat >= 8);
}

TEST_CASE("recursive and batch i1 agree on shared data") {
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto data = normal_sample(1000, 3000, s);
    double a = i1_recursive(data, 0.0).value;
    double b = i1_batch(data, 0.0).value;
    hits += std::abs(a - b) / b <= 0.3;
  }
  CHECK(hits >= 9);
}

TEST_CASE("optimal bandwidth constants") {
  auto plan = optimal_bandwidth_recursive(1.0, 1.0, 1.0, 1.0, 1);
  CHECK(plan.c == doctest::Approx(0.76337).epsilon(5e-4 / 0.76));
  CHECK(std::abs(plan.c - 0.7634) <= 5e-4);
  CHECK(plan.a == doctest::Approx(1.0 / 7.0));
  CHECK(plan.gamma0.has_value());

  auto plan23 = optimal_bandwidth_recursive(1.0, 1.0, 1.0, 2.0 / 3.0, 1);
  CHECK(std::abs(plan23.c - 0.6978) <= 5e-4);
  double analytic = std::pow(3.0 / (8.0 * std::sqrt(M_PI)) * (8.0 / 21.0), 1.0 / 7.0);
  CHECK(plan23.c == doctest::Approx(analytic).epsilon(1e-12));

  CHECK_THROWS_AS(optimal_bandwidth_recursive(1.0, 1.0, 1.0, 0.25, 1), std::invalid_argument);
  CHECK_THROWS_AS(optimal_bandwidth_recursive(1.0, 0.0, 1.0, 1.0, 1), std::invalid_argument);

  auto batch = optimal_bandwidth_batch(1.0, 1.0, 1.0, 1);
  CHECK(std::abs(batch.c - 0.8844) <= 5e-4);
  CHECK_FALSE(batch.gamma0.has_value());
  // homogeneity in sigma^{4/7}
  auto batch2 = optimal_bandwidth_batch(1.0, 1.0, 2.0, 1);
  CHECK(batch2.c == doctest::Approx(batch.c * std::pow(2.0, 4.0 / 7.0)).epsilon(1e-12));
  // 128^{1/7} = 2
  auto batch128 = optimal_bandwidth_batch(128.0, 1.0, 1.0, 1);
  CHECK(batch128.c == doctest::Approx(2.0 * batch.c).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_bandwidth_batch(1.0, -2.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("amise formulas") {
  CHECK(std::abs(amise_recursive(1.0, 1.0, 1.0, 1.0, 1) - 0.3883) <= 5e-4);
  CHECK(std::abs(amise_batch(1.0, 1.0, 1.0, 1) - 0.3568) <= 1e-3);
  // n^{-4/7} scaling, 128^{4/7} = 16
  CHECK(amise_recursive(1.0, 1.0, 1.0, 1.0, 128) ==
        doctest::Approx(amise_recursive(1.0, 1.0, 1.0, 1.0, 1) / 16.0).epsilon(1e-12));
  CHECK(amise_recursive(1.0, 1.0, 1.0, 1.0, 1) / amise_batch(1.0, 1.0, 1.0, 1) ==
        doctest::Approx(0.3883 / 0.357).epsilon(1e-3 / 1.08));
  CHECK(amise_batch(1.0, 1.0, 0.0, 1) == 0.0);
  // gamma0 = 1 minimizes gamma0^2 (gamma0 - 2/7)^{-10/7}
  double best = 1e300, best_g = 0.0;
  for (double g = 2.0 / 7.0 + 1e-3; g <= 4.0; g += 1e-3) {
    double v = amise_recursive(1.0, 1.0, 1.0, g, 1);
    if (v < best) {
      best = v;
      best_g = g;
    }
  }
  CHECK(best_g == doctest::Approx(1.0).epsilon(2e-3));
  // homogeneity in (i1/i2)^{1/7} with the i2^{3/7} i1^{4/7} split
  double a1 = amise_recursive(2.0, 3.0, 1.2, 1.0, 50);
  double a2 = amise_recursive(1.0, 1.0, 1.2, 1.0, 50) * std::pow(2.0, 4.0 / 7.0) *
              std::pow(3.0, 3.0 / 7.0);
  CHECK(a1 == doctest::Approx(a2).epsilon(1e-12));
}

TEST_CASE("plans minimize their own amise expressions") {
  const double i1 = 0.31, i2 = 0.042, sigma = 0.6;
  const std::size_t n = 120;
  const double sqrt_pi = std::sqrt(M_PI);
  // batch objective
  auto batch_obj = [&](double h) {
    return std::pow(sigma, 4) / (4.0 * sqrt_pi) * i1 / (n * h * h * h) +
           i2 * std::pow(h, 4) / 4.0;
  };
  double hb = optimal_bandwidth_batch(i1, i2, sigma, n).bandwidth_at(n);
  CHECK(batch_obj(hb * (1.0 + 1e-3)) > batch_obj(hb));
  CHECK(batch_obj(hb * (1.0 - 1e-3)) > batch_obj(hb));

  // recursive objective at gamma_n = gamma0/n, a = 1/7, xi = 1/gamma0
  for (double gamma0 : {0.8, 1.0, 5.0 / 3.0}) {
    double xi = 1.0 / gamma0;
    auto rec_obj = [&](double h) {
      double gamma_n = gamma0 / n;
      return std::pow(sigma, 4) / (4.0 * sqrt_pi * (2.0 - (1.0 - 3.0 / 7.0) * xi)) *
                 gamma_n / (h * h * h) * i1 +
             1.0 / (4.0 * std::pow(1.0 - 2.0 * xi / 7.0, 2)) * std::pow(h, 4) * i2;
    };
    double hr = optimal_bandwidth_recursive(i1, i2, sigma, gamma0, n).bandwidth_at(n);
    CHECK(rec_obj(hr * (1.0 + 1e-3)) > rec_obj(hr));
    CHECK(rec_obj(hr * (1.0 - 1e-3)) > rec_obj(hr));
  }
}

TEST_CASE("pipeline fallback bookkeeping") {
  AllFunctionals f;
  f.i1_rec = {0.4, true};
  f.i1_bat = {0.39, true};
  f.i2_rec = {-0.01, false};
  f.i2_bat = {0.03, true};
  auto rec = recursive_pipeline(f);
  CHECK(rec.valid);
  CHECK(rec.i2 == 0.03);
  CHECK(rec.i2_fell_back);
  CHECK_FALSE(rec.i1_fell_back);

  f.i2_bat = {-0.5, false};
  auto both_bad = recursive_pipeline(f);
  CHECK_FALSE(both_bad.valid);
  auto bat = batch_pipeline(f);
  CHECK_FALSE(bat.valid);
  CHECK(bat.i2_fell_back);
}

#include "deconv/kernels.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace deconv;

namespace {
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);
}

TEST_CASE("gauss_pdf spot values") {
  CHECK(gauss_pdf(0.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
  CHECK(gauss_pdf(1.0) == gauss_pdf(-1.0));
  CHECK(gauss_pdf(3.7) == gauss_pdf(-3.7));
  // e^{-2} from the series oracle
  double expected = oracles::exp_series(-2.0) / kSqrt2Pi;
  CHECK(gauss_pdf(2.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(gauss_pdf(2.0) == doctest::Approx(0.05399097).epsilon(1e-7));
  CHECK(gauss_pdf(50.0) == 0.0);
}

TEST_CASE("gauss_cdf spot values") {
  CHECK(gauss_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(gauss_cdf(8.0) - 1.0) < 1e-15);
  double quad = oracles::simpson([](double t) { return gauss_pdf(t); }, -12.0, 1.0, 20001);
  CHECK(gauss_cdf(1.0) == doctest::Approx(quad).epsilon(1e-10));
  CHECK(gauss_cdf(1.0) == doctest::Approx(0.8413447).epsilon(1e-7));
  for (double u : {0.3, 1.7, 4.2})
    CHECK(gauss_cdf(-u) == doctest::Approx(1.0 - gauss_cdf(u)).epsilon(1e-14));
}

TEST_CASE("deconv kernel params invariants") {
  auto p = DeconvKernelParams::from_sigma_h(0.5, 2.0);
  CHECK(p.r == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(DeconvKernelParams::from_sigma_h(0.0, 1.0).r == 0.0);
  CHECK_THROWS_AS(DeconvKernelParams::from_sigma_h(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DeconvKernelParams::from_sigma_h(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DeconvKernelParams::from_ratio(-0.1), std::invalid_argument);
}

TEST_CASE("deconv_kernel spot values") {
  CHECK(deconv_kernel(0.7, DeconvKernelParams::from_ratio(0.0)) ==
        doctest::Approx(gauss_pdf(0.7)).epsilon(1e-15));
  // the (1 - u^2) factor vanishes at u = 1 for any ratio
  for (double r : {0.0, 1.0, 7.5, 100.0})
    CHECK(deconv_kernel(1.0, DeconvKernelParams::from_ratio(r)) ==
          doctest::Approx(0.2419707).epsilon(1e-7));
  CHECK(deconv_kernel(0.0, DeconvKernelParams::from_ratio(1.0)) ==
        doctest::Approx(0.7978846).epsilon(1e-7));
  CHECK(deconv_kernel(0.0, DeconvKernelParams::from_ratio(1.0)) ==
        doctest::Approx(2.0 / kSqrt2Pi).epsilon(1e-12));
  // negative lobes exist for r > 0
  CHECK(deconv_kernel(2.0, DeconvKernelParams::from_ratio(5.0)) < 0.0);
}

TEST_CASE("deconv_cdf_kernel spot values") {
  for (double r : {0.0, 0.3, 12.0})
    CHECK(deconv_cdf_kernel(0.0, DeconvKernelParams::from_ratio(r)) ==
          doctest::Approx(0.5).epsilon(1e-15));
  double v = deconv_cdf_kernel(1.0, DeconvKernelParams::from_ratio(2.0));
  CHECK(v == doctest::Approx(0.8413447 + 2.0 * 0.2419707).epsilon(1e-6));
  CHECK(v > 1.0); // overshoot above 1 is expected
  auto p5 = DeconvKernelParams::from_ratio(5.0);
  CHECK(std::abs(deconv_cdf_kernel(12.0, p5) - 1.0) < 1e-12);
  CHECK(std::abs(deconv_cdf_kernel(-12.0, p5)) < 1e-12);
}

TEST_CASE("deconv_kernel_deriv spot values") {
  for (double r : {0.0, 1.0, 9.0})
    CHECK(deconv_kernel_deriv(0.0, DeconvKernelParams::from_ratio(r)) == 0.0);
  double expected = -(1.0 / kSqrt2Pi) * std::exp(-0.5) * 3.0;
  CHECK(deconv_kernel_deriv(1.0, DeconvKernelParams::from_ratio(1.0)) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(deconv_kernel_deriv(1.0, DeconvKernelParams::from_ratio(1.0)) ==
        doctest::Approx(-0.7259122).epsilon(1e-6));
  CHECK(deconv_kernel_deriv(-1.0, DeconvKernelParams::from_ratio(1.0)) ==
        doctest::Approx(0.7259122).epsilon(1e-6));
}

TEST_CASE("fourier inversion oracle") {
  auto p0 = DeconvKernelParams::from_ratio(0.0);
  CHECK(fourier_inversion_oracle(0.0, p0, 12.0, 0.01) ==
        doctest::Approx(0.3989423).epsilon(1e-7));
  auto ph = DeconvKernelParams::from_ratio(0.5);
  CHECK(std::abs(fourier_inversion_oracle(0.5, ph, 12.0, 0.01) -
                 deconv_kernel(0.5, ph)) < 1e-6);
  auto p10 = DeconvKernelParams::from_ratio(10.0);
  CHECK(std::abs(fourier_inversion_oracle(3.0, p10, 12.0, 0.01) -
                 deconv_kernel(3.0, p10)) < 1e-6);

  CHECK_THROWS_AS(fourier_inversion_oracle(0.0, p0, 6.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(fourier_inversion_oracle(0.0, p0, 12.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(fourier_inversion_oracle(0.0, p0, -1.0, 0.01), std::invalid_argument);
}

TEST_CASE("oracle equivalence grid") {
  double worst = 0.0;
  for (double r : {0.0, 0.1, 0.5, 1.0, 5.0, 10.0, 100.0}) {
    auto p = DeconvKernelParams::from_ratio(r);
    for (int i = 0; i <= 32; ++i) {
      double u = -8.0 + 0.5 * i;
      worst = std::max(worst, std::abs(deconv_kernel(u, p) -
                                       fourier_inversion_oracle(u, p)));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("antiderivative and derivative consistency") {
  const double fd_cdf = 1e-5;
  const double fd_pdf = 1e-6;
  for (double r : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    auto p = DeconvKernelParams::from_ratio(r);
    for (int i = 0; i <= 32; ++i) {
      double u = -8.0 + 0.5 * i;
      double slope_cdf =
          (deconv_cdf_kernel(u + fd_cdf, p) - deconv_cdf_kernel(u - fd_cdf, p)) /
          (2.0 * fd_cdf);
      CHECK(std::abs(slope_cdf - deconv_kernel(u, p)) < 1e-6 * std::max(1.0, r));
      double slope_pdf =
          (deconv_kernel(u + fd_pdf, p) - deconv_kernel(u - fd_pdf, p)) /
          (2.0 * fd_pdf);
      CHECK(std::abs(slope_pdf - deconv_kernel_deriv(u, p)) < 1e-5 * std::max(1.0, r));
    }
  }
}

TEST_CASE("unit mass across the family") {
  for (double r : {0.0, 0.5, 1.0, 10.0, 100.0}) {
    auto p = DeconvKernelParams::from_ratio(r);
    CHECK(std::abs(deconv_cdf_kernel(20.0, p) - deconv_cdf_kernel(-20.0, p) - 1.0) <
          1e-10);
  }
}

TEST_CASE("error-free reduction") {
  auto p = DeconvKernelParams::from_ratio(0.0);
  for (int i = 0; i <= 160; ++i) {
    double u = -8.0 + 0.1 * i;
    CHECK(std::abs(deconv_kernel(u, p) - gauss_pdf(u)) < 1e-12);
    CHECK(std::abs(deconv_cdf_kernel(u, p) - gauss_cdf(u)) < 1e-12);
    CHECK(std::abs(deconv_kernel_deriv(u, p) + u * gauss_pdf(u)) < 1e-12);
  }
}

TEST_CASE("psi functional against its closed form") {
  CHECK(psi_functional(DeconvKernelParams::from_ratio(0.0)) ==
        doctest::Approx(0.2820948).epsilon(1e-6));
  CHECK(psi_functional(DeconvKernelParams::from_ratio(0.0)) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-9));
  for (double r : {0.5, 1.0, 5.0, 10.0, 100.0}) {
    double quad = psi_functional(DeconvKernelParams::from_ratio(r));
    double exact = oracles::psi_closed_form(r);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-9));
  }
  // Large-ratio decay is -r^2/(8 sqrt(pi)) with a 1 + 4/r - 4/r^2 correction;
  // the ratio enters the one-percent band around r = 1000.
  for (double r : {10.0, 100.0, 1000.0}) {
    double quad = psi_functional(DeconvKernelParams::from_ratio(r));
    double asym = -r * r / (8.0 * std::sqrt(M_PI));
    CHECK(quad / asym == doctest::Approx(1.0 + 4.0 / r - 4.0 / (r * r)).epsilon(1e-6));
  }
  double near = psi_functional(DeconvKernelParams::from_ratio(1000.0)) /
                (-1000.0 * 1000.0 / (8.0 * std::sqrt(M_PI)));
  CHECK(near == doctest::Approx(1.0).epsilon(0.01));

  CHECK_THROWS_AS(psi_functional(DeconvKernelParams::from_ratio(1.0), {0.0, 0.0, 11}),
                  std::invalid_argument);
  CHECK_THROWS_AS(psi_functional(DeconvKernelParams::from_ratio(1.0), {-20.0, 20.0, 10}),
                  std::invalid_argument);
}

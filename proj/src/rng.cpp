#include "deconv/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed;
  splitmix64(state);
  state ^= 0xD1B54A32D192ED03ull * (stream_index + 1);
  gen_.seed(splitmix64(state));
}

double RngStream::uniform01() {
  // 53 random bits, offset by half an ulp so 0 and 1 are never returned
  return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double rad = std::sqrt(-2.0 * std::log(u1));
  double ang = 2.0 * std::numbers::pi * u2;
  cached_normal_ = rad * std::sin(ang);
  has_cached_normal_ = true;
  return rad * std::cos(ang);
}

double RngStream::laplace(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("laplace: sigma must be nonnegative");
  double w = uniform01() - 0.5;
  double sgn = (w > 0.0) ? 1.0 : (w < 0.0 ? -1.0 : 0.0);
  return -sigma * sgn * std::log(1.0 - 2.0 * std::abs(w));
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(uniform01()) / rate;
}

} // namespace deconv

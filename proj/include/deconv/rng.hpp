#pragma once

#include <cstdint>
#include <random>

namespace deconv {

//! Deterministic RNG stream derived from (master seed, stream index).
//! Backed by std::mt19937_64, whose output is fully specified by the
//! standard, so sequences are identical across platforms and builds.
//! Replication k of a Monte Carlo run uses stream index k, which makes
//! results independent of execution order.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  //! Uniform draw strictly inside (0, 1).
  double uniform01();

  //! Standard normal via Box-Muller (pairs cached).
  double normal();

  //! Centred Laplace with scale sigma via inverse CDF:
  //! u -> -sigma * sign(u - 1/2) * log(1 - 2|u - 1/2|).
  double laplace(double sigma);

  double exponential(double rate);

private:
  std::mt19937_64 gen_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

} // namespace deconv

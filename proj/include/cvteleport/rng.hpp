#pragma once

#include <cstdint>

namespace cvt {

// Counter-based generator: sample k of stream s under seed q is a pure
// function of (q, s, k).  Runs are reproducible regardless of how work is
// split across shots, and distinct streams never overlap in practice.
// Distributions are produced locally (Box-Muller) so output bytes do not
// depend on the standard library implementation.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform on (0, 1); never returns an endpoint.
  double uniform();
  // Standard normal via Box-Muller; the spare half of each pair is cached.
  double normal();

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cvt

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bomi {

// Deterministic random stream with labeled substreams.
//
// Substreams are derived from the parent's seed (not its engine state), so
// two consumers holding substreams with different labels never interact:
// draws on one leave the other untouched. fork() instead derives a child
// from the current engine state (one draw), for call sites that need a
// fresh stream per invocation.
//
// Draw costs are part of the contract (they keep traces reproducible):
//   uniform01    1 engine call
//   normal       2 engine calls
//   uniform_int  1 engine call
//   subset(n,m)  m engine calls
// gamma draws a variable number of engine calls (rejection sampling).
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  RngStream substream(std::string_view label) const;
  RngStream fork();

  std::uint64_t seed() const { return seed_; }

  // in [0, 1)
  double uniform01();
  // in [lo, hi)
  double uniform(double lo, double hi);
  // standard normal, Box-Muller without caching
  double normal();
  // Marsaglia-Tsang; shape > 0, scale > 0
  double gamma(double shape, double scale);
  double chi_squared(double dof);
  // in {0, ..., n-1}; n >= 1
  int uniform_int(int n);
  // m distinct values from {0, ..., n-1}, partial Fisher-Yates order
  std::vector<int> subset(int n, int m);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace bomi

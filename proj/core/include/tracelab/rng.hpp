#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace tracelab {

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Counter-based stream addressed by (seed, path). split(i) appends i to the
// path; the same (seed, path) always yields the same sequence.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0);

  RngStream split(std::uint64_t index) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  // Uniform on [0,1).
  double uniform();
  double exponential(double rate);
  // Uniform integer on [0,n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p);
  // Index i with probability (cum[i]-cum[i-1])/cum.back().
  std::size_t pick_cumulative(std::span<const double> cumulative);

  std::uint64_t key() const { return key_; }

 private:
  RngStream(std::uint64_t key, int);
  void refill();

  std::uint64_t key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tracelab

#pragma once

#include <array>
#include <cstdint>

namespace steinkit::numerics {

// Counter-based stream generator (Philox 4x32-10, Salmon et al. 2011).
//
// Streams are keyed by a hash of the seed; the stream id occupies the high
// counter words, so streams with distinct ids draw from disjoint counter
// spaces of the same keyed bijection. Identical (seed, stream_id) reproduce
// identical sequences on any platform. A batch of work can be partitioned by
// giving each worker its own stream id; the union of draws is independent of
// the partition.
//
// Handles are single-owner: share nothing, hand each consumer its own stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint32_t next_u32();

  // Uniform on [0,1) with 53 random mantissa bits.
  double next_u01();

  // Standard normal via Box-Muller (pairs cached).
  double next_normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_, stream_id_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_;
  int block_pos_;
  double cached_normal_;
  bool has_cached_normal_;
};

}  // namespace steinkit::numerics

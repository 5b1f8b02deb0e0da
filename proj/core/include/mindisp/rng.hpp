#pragma once

#include <cmath>
#include <cstdint>

namespace mindisp {

// Keeps noise streams for unrelated uses disjoint by construction.
enum class StreamPurpose : std::uint32_t {
  InitialDraw = 1,
  PathNoise = 2,
  CostEval = 3,
  Adjoint = 4,
  Synthesis = 5,
  Diagnostic = 6,
};

// Identifies one logical noise stream. Identical (seed, StreamId) pairs
// reproduce identical Gaussian sequences; distinct ids give independent
// streams regardless of which thread consumes them.
struct StreamId {
  StreamPurpose purpose = StreamPurpose::PathNoise;
  std::uint32_t iteration = 0;
  std::uint64_t particle = 0;
  std::uint64_t sub = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based Gaussian generator built on Philox 4x32-10. The stream
// identity (key plus counter prefix) is derived by hashing the seed and the
// StreamId fields; the remaining counter word is a block index, so every draw
// is a pure function of (seed, id, position). Normals come from Box-Muller.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, const StreamId& id) {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(
        h ^ ((static_cast<std::uint64_t>(id.purpose) << 32) | id.iteration));
    h = detail::splitmix64(h ^ id.particle);
    h = detail::splitmix64(h ^ id.sub);
    key_[0] = static_cast<std::uint32_t>(h);
    key_[1] = static_cast<std::uint32_t>(h >> 32);
    const std::uint64_t g = detail::splitmix64(h);
    prefix_[0] = static_cast<std::uint32_t>(g);
    prefix_[1] = static_cast<std::uint32_t>(g >> 32);
    prefix_[2] = static_cast<std::uint32_t>(detail::splitmix64(g));
  }

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = next32();
    const std::uint64_t lo = next32();
    const std::uint64_t bits = (hi << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Standard normal draw.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint32_t next32() {
    if (avail_ == 0) refill();
    return out_[4 - avail_--];
  }

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void refill() {
    std::uint32_t c[4] = {block_, prefix_[0], prefix_[1], prefix_[2]};
    std::uint32_t k[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c[0], hi0, lo0);
      mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
      const std::uint32_t n3 = lo0;
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    out_[0] = c[0];
    out_[1] = c[1];
    out_[2] = c[2];
    out_[3] = c[3];
    ++block_;
    avail_ = 4;
  }

  std::uint32_t key_[2];
  std::uint32_t prefix_[3];
  std::uint32_t block_ = 0;
  std::uint32_t out_[4] = {0, 0, 0, 0};
  int avail_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mindisp

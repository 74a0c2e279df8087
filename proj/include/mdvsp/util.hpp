#pragma once

#include <chrono>
#include <cstdint>
#include <limits>

#include "mdvsp/errors.hpp"

namespace mdvsp {

/// Cooperative deadline. Long-running phases call check() between units of
/// work; an expired deadline raises TimeoutError.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after_seconds(double s) {
    Deadline d;
    if (s > 0) {
      d.limited_ = true;
      d.at_ = std::chrono::steady_clock::now() +
              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(s));
    }
    return d;
  }
  static Deadline never() { return Deadline(); }

  bool expired() const {
    return limited_ && std::chrono::steady_clock::now() > at_;
  }
  void check(const char* phase) const {
    if (expired()) throw TimeoutError(std::string("deadline expired during ") + phase);
  }

 private:
  bool limited_ = false;
  std::chrono::steady_clock::time_point at_{};
};

/// splitmix64 step; used to derive independent sub-seeds so that derived
/// streams do not depend on how many draws earlier streams consumed.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(a ^ mix_seed(b));
}

/// Deterministic bounded draw (identical across platforms, unlike
/// std::uniform_int_distribution).
template <class Rng>
long long uniform_int(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Deterministic uniform draw in [0, 1).
template <class Rng>
double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mdvsp

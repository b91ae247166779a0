#pragma once

#include <cstdint>

namespace hlo::detail {

// splitmix64: the standard 64-bit mixer. Used to derive independent
// per-element streams from (seed, index) so results never depend on
// traversal order or thread count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
    splitmix64(state);
    return splitmix64(state);
}

// Small deterministic stream generator.
class Stream {
  public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in (0, 1].
    double next_open_unit() {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  private:
    std::uint64_t state_;
};

}  // namespace hlo::detail

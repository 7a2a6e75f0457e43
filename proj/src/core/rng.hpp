#pragma once

#include <cstdint>

namespace slln {

// splitmix64 finalizer. Full 64-bit avalanche, so chaining it over
// (seed, path, substream, counter) gives independent streams without
// carrying generator state across threads.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: draw i depends only on (seed, path, substream, i).
// Identical sequences regardless of thread count or call interleaving
// across independent streams.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t path, uint64_t substream)
        : key_(mix64(mix64(mix64(seed) ^ path) ^ (substream * 0xd6e8feb86659fd93ULL))),
          counter_(0) {}

    uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // Uniform on the open interval (0, 1); 53-bit resolution, never 0 or 1,
    // so inverse-CDF transforms stay finite.
    double next_u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    uint64_t counter() const { return counter_; }

  private:
    uint64_t key_;
    uint64_t counter_;
};

} // namespace slln

#ifndef FOLIATE_RNG_HPP
#define FOLIATE_RNG_HPP

#include <cstdint>
#include <random>

namespace foliate {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

// Seeded random source with deterministic splitting: a run is reproducible
// from (seed) alone, and independent trials draw from split(trial) streams
// that never share state with the parent.
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(detail::splitmix64(seed ^ detail::splitmix64(stream + 0x632BE59BD9B4E019ull))),
          eng_(base_) {}

    SplitRng split(std::uint64_t k) const { return SplitRng(base_, k + 1); }

    std::uint64_t bits() { return eng_(); }

    bool coin() { return (eng_() >> 32) & 1; }

    // fair ±1 draw
    int plus_minus() { return coin() ? +1 : -1; }

    std::uint64_t below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(eng_);
    }

  private:
    std::uint64_t base_;
    std::mt19937_64 eng_;
};

}  // namespace foliate

#endif

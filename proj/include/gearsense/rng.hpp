#ifndef GEARSENSE_RNG_HPP
#define GEARSENSE_RNG_HPP

#include <cstdint>
#include <random>

namespace gearsense::sim {

// Seeded random stream: mt19937_64 keyed by (seed, stream index) so each
// simulated run owns an independent, reproducible substream. All
// distributions are implemented here rather than taken from <random> so a
// given (seed, stream) produces the same draw sequence on any conforming
// implementation:
//   uniform  - 53-bit mantissa from the raw engine output
//   normal   - Box-Muller, second value cached
//   poisson  - Knuth inversion for mean < 10, Hormann's PTRS transformed
//              rejection for 10 <= mean <= 1e6, rounded normal
//              approximation above 1e6
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    double uniform();                   // [0, 1)
    double normal();                    // N(0, 1)
    std::int64_t poisson(double mean);  // mean >= 0

    static constexpr double kPoissonKnuthLimit = 10.0;
    static constexpr double kPoissonExactLimit = 1e6;

private:
    std::int64_t poisson_knuth(double mean);
    std::int64_t poisson_ptrs(double mean);

    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace gearsense::sim

#endif

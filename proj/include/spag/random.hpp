#ifndef SPAG_RANDOM_HPP
#define SPAG_RANDOM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spag/geometry.hpp"

namespace spag {

// Identifies one reproducible random stream. Distinct (label, replica) pairs
// give statistically independent streams for the same master seed.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::string stream_label;
    std::int64_t replica = 0;

    std::uint64_t stream_key() const;
};

// Parse a seed given as decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);
std::string seed_to_hex(std::uint64_t seed);

namespace detail {

// Philox4x32-10 block cipher (counter-based). One call encrypts a 128-bit
// counter under a 64-bit key and yields 128 random bits.
void philox4x32(const std::uint32_t counter[4], const std::uint32_t key[2],
                std::uint32_t out[4]);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(const std::string& s);

// Double in [0,1) from the top 53 bits of a 64-bit word.
inline double to_unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Counter-based stream of uniform doubles; satisfies
// UniformRandomBitGenerator so it plugs into <random> distributions.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_lo_(static_cast<std::uint32_t>(key)),
                                             key_hi_(static_cast<std::uint32_t>(key >> 32)) {}
    CounterRng(const SeedSpec& seed) : CounterRng(seed.stream_key()) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();
    double uniform() { return detail::to_unit_double((*this)()); }
    // Exponential(1) variate.
    double exponential();

private:
    std::uint32_t key_lo_, key_hi_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

// Stateless oracle for the uniform marks attached to ordered vertex pairs,
// and for auxiliary per-vertex marks. Every mark is a pure function of
// (master seed, purpose, ids), so any mark can be evaluated lazily in O(1)
// and concurrently.
class PairMarkOracle {
public:
    explicit PairMarkOracle(std::uint64_t master_seed);

    std::uint64_t master_seed() const { return master_seed_; }

    // Mark consumed when the younger vertex tests the older one. Ordered
    // keying: (5,2) and (2,5) are independent. Throws on equal ids.
    double pair_mark(std::uint64_t younger_id, std::uint64_t older_id) const;

    // Per-vertex mark under a named purpose (e.g. "perc"), independent of
    // all pair marks.
    double vertex_mark(const std::string& purpose_label, std::uint64_t vertex_id) const;

private:
    std::uint64_t master_seed_;
    std::uint32_t pair_key_[2];
};

// Sample a homogeneous Poisson point process on torus x (0, horizon] and
// return the points sorted by birth time. Birth-time ties (float-granularity
// collisions) are broken by resampling the later birth. Throws
// std::length_error if the expected count exceeds max_expected_points.
std::vector<SpaceTimePoint> sample_poisson_points(int dim, double volume,
                                                  double time_horizon, double intensity,
                                                  const SeedSpec& seed,
                                                  double max_expected_points = 5e7);

}  // namespace spag

#endif

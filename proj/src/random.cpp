#include "spag/random.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace spag {
namespace detail {

namespace {
constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
    std::uint32_t out1 = static_cast<std::uint32_t>(p1);
    std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
    std::uint32_t out3 = static_cast<std::uint32_t>(p0);
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}
}  // namespace

void philox4x32(const std::uint32_t counter[4], const std::uint32_t key[2],
                std::uint32_t out[4]) {
    std::uint32_t ctr[4] = {counter[0], counter[1], counter[2], counter[3]};
    std::uint32_t k[2] = {key[0], key[1]};
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, k);
        k[0] += kPhiloxW32A;
        k[1] += kPhiloxW32B;
    }
    out[0] = ctr[0];
    out[1] = ctr[1];
    out[2] = ctr[2];
    out[3] = ctr[3];
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace detail

std::uint64_t SeedSpec::stream_key() const {
    std::uint64_t k = detail::splitmix64(master_seed);
    k = detail::splitmix64(k ^ detail::fnv1a(stream_label));
    k = detail::splitmix64(k ^ static_cast<std::uint64_t>(replica));
    return k;
}

std::uint64_t parse_seed(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty seed");
    int base = 10;
    std::size_t start = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        start = 2;
    }
    std::size_t pos = 0;
    std::uint64_t value = std::stoull(text.substr(start), &pos, base);
    if (pos != text.size() - start) throw std::invalid_argument("bad seed: " + text);
    return value;
}

std::string seed_to_hex(std::uint64_t seed) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(seed));
    return buf;
}

CounterRng::result_type CounterRng::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    std::uint32_t ctr[4] = {static_cast<std::uint32_t>(counter_),
                            static_cast<std::uint32_t>(counter_ >> 32), 0, 0};
    std::uint32_t key[2] = {key_lo_, key_hi_};
    std::uint32_t out[4];
    detail::philox4x32(ctr, key, out);
    ++counter_;
    spare_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    have_spare_ = true;
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double CounterRng::exponential() {
    double u;
    do {
        u = uniform();
    } while (u <= 0.0);
    return -std::log1p(-u);
}

PairMarkOracle::PairMarkOracle(std::uint64_t master_seed) : master_seed_(master_seed) {
    std::uint64_t k = detail::splitmix64(master_seed ^ detail::fnv1a("pair-marks"));
    pair_key_[0] = static_cast<std::uint32_t>(k);
    pair_key_[1] = static_cast<std::uint32_t>(k >> 32);
}

double PairMarkOracle::pair_mark(std::uint64_t younger_id, std::uint64_t older_id) const {
    if (younger_id == older_id)
        throw std::invalid_argument("pair_mark: ids must be distinct");
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(younger_id), static_cast<std::uint32_t>(younger_id >> 32),
        static_cast<std::uint32_t>(older_id), static_cast<std::uint32_t>(older_id >> 32)};
    std::uint32_t out[4];
    detail::philox4x32(ctr, pair_key_, out);
    return detail::to_unit_double((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

double PairMarkOracle::vertex_mark(const std::string& purpose_label,
                                   std::uint64_t vertex_id) const {
    std::uint64_t k = detail::splitmix64(master_seed_ ^ detail::fnv1a(purpose_label));
    std::uint32_t key[2] = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::uint32_t ctr[4] = {static_cast<std::uint32_t>(vertex_id),
                            static_cast<std::uint32_t>(vertex_id >> 32), 0x5EEDu, 0u};
    std::uint32_t out[4];
    detail::philox4x32(ctr, key, out);
    return detail::to_unit_double((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

std::vector<SpaceTimePoint> sample_poisson_points(int dim, double volume,
                                                  double time_horizon, double intensity,
                                                  const SeedSpec& seed,
                                                  double max_expected_points) {
    if (dim < 1 || volume <= 0.0 || time_horizon <= 0.0 || intensity <= 0.0)
        throw std::invalid_argument("sample_poisson_points: arguments must be positive");
    double mean = intensity * volume * time_horizon;
    if (mean > max_expected_points)
        throw std::length_error("sample_poisson_points: expected count exceeds memory cap");

    CounterRng rng(seed);
    std::poisson_distribution<long long> count_dist(mean);
    long long n = count_dist(rng);

    double side = std::pow(volume, 1.0 / dim);
    std::vector<SpaceTimePoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        SpaceTimePoint p;
        p.position.coords.resize(dim);
        for (int k = 0; k < dim; ++k)
            p.position.coords[k] = wrap_coord((rng.uniform() - 0.5) * side, side);
        do {
            p.birth = (1.0 - rng.uniform()) * time_horizon;  // in (0, horizon]
        } while (p.birth <= 0.0);
        points.push_back(std::move(p));
    }
    std::sort(points.begin(), points.end(),
              [](const SpaceTimePoint& a, const SpaceTimePoint& b) { return a.birth < b.birth; });
    // Birth ties have probability zero but can occur at float granularity;
    // resample the later birth until the order is strict.
    for (std::size_t i = 1; i < points.size();) {
        if (points[i].birth == points[i - 1].birth) {
            do {
                points[i].birth = (1.0 - rng.uniform()) * time_horizon;
            } while (points[i].birth <= 0.0);
            std::sort(points.begin(), points.end(), [](const SpaceTimePoint& a,
                                                       const SpaceTimePoint& b) {
                return a.birth < b.birth;
            });
            i = 1;
        } else {
            ++i;
        }
    }
    return points;
}

}  // namespace spag

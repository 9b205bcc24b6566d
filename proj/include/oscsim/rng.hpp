#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oscsim {

// All randomness in the project flows through std::mt19937_64 seeded
// explicitly. The raw 64-bit stream is specified by the standard, so results
// are reproducible across platforms as long as we avoid the distribution
// classes (their algorithms are implementation-defined).

inline double uniform01(std::mt19937_64& gen) {
    // 53 random mantissa bits, value in [0, 1)
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi)
inline double uniform_range(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

// Uniform integer in [0, n), n > 0, by rejection on the top range
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = gen();
    while (v >= limit) v = gen();
    return v % n;
}

template <typename T>
void shuffle_inplace(std::mt19937_64& gen, std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_index(gen, i)]);
    }
}

// Inverse-CDF sampler over nonnegative weights in fixed left-to-right basis
// order. Deterministic for a fixed generator state.
class CdfSampler {
public:
    explicit CdfSampler(const Eigen::VectorXd& weights)
        : cdf_(static_cast<std::size_t>(weights.size())) {
        double running = 0.0;
        for (Eigen::Index i = 0; i < weights.size(); ++i) {
            running += weights[i];
            cdf_[static_cast<std::size_t>(i)] = running;
        }
    }

    Eigen::Index draw(std::mt19937_64& gen) const {
        const double u = uniform01(gen) * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) return static_cast<Eigen::Index>(cdf_.size()) - 1;
        return static_cast<Eigen::Index>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

} // namespace oscsim

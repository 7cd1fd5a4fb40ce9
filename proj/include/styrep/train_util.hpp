#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "styrep/nn.hpp"
#include "styrep/rng.hpp"

namespace styrep {

// Linear decay from the starting rate to the floor over the total number of
// training targets.
class LrSchedule {
public:
    LrSchedule(double start, double floor, std::size_t total_targets)
        : start_(start), floor_(std::min(floor, start)), total_(std::max<std::size_t>(total_targets, 1)) {}

    double next() {
        const double f = 1.0 - static_cast<double>(done_) / static_cast<double>(total_);
        ++done_;
        return std::max(floor_, start_ * f);
    }

private:
    double start_;
    double floor_;
    std::size_t total_;
    std::size_t done_ = 0;
};

// Fresh document vector with the same distribution init_table uses for
// input tables.
inline std::vector<float> init_vector(std::size_t dim, Rng& rng) {
    std::vector<float> v(dim);
    for (float& x : v) x = static_cast<float>((rng.next_real() - 0.5) / static_cast<double>(dim));
    return v;
}

inline void add_scaled(std::span<float> dst, std::span<const float> src, float scale) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
}

// Per-pass row-update record used by the parameter-touch accounting tests.
struct PassTouches {
    std::size_t positive_out_rows = 0;
    std::size_t negative_out_rows = 0;
    std::size_t input_rows = 0;
    std::size_t context_size = 0;  // joint HEAD 1 only
};

}  // namespace styrep

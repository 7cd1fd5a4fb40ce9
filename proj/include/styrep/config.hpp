#pragma once

#include <cstdint>
#include <optional>

namespace styrep {

enum class PredictionHead { negative_sampling, full_softmax };

struct TrainConfig {
    std::size_t dim = 400;
    std::size_t window = 4;
    int negatives = 5;
    double learning_rate = 0.025;
    double min_learning_rate = 0.0001;
    std::size_t epochs = 10;
    std::uint64_t seed = 0;
    std::optional<double> subsample_threshold;  // off by default
    std::uint64_t min_count = 1;
    double noise_exponent = 0.75;
    // Syntactic model only; the other models always use negative sampling.
    PredictionHead head = PredictionHead::negative_sampling;
    // When true, the input gradient distributed to the context/bias vectors is
    // divided by the number of contributors instead of applied in full.
    bool average_context_gradient = false;
};

}  // namespace styrep

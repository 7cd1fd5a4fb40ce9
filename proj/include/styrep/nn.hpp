#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "styrep/rng.hpp"
#include "styrep/vocab.hpp"

namespace styrep {

enum class TableKind { input, output };

// Dense row-major matrix of in/out vectors. Templated on the scalar so the
// gradient-check suite can run the identical routines in double precision;
// models use the float instantiation.
template <typename Real>
class EmbeddingTableT {
public:
    EmbeddingTableT() = default;
    EmbeddingTableT(std::size_t rows, std::size_t dim, Real fill = Real(0))
        : rows_(rows), dim_(dim), values_(rows * dim, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }

    std::span<Real> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    std::span<const Real> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }

    std::vector<Real>& values() { return values_; }
    const std::vector<Real>& values() const { return values_; }

    bool operator==(const EmbeddingTableT&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<Real> values_;
};

using EmbeddingTable = EmbeddingTableT<float>;

// Input tables start at small seeded uniform values in (-0.5/dim, +0.5/dim);
// output tables start at zero. Pure in (rows, dim, seed, kind).
template <typename Real>
EmbeddingTableT<Real> init_table(std::size_t rows, std::size_t dim, std::uint64_t seed,
                                 TableKind kind) {
    if (rows == 0 || dim == 0) throw std::invalid_argument("init_table: rows and dim must be > 0");
    EmbeddingTableT<Real> table(rows, dim);
    if (kind == TableKind::input) {
        Rng rng(seed);
        for (Real& v : table.values())
            v = static_cast<Real>((rng.next_real() - 0.5) / static_cast<double>(dim));
    }
    return table;
}

// Logistic function with the argument clamped to [-30, 30].
inline double sigmoid(double x) {
    x = std::clamp(x, -30.0, 30.0);
    return 1.0 / (1.0 + std::exp(-x));
}

// Row-update accounting used by the parameter-touch tests. Out-side touches
// are recorded here; input-side distribution is counted by the callers.
struct TouchCounts {
    std::size_t positive_out_rows = 0;
    std::size_t negative_out_rows = 0;
    std::size_t input_rows = 0;
};

template <typename Real>
double dot(std::span<const Real> a, std::span<const Real> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
}

// One negative-sampling update with the noise indices already drawn: a
// logistic step for the target (label 1) and each negative (label 0).
// Touched out-rows are updated in place by lr * g * input unless frozen; the
// returned vector is the accumulated input gradient sum(g * w_out), each
// contribution evaluated against the pre-update row. The caller scales it by
// the learning rate when distributing. When objective is non-null the
// log-likelihood of this step is added to it.
template <typename Real>
std::vector<Real> ns_update(std::span<const Real> input, std::size_t target,
                            std::span<const std::size_t> negatives, EmbeddingTableT<Real>& out,
                            Real lr, bool freeze_out = false, TouchCounts* touches = nullptr,
                            double* objective = nullptr) {
    const std::size_t dim = out.dim();
    if (input.size() != dim) throw std::invalid_argument("ns_update: dimension mismatch");
    std::vector<Real> grad(dim, Real(0));
    auto apply = [&](std::size_t index, double label) {
        auto row = out.row(index);
        const double p = sigmoid(dot<Real>(row, input));
        const double g = label - p;
        for (std::size_t d = 0; d < dim; ++d) grad[d] += static_cast<Real>(g) * row[d];
        if (!freeze_out)
            for (std::size_t d = 0; d < dim; ++d)
                row[d] += lr * static_cast<Real>(g) * input[d];
        if (objective) *objective += label != 0.0 ? std::log(p) : std::log(1.0 - p);
    };
    apply(target, 1.0);
    for (std::size_t neg : negatives) apply(neg, 0.0);
    if (touches && !freeze_out) {
        touches->positive_out_rows += 1;
        touches->negative_out_rows += negatives.size();
    }
    return grad;
}

// Draws k noise indices, redrawing on collision with the target (at most 100
// redraws each, then the slot is skipped).
inline std::vector<std::size_t> draw_negatives(const NoiseTable& noise, std::size_t target, int k,
                                               Rng& rng) {
    std::vector<std::size_t> negatives;
    negatives.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        std::size_t neg = target;
        for (int attempt = 0; attempt < 100 && neg == target; ++attempt) neg = noise.sample(rng);
        if (neg != target) negatives.push_back(neg);
    }
    return negatives;
}

template <typename Real>
std::vector<Real> ns_step(std::span<const Real> input, std::size_t target,
                          EmbeddingTableT<Real>& out, const NoiseTable& noise, int k, Real lr,
                          Rng& rng, bool freeze_out = false, TouchCounts* touches = nullptr,
                          double* objective = nullptr) {
    const std::vector<std::size_t> negatives = draw_negatives(noise, target, k, rng);
    return ns_update<Real>(input, target, negatives, out, lr, freeze_out, touches, objective);
}

inline constexpr std::size_t kSoftmaxRowGuard = 100'000;

// Full multiclass update: every out-row j moves by lr * (1[j==target] - P_j)
// * input; returns w_target - sum_j P_j * w_j, evaluated pre-update. P is the
// standard exponential softmax over the row/input dot products, which is the
// distribution these gradients descend.
template <typename Real>
std::vector<Real> softmax_step(std::span<const Real> input, std::size_t target,
                               EmbeddingTableT<Real>& out, Real lr, bool freeze_out = false,
                               TouchCounts* touches = nullptr, double* objective = nullptr,
                               std::vector<double>* probs_out = nullptr) {
    const std::size_t dim = out.dim();
    const std::size_t rows = out.rows();
    if (rows > kSoftmaxRowGuard)
        throw std::invalid_argument(
            "softmax_step: output vocabulary too large; use negative sampling");
    if (input.size() != dim) throw std::invalid_argument("softmax_step: dimension mismatch");

    std::vector<double> logits(rows);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rows; ++j) {
        logits[j] = dot<Real>(out.row(j), input);
        max_logit = std::max(max_logit, logits[j]);
    }
    double z = 0.0;
    for (double& l : logits) {
        l = std::exp(l - max_logit);
        z += l;
    }
    std::vector<Real> grad(dim, Real(0));
    for (std::size_t j = 0; j < rows; ++j) {
        const double p = logits[j] / z;
        const double g = (j == target ? 1.0 : 0.0) - p;
        auto row = out.row(j);
        for (std::size_t d = 0; d < dim; ++d) grad[d] += static_cast<Real>(g) * row[d];
        if (!freeze_out)
            for (std::size_t d = 0; d < dim; ++d)
                row[d] += lr * static_cast<Real>(g) * input[d];
        if (objective && j == target) *objective += std::log(p);
        if (probs_out) logits[j] = p;
    }
    if (touches && !freeze_out) {
        touches->positive_out_rows += 1;
        touches->negative_out_rows += rows - 1;
    }
    if (probs_out) *probs_out = std::move(logits);
    return grad;
}

}  // namespace styrep

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "styrep/corpus.hpp"
#include "styrep/rng.hpp"

namespace styrep {

enum class VocabUnit { token, char_bigram, pos_bigram };

// Precomputed quantized table for O(1) draws from the noise distribution.
// Cell counts are proportional to count^exponent; every item keeps at least
// one cell so no index ever has zero sampling probability.
class NoiseTable {
public:
    NoiseTable() = default;
    NoiseTable(const std::vector<std::uint64_t>& counts, double exponent,
               std::size_t cells = kDefaultCells);

    std::size_t sample(Rng& rng) const { return table_[rng.next_below(table_.size())]; }

    // Exact (unquantized) probabilities, count^exponent normalized.
    const std::vector<double>& probabilities() const { return probs_; }

    static constexpr std::size_t kDefaultCells = 10'000'000;

private:
    std::vector<std::uint32_t> table_;
    std::vector<double> probs_;
};

// Item -> index map with frequencies and the noise table. Indices are
// 0..n-1 assigned by descending count, lexicographic tie-break, so two
// builds over the same corpus are identical.
class Vocabulary {
public:
    Vocabulary() = default;

    std::size_t size() const { return items_.size(); }
    std::uint64_t total() const { return total_; }

    const std::string& item(std::size_t index) const { return items_[index]; }
    std::uint64_t count(std::size_t index) const { return counts_[index]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    double noise_exponent() const { return noise_exponent_; }

    // npos when the item is out of vocabulary.
    std::size_t index_of(const std::string& item) const {
        auto it = index_.find(item);
        return it == index_.end() ? npos : it->second;
    }
    bool contains(const std::string& item) const { return index_.count(item) != 0; }

    const NoiseTable& noise() const { return noise_; }

    // Rebuilds a vocabulary from already-ordered (item, count) rows, as read
    // back from an archive.
    static Vocabulary from_entries(std::vector<std::string> items,
                                   std::vector<std::uint64_t> counts, double noise_exponent);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend Vocabulary build_vocabulary(const std::vector<Document>& corpus, VocabUnit unit,
                                       std::uint64_t min_count, double noise_exponent);

private:
    std::vector<std::string> items_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::string, std::size_t> index_;
    std::uint64_t total_ = 0;
    double noise_exponent_ = 0.75;
    NoiseTable noise_;
};

// Counts the requested unit over the corpus, drops items below min_count and
// builds the noise table. Throws DataError when nothing survives.
// noise_exponent must be in (0, 1].
Vocabulary build_vocabulary(const std::vector<Document>& corpus, VocabUnit unit,
                            std::uint64_t min_count, double noise_exponent);

}  // namespace styrep

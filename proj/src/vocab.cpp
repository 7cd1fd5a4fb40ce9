#include "styrep/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "styrep/errors.hpp"

namespace styrep {

NoiseTable::NoiseTable(const std::vector<std::uint64_t>& counts, double exponent,
                       std::size_t cells) {
    if (counts.empty()) throw std::invalid_argument("NoiseTable: empty counts");
    if (counts.size() > cells)
        throw std::invalid_argument("NoiseTable: more items than table cells");
    probs_.resize(counts.size());
    double z = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        probs_[i] = std::pow(static_cast<double>(counts[i]), exponent);
        z += probs_[i];
    }
    for (double& p : probs_) p /= z;

    // Integer cell allocation: floor shares plus largest remainders, with a
    // floor of one cell per item.
    std::vector<std::size_t> alloc(counts.size());
    std::vector<std::pair<double, std::size_t>> remainders(counts.size());
    std::size_t used = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double share = probs_[i] * static_cast<double>(cells);
        alloc[i] = std::max<std::size_t>(1, static_cast<std::size_t>(share));
        remainders[i] = {share - std::floor(share), i};
        used += alloc[i];
    }
    if (used < cells) {
        std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        std::size_t leftover = cells - used;
        for (std::size_t j = 0; leftover > 0; j = (j + 1) % remainders.size(), --leftover)
            ++alloc[remainders[j].second];
    } else if (used > cells) {
        // Rare: the one-cell floors overshot. Trim from the largest allocations.
        std::size_t excess = used - cells;
        for (std::size_t i = 0; excess > 0; i = (i + 1) % alloc.size()) {
            if (alloc[i] > 1) {
                --alloc[i];
                --excess;
            }
        }
    }
    table_.reserve(cells);
    for (std::size_t i = 0; i < alloc.size(); ++i)
        table_.insert(table_.end(), alloc[i], static_cast<std::uint32_t>(i));
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> items,
                                    std::vector<std::uint64_t> counts, double noise_exponent) {
    if (items.size() != counts.size())
        throw std::invalid_argument("Vocabulary::from_entries: size mismatch");
    Vocabulary v;
    v.items_ = std::move(items);
    v.counts_ = std::move(counts);
    v.noise_exponent_ = noise_exponent;
    for (std::size_t i = 0; i < v.items_.size(); ++i) {
        v.index_[v.items_[i]] = i;
        v.total_ += v.counts_[i];
    }
    v.noise_ = NoiseTable(v.counts_, noise_exponent);
    return v;
}

Vocabulary build_vocabulary(const std::vector<Document>& corpus, VocabUnit unit,
                            std::uint64_t min_count, double noise_exponent) {
    if (corpus.empty()) throw DataError("build_vocabulary: empty corpus");
    if (!(noise_exponent > 0.0 && noise_exponent <= 1.0))
        throw std::invalid_argument("noise_exponent must be in (0, 1]");

    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& doc : corpus) {
        for (const auto& sentence : doc.sentences) {
            switch (unit) {
                case VocabUnit::token:
                    for (const auto& tok : sentence.tokens) ++freq[tok.surface];
                    break;
                case VocabUnit::char_bigram:
                    for (const auto& tok : sentence.tokens)
                        for (const auto& bg : char_bigrams_of(tok.surface)) ++freq[bg];
                    break;
                case VocabUnit::pos_bigram:
                    for (const auto& pg : pos_bigrams_of(sentence)) ++freq[pg];
                    break;
            }
        }
    }

    std::vector<std::pair<std::string, std::uint64_t>> entries;
    entries.reserve(freq.size());
    for (auto& [item, count] : freq)
        if (count >= std::max<std::uint64_t>(min_count, 1)) entries.emplace_back(item, count);
    if (entries.empty()) throw DataError("build_vocabulary: no items survive min_count");

    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::string> items;
    std::vector<std::uint64_t> counts;
    items.reserve(entries.size());
    counts.reserve(entries.size());
    for (auto& [item, count] : entries) {
        items.push_back(std::move(item));
        counts.push_back(count);
    }
    return Vocabulary::from_entries(std::move(items), std::move(counts), noise_exponent);
}

}  // namespace styrep

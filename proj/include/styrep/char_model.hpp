#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "styrep/config.hpp"
#include "styrep/corpus.hpp"
#include "styrep/nn.hpp"
#include "styrep/train_util.hpp"
#include "styrep/vocab.hpp"

namespace styrep {

// Predicts each token from the average of the document's character vector
// and one of the token's character-bigram in-vectors, one pass per bigram.
struct CharModel {
    Vocabulary token_vocab;
    Vocabulary bigram_vocab;
    EmbeddingTable bigram_in;
    EmbeddingTable word_out;  // token vocabulary
    EmbeddingTable doc_char;
    std::vector<std::string> doc_ids;
    TrainConfig config;
    std::vector<double> epoch_objective;

    std::size_t doc_index(const std::string& id) const {
        auto it = doc_index_.find(id);
        return it == doc_index_.end() ? Vocabulary::npos : it->second;
    }
    void rebuild_doc_index() {
        doc_index_.clear();
        for (std::size_t i = 0; i < doc_ids.size(); ++i) doc_index_[doc_ids[i]] = i;
    }

private:
    std::unordered_map<std::string, std::size_t> doc_index_;
};

struct CharTrainStats {
    std::vector<PassTouches> passes;  // one record per (target, bigram) pass
};

CharModel train_char(const std::vector<Document>& corpus, const TrainConfig& config,
                     CharTrainStats* stats = nullptr);

// Frozen-table estimate of the character vector for an unseen document.
// Throws DataError when no (in-vocabulary token, known bigram) pass exists.
std::vector<float> infer_char(const CharModel& model, const Document& doc,
                              const TrainConfig& config);

}  // namespace styrep

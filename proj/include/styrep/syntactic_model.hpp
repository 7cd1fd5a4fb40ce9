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

// Predicts a token's neighbor POS bigrams from the average of the document's
// syntactic vector and the token's in-vector. The bigrams covering the token
// position itself are never targets; those are the paths the tagger
// constrains directly.
struct SyntacticModel {
    Vocabulary token_vocab;
    Vocabulary posbg_vocab;
    EmbeddingTable word_in;    // token vocabulary
    EmbeddingTable posbg_out;  // POS-bigram vocabulary
    EmbeddingTable doc_syn;
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

struct SyntacticTrainStats {
    std::vector<PassTouches> passes;  // one record per (target, pos-bigram) pass
};

SyntacticModel train_syntactic(const std::vector<Document>& corpus, const TrainConfig& config,
                               SyntacticTrainStats* stats = nullptr);

// Frozen-table estimate of the syntactic vector for an unseen document.
// Throws DataError when the document yields no usable neighbor bigrams.
std::vector<float> infer_syntactic(const SyntacticModel& model, const Document& doc,
                                   const TrainConfig& config);

}  // namespace styrep

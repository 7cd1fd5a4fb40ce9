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

// Single-layer network with two output heads over the token vocabulary.
// HEAD 1 predicts each token from the average of the document's topical and
// lexical vectors and the mean of the context in-vectors; its input gradient
// flows to the lexical vector and the context vectors only. HEAD 2 predicts
// the token from the topical vector alone and is the only head that updates
// it.
struct JointModel {
    Vocabulary vocab;
    EmbeddingTable word_in;
    EmbeddingTable word_out;
    EmbeddingTable doc_topical;
    EmbeddingTable doc_lexical;
    std::vector<std::string> doc_ids;
    TrainConfig config;
    std::vector<double> epoch_objective;  // mean HEAD-1 objective per epoch

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

struct JointTrainStats {
    std::vector<PassTouches> head1;  // one record per training target
    std::vector<PassTouches> head2;
};

struct JointVectors {
    std::vector<float> topical;
    std::vector<float> lexical;
};

// In-vocabulary context token indices around position b, up to window on each
// side, truncated at sentence boundaries; the target itself and OOV neighbors
// are skipped.
std::vector<std::size_t> context_of(const Sentence& sentence, std::size_t b, std::size_t window,
                                    const Vocabulary& vocab);

JointModel train_joint(const std::vector<Document>& corpus, const TrainConfig& config,
                       JointTrainStats* stats = nullptr);

// Estimates vectors for an unseen document against frozen shared tables.
// Throws DataError when the document has no in-vocabulary tokens.
JointVectors infer_joint(const JointModel& model, const Document& doc, const TrainConfig& config);

}  // namespace styrep

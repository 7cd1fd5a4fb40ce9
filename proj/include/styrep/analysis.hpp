#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "styrep/char_model.hpp"
#include "styrep/corpus.hpp"
#include "styrep/joint_model.hpp"
#include "styrep/syntactic_model.hpp"

namespace styrep {

enum class Modality { tp, lx, ch, sy };

// Nonempty subset of the four modalities; concatenation order is fixed
// tp, lx, ch, sy.
class ModalitySelection {
public:
    explicit ModalitySelection(std::set<Modality> modalities);
    // Parses a comma-separated list, e.g. "tp,lx".
    static ModalitySelection parse(const std::string& text);

    bool has(Modality m) const { return modalities_.count(m) != 0; }
    const std::set<Modality>& modalities() const { return modalities_; }
    std::string to_string() const;

private:
    std::set<Modality> modalities_;
};

// The trained models an evaluation draws from. tp/lx require joint, ch
// requires char, sy requires syntactic.
struct ModelSet {
    std::optional<JointModel> joint;
    std::optional<CharModel> chars;
    std::optional<SyntacticModel> syntactic;

    void require(const ModalitySelection& selection) const;  // throws DataError
};

struct VerificationCase {
    std::string id;
    std::vector<Document> known;
    std::vector<Document> unknown;
    std::optional<bool> truth;
};

// Concatenated per-modality vectors for a document: the trained rows when the
// document id is known to the model, otherwise frozen-table inference.
std::vector<float> doc_vector(const ModelSet& models, const Document& doc,
                              const ModalitySelection& selection);

double cosine_similarity(std::span<const float> a, std::span<const float> b);

// Cosine similarity between the two sides of a verification case. Each side's
// documents are merged into one document before embedding; with
// per_document_average the side vector is instead the mean of per-document
// vectors.
double verify(const VerificationCase& vcase, const ModelSet& models,
              const ModalitySelection& selection, bool per_document_average = false);

// Probability that a random positive outscores a random negative, ties
// counted half; equals the trapezoidal ROC area. Needs at least one score of
// each class.
double auroc(const std::vector<std::pair<double, bool>>& scores);

struct LogisticModel {
    // One weight row per decision: a single row for binary problems
    // (classes[1] vs classes[0]), one-vs-rest rows otherwise. Each row is
    // feature dim + 1 with the bias last.
    std::vector<std::vector<double>> weights;
    std::vector<std::string> classes;  // sorted
    double l2 = 0.0;

    std::string predict(std::span<const float> features) const;
};

struct LogisticConfig {
    double l2 = 1e-4;
    double learning_rate = 0.1;
    std::size_t epochs = 500;
};

// Deterministic full-batch gradient descent on L2-regularized log-loss,
// zero-initialized. The bias is not regularized.
LogisticModel fit_logistic(const std::vector<std::pair<std::vector<float>, std::string>>& data,
                           const LogisticConfig& config = {});

// Deterministic stratified fold assignment: per class, a seeded shuffle then
// round-robin dealing. Every document must be labeled and every class needs
// at least `folds` members.
std::vector<std::size_t> stratified_folds(const std::vector<Document>& corpus, std::size_t folds,
                                          std::uint64_t seed);

// Stratified k-fold cross validation of a logistic classifier over the
// documents' stylometric vectors; returns per-fold accuracies. The embedding
// models must already be trained (representation learning is unsupervised and
// happens once, upstream).
std::vector<double> cross_validate(const ModelSet& models, const std::vector<Document>& corpus,
                                   const ModalitySelection& selection, std::size_t folds,
                                   std::uint64_t seed, const LogisticConfig& config = {},
                                   bool normalize = false);

// JSONL cases file: {"id", "known": [doc-ids], "unknown": [doc-ids],
// "truth"?: bool}, ids resolved against the given corpus.
std::vector<VerificationCase> load_cases(const std::string& path,
                                         const std::vector<Document>& corpus);

}  // namespace styrep

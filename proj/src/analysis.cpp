#include "styrep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "styrep/errors.hpp"
#include "styrep/rng.hpp"

namespace styrep {

namespace {

const char* modality_name(Modality m) {
    switch (m) {
        case Modality::tp: return "tp";
        case Modality::lx: return "lx";
        case Modality::ch: return "ch";
        case Modality::sy: return "sy";
    }
    return "?";
}

void append(std::vector<float>& dst, std::span<const float> src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

ModalitySelection::ModalitySelection(std::set<Modality> modalities)
    : modalities_(std::move(modalities)) {
    if (modalities_.empty()) throw std::invalid_argument("modality selection must be nonempty");
}

ModalitySelection ModalitySelection::parse(const std::string& text) {
    std::set<Modality> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string part = text.substr(start, end - start);
        if (part == "tp")
            out.insert(Modality::tp);
        else if (part == "lx")
            out.insert(Modality::lx);
        else if (part == "ch")
            out.insert(Modality::ch);
        else if (part == "sy")
            out.insert(Modality::sy);
        else if (!part.empty())
            throw DataError("unknown modality '" + part + "' (expected tp, lx, ch, sy)");
        start = end + 1;
    }
    return ModalitySelection(std::move(out));
}

std::string ModalitySelection::to_string() const {
    std::string out;
    for (Modality m : modalities_) {
        if (!out.empty()) out += ",";
        out += modality_name(m);
    }
    return out;
}

void ModelSet::require(const ModalitySelection& selection) const {
    if ((selection.has(Modality::tp) || selection.has(Modality::lx)) && !joint)
        throw DataError("selection needs the joint model archive");
    if (selection.has(Modality::ch) && !chars)
        throw DataError("selection needs the character model archive");
    if (selection.has(Modality::sy) && !syntactic)
        throw DataError("selection needs the syntactic model archive");
}

std::vector<float> doc_vector(const ModelSet& models, const Document& doc,
                              const ModalitySelection& selection) {
    models.require(selection);
    std::vector<float> out;
    if (selection.has(Modality::tp) || selection.has(Modality::lx)) {
        const JointModel& m = *models.joint;
        const std::size_t idx = m.doc_index(doc.id);
        JointVectors jv;
        if (idx != Vocabulary::npos) {
            auto tp = m.doc_topical.row(idx);
            auto lx = m.doc_lexical.row(idx);
            jv.topical.assign(tp.begin(), tp.end());
            jv.lexical.assign(lx.begin(), lx.end());
        } else {
            jv = infer_joint(m, doc, m.config);
        }
        if (selection.has(Modality::tp)) append(out, jv.topical);
        if (selection.has(Modality::lx)) append(out, jv.lexical);
    }
    if (selection.has(Modality::ch)) {
        const CharModel& m = *models.chars;
        const std::size_t idx = m.doc_index(doc.id);
        if (idx != Vocabulary::npos)
            append(out, m.doc_char.row(idx));
        else
            append(out, infer_char(m, doc, m.config));
    }
    if (selection.has(Modality::sy)) {
        const SyntacticModel& m = *models.syntactic;
        const std::size_t idx = m.doc_index(doc.id);
        if (idx != Vocabulary::npos)
            append(out, m.doc_syn.row(idx));
        else
            append(out, infer_syntactic(m, doc, m.config));
    }
    return out;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += static_cast<double>(a[i]) * b[i];
        aa += static_cast<double>(a[i]) * a[i];
        bb += static_cast<double>(b[i]) * b[i];
    }
    if (aa == 0.0 || bb == 0.0) throw DataError("cosine: zero vector");
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

namespace {

// Sentence-concatenation merge; single-document sides pass through so a
// training document keeps its trained vectors.
std::vector<float> side_vector(const std::vector<Document>& side, const std::string& merged_id,
                               const ModelSet& models, const ModalitySelection& selection,
                               bool per_document_average) {
    if (side.empty()) throw DataError("verification case side is empty");
    if (side.size() == 1) return doc_vector(models, side.front(), selection);
    if (per_document_average) {
        std::vector<float> acc;
        for (const auto& doc : side) {
            const auto v = doc_vector(models, doc, selection);
            if (acc.empty()) acc.assign(v.size(), 0.0f);
            for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
        }
        for (float& x : acc) x /= static_cast<float>(side.size());
        return acc;
    }
    Document merged;
    merged.id = merged_id;
    for (const auto& doc : side)
        merged.sentences.insert(merged.sentences.end(), doc.sentences.begin(),
                                doc.sentences.end());
    return doc_vector(models, merged, selection);
}

}  // namespace

double verify(const VerificationCase& vcase, const ModelSet& models,
              const ModalitySelection& selection, bool per_document_average) {
    const auto a = side_vector(vcase.known, vcase.id + ":known", models, selection,
                               per_document_average);
    const auto b = side_vector(vcase.unknown, vcase.id + ":unknown", models, selection,
                               per_document_average);
    return cosine_similarity(a, b);
}

double auroc(const std::vector<std::pair<double, bool>>& scores) {
    std::size_t positives = 0, negatives = 0;
    for (const auto& [score, label] : scores) (label ? positives : negatives) += 1;
    if (positives == 0 || negatives == 0)
        throw DataError("auroc: need at least one positive and one negative");

    std::vector<std::pair<double, bool>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Mann-Whitney U via one sweep over tie groups; 0.5 credit inside a group.
    double u = 0.0;
    double negatives_below = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        std::size_t group_pos = 0, group_neg = 0;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) {
            (sorted[j].second ? group_pos : group_neg) += 1;
            ++j;
        }
        u += static_cast<double>(group_pos) * negatives_below;
        u += 0.5 * static_cast<double>(group_pos) * static_cast<double>(group_neg);
        negatives_below += static_cast<double>(group_neg);
        i = j;
    }
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

namespace {

double decision_score(std::span<const double> w, std::span<const float> x) {
    double s = w[x.size()];  // bias
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
    return s;
}

// One-vs-rest binary fit: returns the weight row for `positive_class`.
std::vector<double> fit_binary(
    const std::vector<std::pair<std::vector<float>, std::string>>& data,
    const std::string& positive_class, const LogisticConfig& config) {
    const std::size_t dim = data.front().first.size();
    std::vector<double> w(dim + 1, 0.0);
    std::vector<double> grad(dim + 1);
    const double inv_n = 1.0 / static_cast<double>(data.size());
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (const auto& [x, label] : data) {
            const double y = label == positive_class ? 1.0 : 0.0;
            const double p = sigmoid(decision_score(w, x));
            const double g = (p - y) * inv_n;
            for (std::size_t i = 0; i < dim; ++i) grad[i] += g * x[i];
            grad[dim] += g;
        }
        for (std::size_t i = 0; i < dim; ++i) grad[i] += config.l2 * w[i];
        for (std::size_t i = 0; i <= dim; ++i) w[i] -= config.learning_rate * grad[i];
    }
    return w;
}

}  // namespace

std::string LogisticModel::predict(std::span<const float> features) const {
    if (features.size() + 1 != weights.front().size())
        throw DataError("logistic predict: dimension mismatch");
    if (classes.size() == 2) {
        const double p = sigmoid(decision_score(weights.front(), features));
        return p >= 0.5 ? classes[1] : classes[0];
    }
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < weights.size(); ++c) {
        const double s = decision_score(weights[c], features);
        if (s > best_score) {
            best_score = s;
            best = c;
        }
    }
    return classes[best];
}

LogisticModel fit_logistic(const std::vector<std::pair<std::vector<float>, std::string>>& data,
                           const LogisticConfig& config) {
    if (data.empty()) throw DataError("fit_logistic: no data");
    const std::size_t dim = data.front().first.size();
    std::set<std::string> class_set;
    for (const auto& [x, label] : data) {
        if (x.size() != dim) throw DataError("fit_logistic: inconsistent feature dimensions");
        class_set.insert(label);
    }
    if (class_set.size() < 2) throw DataError("fit_logistic: need at least two classes");

    LogisticModel model;
    model.classes.assign(class_set.begin(), class_set.end());
    model.l2 = config.l2;
    if (model.classes.size() == 2) {
        model.weights.push_back(fit_binary(data, model.classes[1], config));
    } else {
        for (const auto& cls : model.classes)
            model.weights.push_back(fit_binary(data, cls, config));
    }
    return model;
}

std::vector<std::size_t> stratified_folds(const std::vector<Document>& corpus, std::size_t folds,
                                          std::uint64_t seed) {
    if (folds < 2) throw DataError("cross_validate: folds must be >= 2");
    for (const auto& doc : corpus)
        if (!doc.label) throw DataError("cross_validate: document '" + doc.id + "' has no label");

    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < corpus.size(); ++i) by_class[*corpus[i].label].push_back(i);
    std::vector<std::size_t> fold_of(corpus.size());
    Rng rng(mix_seed(seed, 31));
    for (auto& [label, members] : by_class) {
        if (members.size() < folds)
            throw DataError("cross_validate: class '" + label + "' has fewer members than folds");
        for (std::size_t i = members.size(); i > 1; --i)
            std::swap(members[i - 1], members[rng.next_below(i)]);
        for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % folds;
    }
    return fold_of;
}

std::vector<double> cross_validate(const ModelSet& models, const std::vector<Document>& corpus,
                                   const ModalitySelection& selection, std::size_t folds,
                                   std::uint64_t seed, const LogisticConfig& config,
                                   bool normalize) {
    const std::vector<std::size_t> fold_of = stratified_folds(corpus, folds, seed);

    std::vector<std::vector<float>> vectors(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        vectors[i] = doc_vector(models, corpus[i], selection);
        if (normalize) {
            double norm = 0.0;
            for (float v : vectors[i]) norm += static_cast<double>(v) * v;
            norm = std::sqrt(norm);
            if (norm > 0.0)
                for (float& v : vectors[i]) v = static_cast<float>(v / norm);
        }
    }

    std::vector<double> accuracies;
    for (std::size_t fold = 0; fold < folds; ++fold) {
        std::vector<std::pair<std::vector<float>, std::string>> train;
        std::vector<std::size_t> heldout;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (fold_of[i] == fold)
                heldout.push_back(i);
            else
                train.emplace_back(vectors[i], *corpus[i].label);
        }
        const LogisticModel clf = fit_logistic(train, config);
        std::size_t correct = 0;
        for (std::size_t i : heldout)
            if (clf.predict(vectors[i]) == *corpus[i].label) ++correct;
        accuracies.push_back(heldout.empty()
                                 ? 0.0
                                 : static_cast<double>(correct) / static_cast<double>(heldout.size()));
    }
    return accuracies;
}

std::vector<VerificationCase> load_cases(const std::string& path,
                                         const std::vector<Document>& corpus) {
    std::unordered_map<std::string, const Document*> by_id;
    for (const auto& doc : corpus) by_id[doc.id] = &doc;

    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open cases file: " + path);
    std::vector<VerificationCase> cases;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError("cases line " + std::to_string(line_no) + ": invalid JSON: " +
                            e.what());
        }
        VerificationCase c;
        try {
            c.id = j.at("id").get<std::string>();
            auto resolve = [&](const nlohmann::json& ids, std::vector<Document>& out) {
                for (const auto& jid : ids) {
                    const std::string id = jid.get<std::string>();
                    auto it = by_id.find(id);
                    if (it == by_id.end())
                        throw DataError("cases line " + std::to_string(line_no) +
                                        ": unknown document id '" + id + "'");
                    out.push_back(*it->second);
                }
            };
            resolve(j.at("known"), c.known);
            resolve(j.at("unknown"), c.unknown);
            if (j.contains("truth") && !j.at("truth").is_null())
                c.truth = j.at("truth").get<bool>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError("cases line " + std::to_string(line_no) + ": bad schema: " + e.what());
        }
        if (c.known.empty() || c.unknown.empty())
            throw DataError("cases line " + std::to_string(line_no) +
                            ": both sides must be nonempty");
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace styrep

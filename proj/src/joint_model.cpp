#include "styrep/joint_model.hpp"

#include <cmath>

#include "styrep/errors.hpp"

namespace styrep {

namespace {

constexpr std::uint64_t kWordInStream = 1;
constexpr std::uint64_t kTopicalStream = 2;
constexpr std::uint64_t kLexicalStream = 3;
constexpr std::uint64_t kTrainStream = 4;
constexpr std::uint64_t kInferStream = 5;

std::vector<std::size_t> token_indices(const Sentence& sentence, const Vocabulary& vocab) {
    std::vector<std::size_t> idx(sentence.tokens.size());
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
        idx[i] = vocab.index_of(sentence.tokens[i].surface);
    return idx;
}

std::size_t count_targets(const Document& doc, const Vocabulary& vocab) {
    std::size_t n = 0;
    for (const auto& sentence : doc.sentences)
        for (const auto& tok : sentence.tokens)
            if (vocab.contains(tok.surface)) ++n;
    return n;
}

// Keep probability for a subsampled token occurrence (word2vec formula).
double keep_probability(double corpus_freq, double threshold) {
    const double r = threshold / corpus_freq;
    return std::min(1.0, std::sqrt(r) + r);
}

// HEAD 1 input: element-wise mean of the topical vector, the lexical vector
// and (when the context is nonempty) the mean of the context in-vectors.
std::vector<float> joint_input(std::span<const float> topical, std::span<const float> lexical,
                               const EmbeddingTable& word_in,
                               const std::vector<std::size_t>& context) {
    const std::size_t dim = topical.size();
    std::vector<float> input(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        double acc = static_cast<double>(topical[d]) + static_cast<double>(lexical[d]);
        if (!context.empty()) {
            double ctx = 0.0;
            for (std::size_t c : context) ctx += word_in.row(c)[d];
            acc += ctx / static_cast<double>(context.size());
        }
        input[d] = static_cast<float>(acc / (context.empty() ? 2.0 : 3.0));
    }
    return input;
}

// One full pass of the training loop over `docs`, shared by training and
// frozen-table inference. In inference mode the shared tables are never
// written; only the per-document vectors move.
struct LoopTargets {
    EmbeddingTable* word_in;
    EmbeddingTable* word_out;
    std::span<float> topical;
    std::span<float> lexical;
    bool frozen;
};

void run_joint_pass(const Document& doc, const Vocabulary& vocab, const TrainConfig& config,
                    LoopTargets t, LrSchedule& sched, Rng& rng, double* objective,
                    std::size_t* objective_count, JointTrainStats* stats, bool allow_subsample) {
    const int k = config.negatives;
    for (const auto& sentence : doc.sentences) {
        const auto idx = token_indices(sentence, vocab);
        for (std::size_t b = 0; b < idx.size(); ++b) {
            const std::size_t target = idx[b];
            if (target == Vocabulary::npos) continue;
            if (allow_subsample && config.subsample_threshold) {
                const double f = static_cast<double>(vocab.count(target)) /
                                 static_cast<double>(vocab.total());
                if (rng.next_real() > keep_probability(f, *config.subsample_threshold)) continue;
            }
            const float lr = static_cast<float>(sched.next());

            std::vector<std::size_t> context;
            for (std::size_t j = b > config.window ? b - config.window : 0;
                 j < idx.size() && j <= b + config.window; ++j)
                if (j != b && idx[j] != Vocabulary::npos) context.push_back(idx[j]);

            // HEAD 1: predict the token from the joint input; errors flow to
            // the lexical vector and the context vectors, never the topical.
            const auto input = joint_input(t.topical, t.lexical, *t.word_in, context);
            TouchCounts tc1;
            const auto grad1 =
                ns_step<float>(input, target, *t.word_out, vocab.noise(), k, lr, rng, t.frozen,
                               stats ? &tc1 : nullptr, objective);
            if (objective_count) ++*objective_count;
            const float scale =
                lr / (config.average_context_gradient
                          ? static_cast<float>(context.size() + 1)
                          : 1.0f);
            add_scaled(t.lexical, grad1, scale);
            std::size_t input_rows = 1;
            if (!t.frozen) {
                for (std::size_t c : context) add_scaled(t.word_in->row(c), grad1, scale);
                input_rows += context.size();
            }
            if (stats)
                stats->head1.push_back({tc1.positive_out_rows, tc1.negative_out_rows, input_rows,
                                        context.size()});

            // HEAD 2: predict the token from the topical vector alone.
            TouchCounts tc2;
            const auto grad2 = ns_step<float>(t.topical, target, *t.word_out, vocab.noise(), k, lr,
                                              rng, t.frozen, stats ? &tc2 : nullptr);
            add_scaled(t.topical, grad2, lr);
            if (stats)
                stats->head2.push_back({tc2.positive_out_rows, tc2.negative_out_rows, 1, 0});
        }
    }
}

}  // namespace

std::vector<std::size_t> context_of(const Sentence& sentence, std::size_t b, std::size_t window,
                                    const Vocabulary& vocab) {
    const auto idx = token_indices(sentence, vocab);
    std::vector<std::size_t> context;
    for (std::size_t j = b > window ? b - window : 0; j < idx.size() && j <= b + window; ++j)
        if (j != b && idx[j] != Vocabulary::npos) context.push_back(idx[j]);
    return context;
}

JointModel train_joint(const std::vector<Document>& corpus, const TrainConfig& config,
                       JointTrainStats* stats) {
    if (corpus.empty()) throw DataError("train_joint: empty corpus");
    JointModel model;
    model.config = config;
    model.vocab = build_vocabulary(corpus, VocabUnit::token, config.min_count,
                                   config.noise_exponent);

    const std::size_t dim = config.dim;
    const std::size_t vocab_size = model.vocab.size();
    const std::size_t n_docs = corpus.size();
    model.word_in = init_table<float>(vocab_size, dim, mix_seed(config.seed, kWordInStream),
                                      TableKind::input);
    model.word_out = init_table<float>(vocab_size, dim, config.seed, TableKind::output);
    model.doc_topical = init_table<float>(n_docs, dim, mix_seed(config.seed, kTopicalStream),
                                          TableKind::input);
    model.doc_lexical = init_table<float>(n_docs, dim, mix_seed(config.seed, kLexicalStream),
                                          TableKind::input);
    model.doc_ids.reserve(n_docs);
    for (const auto& doc : corpus) model.doc_ids.push_back(doc.id);
    model.rebuild_doc_index();

    std::size_t per_epoch = 0;
    for (const auto& doc : corpus) per_epoch += count_targets(doc, model.vocab);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);
    Rng rng(mix_seed(config.seed, kTrainStream));

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double objective = 0.0;
        std::size_t n = 0;
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            LoopTargets t{&model.word_in, &model.word_out, model.doc_topical.row(d),
                          model.doc_lexical.row(d), false};
            run_joint_pass(corpus[d], model.vocab, config, t, sched, rng, &objective, &n, stats,
                           true);
        }
        model.epoch_objective.push_back(n ? objective / static_cast<double>(n) : 0.0);
    }
    return model;
}

JointVectors infer_joint(const JointModel& model, const Document& doc, const TrainConfig& config) {
    if (count_targets(doc, model.vocab) == 0)
        throw DataError("cannot infer: document '" + doc.id + "' has no in-vocabulary tokens");
    const std::size_t dim = model.word_in.dim();
    Rng rng(mix_seed(config.seed, kInferStream));
    std::vector<float> topical = init_vector(dim, rng);
    std::vector<float> lexical = init_vector(dim, rng);

    std::size_t per_epoch = count_targets(doc, model.vocab);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);

    // Shared tables are frozen; drop const only to satisfy the shared loop.
    auto& word_in = const_cast<EmbeddingTable&>(model.word_in);
    auto& word_out = const_cast<EmbeddingTable&>(model.word_out);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        LoopTargets t{&word_in, &word_out, topical, lexical, true};
        run_joint_pass(doc, model.vocab, config, t, sched, rng, nullptr, nullptr, nullptr, false);
    }
    return {std::move(topical), std::move(lexical)};
}

}  // namespace styrep

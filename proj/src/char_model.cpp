#include "styrep/char_model.hpp"

#include "styrep/errors.hpp"

namespace styrep {

namespace {

constexpr std::uint64_t kBigramInStream = 11;
constexpr std::uint64_t kDocCharStream = 12;
constexpr std::uint64_t kTrainStream = 13;
constexpr std::uint64_t kInferStream = 14;

// Number of (target, bigram) training passes in a document. Targets that are
// OOV are skipped entirely; bigrams missing from the bigram vocabulary do not
// train.
std::size_t count_passes(const Document& doc, const Vocabulary& tokens,
                         const Vocabulary& bigrams) {
    std::size_t n = 0;
    for (const auto& sentence : doc.sentences)
        for (const auto& tok : sentence.tokens) {
            if (!tokens.contains(tok.surface)) continue;
            for (const auto& bg : char_bigrams_of(tok.surface))
                if (bigrams.contains(bg)) ++n;
        }
    return n;
}

void run_char_pass(const Document& doc, const Vocabulary& tokens, const Vocabulary& bigrams,
                   const TrainConfig& config, EmbeddingTable& bigram_in, EmbeddingTable& word_out,
                   std::span<float> doc_vec, bool frozen, LrSchedule& sched, Rng& rng,
                   double* objective, std::size_t* objective_count, CharTrainStats* stats) {
    const std::size_t dim = doc_vec.size();
    std::vector<float> input(dim);
    for (const auto& sentence : doc.sentences) {
        for (const auto& tok : sentence.tokens) {
            const std::size_t target = tokens.index_of(tok.surface);
            if (target == Vocabulary::npos) continue;
            for (const auto& bg : char_bigrams_of(tok.surface)) {
                const std::size_t bg_idx = bigrams.index_of(bg);
                if (bg_idx == Vocabulary::npos) continue;
                const float lr = static_cast<float>(sched.next());
                auto bg_row = bigram_in.row(bg_idx);
                for (std::size_t d = 0; d < dim; ++d)
                    input[d] = 0.5f * (doc_vec[d] + bg_row[d]);
                TouchCounts tc;
                const auto grad = ns_step<float>(input, target, word_out, tokens.noise(),
                                                 config.negatives, lr, rng, frozen,
                                                 stats ? &tc : nullptr, objective);
                if (objective_count) ++*objective_count;
                const float scale =
                    lr / (config.average_context_gradient ? 2.0f : 1.0f);
                add_scaled(doc_vec, grad, scale);
                std::size_t input_rows = 1;
                if (!frozen) {
                    add_scaled(bg_row, grad, scale);
                    input_rows = 2;
                }
                if (stats)
                    stats->passes.push_back(
                        {tc.positive_out_rows, tc.negative_out_rows, input_rows, 0});
            }
        }
    }
}

}  // namespace

CharModel train_char(const std::vector<Document>& corpus, const TrainConfig& config,
                     CharTrainStats* stats) {
    if (corpus.empty()) throw DataError("train_char: empty corpus");
    CharModel model;
    model.config = config;
    model.token_vocab =
        build_vocabulary(corpus, VocabUnit::token, config.min_count, config.noise_exponent);
    model.bigram_vocab = build_vocabulary(corpus, VocabUnit::char_bigram, 1, config.noise_exponent);

    const std::size_t dim = config.dim;
    model.bigram_in = init_table<float>(model.bigram_vocab.size(), dim,
                                        mix_seed(config.seed, kBigramInStream), TableKind::input);
    model.word_out =
        init_table<float>(model.token_vocab.size(), dim, config.seed, TableKind::output);
    model.doc_char = init_table<float>(corpus.size(), dim, mix_seed(config.seed, kDocCharStream),
                                       TableKind::input);
    model.doc_ids.reserve(corpus.size());
    for (const auto& doc : corpus) model.doc_ids.push_back(doc.id);
    model.rebuild_doc_index();

    std::size_t per_epoch = 0;
    for (const auto& doc : corpus)
        per_epoch += count_passes(doc, model.token_vocab, model.bigram_vocab);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);
    Rng rng(mix_seed(config.seed, kTrainStream));

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double objective = 0.0;
        std::size_t n = 0;
        for (std::size_t d = 0; d < corpus.size(); ++d)
            run_char_pass(corpus[d], model.token_vocab, model.bigram_vocab, config,
                          model.bigram_in, model.word_out, model.doc_char.row(d), false, sched,
                          rng, &objective, &n, stats);
        model.epoch_objective.push_back(n ? objective / static_cast<double>(n) : 0.0);
    }
    return model;
}

std::vector<float> infer_char(const CharModel& model, const Document& doc,
                              const TrainConfig& config) {
    const std::size_t per_epoch = count_passes(doc, model.token_vocab, model.bigram_vocab);
    if (per_epoch == 0)
        throw DataError("cannot infer: document '" + doc.id +
                        "' has no trainable character bigrams");
    const std::size_t dim = model.bigram_in.dim();
    Rng rng(mix_seed(config.seed, kInferStream));
    std::vector<float> doc_vec = init_vector(dim, rng);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);
    auto& bigram_in = const_cast<EmbeddingTable&>(model.bigram_in);
    auto& word_out = const_cast<EmbeddingTable&>(model.word_out);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch)
        run_char_pass(doc, model.token_vocab, model.bigram_vocab, config, bigram_in, word_out,
                      doc_vec, true, sched, rng, nullptr, nullptr, nullptr);
    return doc_vec;
}

}  // namespace styrep

#include "styrep/syntactic_model.hpp"

#include "styrep/errors.hpp"

namespace styrep {

namespace {

constexpr std::uint64_t kWordInStream = 21;
constexpr std::uint64_t kDocSynStream = 22;
constexpr std::uint64_t kTrainStream = 23;
constexpr std::uint64_t kInferStream = 24;

std::size_t count_passes(const Document& doc, const Vocabulary& tokens, const Vocabulary& posbg,
                         std::size_t window) {
    std::size_t n = 0;
    for (const auto& sentence : doc.sentences)
        for (std::size_t b = 0; b < sentence.tokens.size(); ++b) {
            if (!tokens.contains(sentence.tokens[b].surface)) continue;
            for (const auto& pg : neighbor_pos_bigrams(sentence, b, window))
                if (posbg.contains(pg)) ++n;
        }
    return n;
}

void run_syn_pass(const Document& doc, const Vocabulary& tokens, const Vocabulary& posbg,
                  const TrainConfig& config, EmbeddingTable& word_in, EmbeddingTable& posbg_out,
                  std::span<float> doc_vec, bool frozen, LrSchedule& sched, Rng& rng,
                  double* objective, std::size_t* objective_count, SyntacticTrainStats* stats) {
    const std::size_t dim = doc_vec.size();
    std::vector<float> input(dim);
    for (const auto& sentence : doc.sentences) {
        for (std::size_t b = 0; b < sentence.tokens.size(); ++b) {
            const std::size_t tok_idx = tokens.index_of(sentence.tokens[b].surface);
            if (tok_idx == Vocabulary::npos) continue;
            for (const auto& pg : neighbor_pos_bigrams(sentence, b, config.window)) {
                const std::size_t pg_idx = posbg.index_of(pg);
                if (pg_idx == Vocabulary::npos) continue;
                const float lr = static_cast<float>(sched.next());
                auto tok_row = word_in.row(tok_idx);
                for (std::size_t d = 0; d < dim; ++d)
                    input[d] = 0.5f * (doc_vec[d] + tok_row[d]);
                TouchCounts tc;
                std::vector<float> grad;
                if (config.head == PredictionHead::negative_sampling)
                    grad = ns_step<float>(input, pg_idx, posbg_out, posbg.noise(),
                                          config.negatives, lr, rng, frozen,
                                          stats ? &tc : nullptr, objective);
                else
                    grad = softmax_step<float>(input, pg_idx, posbg_out, lr, frozen,
                                               stats ? &tc : nullptr, objective);
                if (objective_count) ++*objective_count;
                const float scale = lr / (config.average_context_gradient ? 2.0f : 1.0f);
                add_scaled(doc_vec, grad, scale);
                std::size_t input_rows = 1;
                if (!frozen) {
                    add_scaled(tok_row, grad, scale);
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

SyntacticModel train_syntactic(const std::vector<Document>& corpus, const TrainConfig& config,
                               SyntacticTrainStats* stats) {
    if (corpus.empty()) throw DataError("train_syntactic: empty corpus");
    SyntacticModel model;
    model.config = config;
    model.token_vocab =
        build_vocabulary(corpus, VocabUnit::token, config.min_count, config.noise_exponent);
    model.posbg_vocab = build_vocabulary(corpus, VocabUnit::pos_bigram, 1, config.noise_exponent);

    const std::size_t dim = config.dim;
    model.word_in = init_table<float>(model.token_vocab.size(), dim,
                                      mix_seed(config.seed, kWordInStream), TableKind::input);
    model.posbg_out =
        init_table<float>(model.posbg_vocab.size(), dim, config.seed, TableKind::output);
    model.doc_syn = init_table<float>(corpus.size(), dim, mix_seed(config.seed, kDocSynStream),
                                      TableKind::input);
    model.doc_ids.reserve(corpus.size());
    for (const auto& doc : corpus) model.doc_ids.push_back(doc.id);
    model.rebuild_doc_index();

    std::size_t per_epoch = 0;
    for (const auto& doc : corpus)
        per_epoch += count_passes(doc, model.token_vocab, model.posbg_vocab, config.window);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);
    Rng rng(mix_seed(config.seed, kTrainStream));

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double objective = 0.0;
        std::size_t n = 0;
        for (std::size_t d = 0; d < corpus.size(); ++d)
            run_syn_pass(corpus[d], model.token_vocab, model.posbg_vocab, config, model.word_in,
                         model.posbg_out, model.doc_syn.row(d), false, sched, rng, &objective, &n,
                         stats);
        model.epoch_objective.push_back(n ? objective / static_cast<double>(n) : 0.0);
    }
    return model;
}

std::vector<float> infer_syntactic(const SyntacticModel& model, const Document& doc,
                                   const TrainConfig& config) {
    const std::size_t per_epoch =
        count_passes(doc, model.token_vocab, model.posbg_vocab, config.window);
    if (per_epoch == 0)
        throw DataError("cannot infer: document '" + doc.id +
                        "' has no usable neighbor POS bigrams");
    const std::size_t dim = model.word_in.dim();
    Rng rng(mix_seed(config.seed, kInferStream));
    std::vector<float> doc_vec = init_vector(dim, rng);
    LrSchedule sched(config.learning_rate, config.min_learning_rate, per_epoch * config.epochs);
    auto& word_in = const_cast<EmbeddingTable&>(model.word_in);
    auto& posbg_out = const_cast<EmbeddingTable&>(model.posbg_out);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch)
        run_syn_pass(doc, model.token_vocab, model.posbg_vocab, config, word_in, posbg_out,
                     doc_vec, true, sched, rng, nullptr, nullptr, nullptr);
    return doc_vec;
}

}  // namespace styrep

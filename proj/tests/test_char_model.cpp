#include "doctest.h"
#include "styrep/char_model.hpp"
#include "styrep/errors.hpp"
#include "support/synthetic.hpp"

using namespace styrep;

namespace {

Document make_doc(const std::string& id, std::initializer_list<const char*> tokens) {
    Document d;
    d.id = id;
    Sentence s;
    for (const char* t : tokens) s.tokens.push_back({t, "X"});
    d.sentences.push_back(std::move(s));
    return d;
}

}  // namespace

TEST_CASE("train_char: one pass per in-vocabulary bigram occurrence") {
    // "fantastic" has 8 bigrams, "day" 2, "!!" 1: 11 passes per epoch.
    auto corpus = std::vector<Document>{make_doc("d1", {"fantastic", "day", "!!"})};
    TrainConfig cfg;
    cfg.dim = 6;
    cfg.epochs = 1;
    CharTrainStats stats;
    auto model = train_char(corpus, cfg, &stats);
    REQUIRE(stats.passes.size() == 11);
    for (const auto& p : stats.passes) {
        CHECK(p.positive_out_rows == 1);
        CHECK(p.negative_out_rows <= 5);
        // Each pass reaches exactly the document vector and one bigram row.
        CHECK(p.input_rows == 2);
    }
    CHECK(model.epoch_objective.size() == 1);

    cfg.epochs = 3;
    CharTrainStats stats3;
    train_char(corpus, cfg, &stats3);
    CHECK(stats3.passes.size() == 33);
}

TEST_CASE("train_char: a document of single-character tokens never moves") {
    // "a" and "b" produce no bigrams, so d2's vector must stay at its seeded
    // init no matter how long training runs.
    auto corpus = std::vector<Document>{make_doc("d1", {"fantastic", "day"}),
                                        make_doc("d2", {"a", "b", "a"})};
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 1;
    auto one = train_char(corpus, cfg);
    cfg.epochs = 6;
    auto six = train_char(corpus, cfg);
    CHECK(std::vector<float>(one.doc_char.row(1).begin(), one.doc_char.row(1).end()) ==
          std::vector<float>(six.doc_char.row(1).begin(), six.doc_char.row(1).end()));
    // The trained document did move.
    CHECK(std::vector<float>(one.doc_char.row(0).begin(), one.doc_char.row(0).end()) !=
          std::vector<float>(six.doc_char.row(0).begin(), six.doc_char.row(0).end()));
}

TEST_CASE("train_char: deterministic, empty corpus rejected") {
    auto corpus = synth::char_corpus({.authors = 3, .docs_per_author = 2, .tokens_per_doc = 120});
    TrainConfig cfg;
    cfg.dim = 10;
    cfg.epochs = 2;
    auto a = train_char(corpus, cfg);
    auto b = train_char(corpus, cfg);
    CHECK(a.bigram_in == b.bigram_in);
    CHECK(a.word_out == b.word_out);
    CHECK(a.doc_char == b.doc_char);
    CHECK_THROWS_AS(train_char({}, cfg), DataError);
}

TEST_CASE("train_char: objective improves on the synthetic corpus") {
    auto corpus = synth::char_corpus({.authors = 4, .docs_per_author = 2, .tokens_per_doc = 200});
    TrainConfig cfg;
    cfg.dim = 16;
    cfg.epochs = 5;
    auto model = train_char(corpus, cfg);
    REQUIRE(model.epoch_objective.size() == 5);
    CHECK(model.epoch_objective.back() > model.epoch_objective.front());
}

TEST_CASE("infer_char: deterministic, model untouched, degenerate doc rejected") {
    auto corpus = std::vector<Document>{make_doc("d1", {"fantastic", "day", "nice"}),
                                        make_doc("d2", {"nice", "day", "today"})};
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.epochs = 3;
    auto model = train_char(corpus, cfg);
    const auto before = model.bigram_in;

    auto unseen = make_doc("u1", {"day", "fantastic"});
    auto v1 = infer_char(model, unseen, cfg);
    auto v2 = infer_char(model, unseen, cfg);
    CHECK(v1 == v2);
    REQUIRE(v1.size() == 12);
    CHECK(model.bigram_in == before);

    // All tokens OOV: nothing to train on.
    auto oov = make_doc("u2", {"zzzzz"});
    CHECK_THROWS_WITH_AS(infer_char(model, oov, cfg), doctest::Contains("u2"), DataError);
}

#include <cmath>
#include <set>

#include "doctest.h"
#include "styrep/analysis.hpp"
#include "styrep/errors.hpp"
#include "styrep/rng.hpp"
#include "support/synthetic.hpp"
#include "support/tmpfile.hpp"

using namespace styrep;
using synth::TempFile;

namespace {

// O(P*N) pair counting, the oracle for the sweep implementation.
double auroc_bruteforce(const std::vector<std::pair<double, bool>>& scores) {
    double u = 0.0;
    std::size_t pos = 0, neg = 0;
    for (const auto& [sp, lp] : scores) {
        if (!lp) continue;
        ++pos;
        for (const auto& [sn, ln] : scores) {
            if (ln) continue;
            if (sp > sn)
                u += 1.0;
            else if (sp == sn)
                u += 0.5;
        }
    }
    for (const auto& [s, l] : scores) neg += !l;
    return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

Document tagged_doc(const std::string& id, const char* label,
                    std::initializer_list<std::pair<const char*, const char*>> tokens) {
    Document d;
    d.id = id;
    if (label) d.label = label;
    Sentence s;
    for (const auto& [w, p] : tokens) s.tokens.push_back({w, p});
    d.sentences.push_back(std::move(s));
    return d;
}

// Small corpus every model can train on.
std::vector<Document> eval_corpus() {
    std::vector<Document> corpus;
    const char* nouns[] = {"cat", "dog", "bird", "fish"};
    for (int a = 0; a < 2; ++a)
        for (int d = 0; d < 3; ++d) {
            Document doc;
            doc.id = "a" + std::to_string(a) + "_d" + std::to_string(d);
            doc.label = a == 0 ? "A" : "B";
            for (int s = 0; s < 4; ++s) {
                Sentence sent;
                sent.tokens.push_back({"the", "DT"});
                sent.tokens.push_back({a == 0 ? "quick" : "slow", "JJ"});
                sent.tokens.push_back({nouns[(a * 2 + s + d) % 4], "NN"});
                sent.tokens.push_back({"runs", "VBZ"});
                sent.tokens.push_back({".", "."});
                doc.sentences.push_back(std::move(sent));
            }
            corpus.push_back(std::move(doc));
        }
    return corpus;
}

ModelSet trained_models(const std::vector<Document>& corpus) {
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.window = 2;
    cfg.epochs = 3;
    ModelSet models;
    models.joint = train_joint(corpus, cfg);
    models.chars = train_char(corpus, cfg);
    TrainConfig syn = cfg;
    syn.window = 2;
    models.syntactic = train_syntactic(corpus, syn);
    return models;
}

}  // namespace

TEST_CASE("modality selection: parsing, ordering, validation") {
    auto sel = ModalitySelection::parse("lx,tp");
    CHECK(sel.has(Modality::tp));
    CHECK(sel.has(Modality::lx));
    CHECK_FALSE(sel.has(Modality::ch));
    CHECK(sel.to_string() == "tp,lx");  // fixed canonical order
    CHECK(ModalitySelection::parse("tp,lx,ch,sy").to_string() == "tp,lx,ch,sy");
    CHECK_THROWS_AS(ModalitySelection::parse("tp,bogus"), DataError);
    CHECK_THROWS_AS(ModalitySelection::parse(""), std::invalid_argument);
}

TEST_CASE("cosine similarity") {
    std::vector<float> a{1.0f, 0.0f}, b{1.0f, 1.0f}, c{0.0f, 2.0f}, z{0.0f, 0.0f};
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity(a, c) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine_similarity(a, b) == doctest::Approx(0.7071067811865475).epsilon(1e-12));
    std::vector<float> na{-1.0f, 0.0f};
    CHECK(cosine_similarity(a, na) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cosine_similarity(a, z), DataError);
    std::vector<float> wrong{1.0f, 2.0f, 3.0f};
    CHECK_THROWS_AS(cosine_similarity(a, wrong), std::invalid_argument);
}

TEST_CASE("auroc: worked examples") {
    CHECK(auroc({{0.9, true}, {0.8, true}, {0.7, false}, {0.6, true}, {0.5, false}}) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(auroc({{0.9, true}, {0.1, false}}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(auroc({{0.1, true}, {0.9, false}}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(auroc({{0.5, true}, {0.5, false}, {0.5, true}}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(auroc({{0.5, true}, {0.4, true}}), DataError);
    CHECK_THROWS_AS(auroc({}), DataError);
}

TEST_CASE("auroc: matches brute-force pair counting on tied random scores") {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::pair<double, bool>> scores;
        const std::size_t n = 2 + rng.next_below(40);
        for (std::size_t i = 0; i < n; ++i)
            // Coarse grid forces plenty of ties.
            scores.emplace_back(static_cast<double>(rng.next_below(6)) / 5.0,
                                rng.next_below(2) == 0);
        std::size_t pos = 0;
        for (const auto& [s, l] : scores) pos += l;
        if (pos == 0 || pos == n) continue;
        CHECK(std::abs(auroc(scores) - auroc_bruteforce(scores)) <= 1e-12);
    }
}

TEST_CASE("fit_logistic: first gradient step from zero weights is exact") {
    std::vector<std::pair<std::vector<float>, std::string>> data{
        {{1.0f, 2.0f}, "pos"}, {{-1.0f, 0.5f}, "neg"}, {{0.5f, -1.0f}, "neg"}};
    LogisticConfig cfg;
    cfg.epochs = 1;
    cfg.learning_rate = 0.1;
    cfg.l2 = 1e-4;  // irrelevant at w=0
    auto model = fit_logistic(data, cfg);
    REQUIRE(model.classes == std::vector<std::string>{"neg", "pos"});
    REQUIRE(model.weights.size() == 1);
    // At w=0 every p is 0.5, so grad = (1/N) sum (0.5 - y) x, and the single
    // step is w = -lr * grad.
    const double n = 3.0;
    const double g0 = (-0.5 * 1.0 + 0.5 * -1.0 + 0.5 * 0.5) / n;
    const double g1 = (-0.5 * 2.0 + 0.5 * 0.5 + 0.5 * -1.0) / n;
    const double gb = (-0.5 + 0.5 + 0.5) / n;
    CHECK(model.weights[0][0] == doctest::Approx(-0.1 * g0).epsilon(1e-12));
    CHECK(model.weights[0][1] == doctest::Approx(-0.1 * g1).epsilon(1e-12));
    CHECK(model.weights[0][2] == doctest::Approx(-0.1 * gb).epsilon(1e-12));
}

TEST_CASE("fit_logistic: separable data, regularization, multiclass") {
    std::vector<std::pair<std::vector<float>, std::string>> data;
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        const float x = static_cast<float>(rng.next_real()) * 0.4f;
        const float y = static_cast<float>(rng.next_real()) * 0.4f;
        data.push_back({{1.0f + x, y}, "r"});
        data.push_back({{-1.0f - x, y}, "l"});
        data.push_back({{x - 0.2f, 1.0f + y}, "u"});
    }
    auto model = fit_logistic(data);
    CHECK(model.weights.size() == 3);  // one-vs-rest
    std::size_t correct = 0;
    for (const auto& [x, label] : data) correct += model.predict(x) == label;
    CHECK(correct == data.size());

    // Binary subset: stronger L2 shrinks the feature weights.
    decltype(data) binary(data.begin(), data.begin() + 20);
    LogisticConfig weak, strong;
    weak.l2 = 1e-4;
    strong.l2 = 1.0;
    auto norm = [](const LogisticModel& m) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < m.weights[0].size(); ++i)
            s += m.weights[0][i] * m.weights[0][i];
        return s;
    };
    CHECK(norm(fit_logistic(binary, strong)) < norm(fit_logistic(binary, weak)));

    CHECK_THROWS_AS(fit_logistic({}), DataError);
    CHECK_THROWS_AS(fit_logistic({{{1.0f}, "only"}, {{2.0f}, "only"}}), DataError);
}

TEST_CASE("fit_logistic: deterministic") {
    std::vector<std::pair<std::vector<float>, std::string>> data{
        {{0.3f, 1.0f}, "a"}, {{-0.2f, 0.1f}, "b"}, {{0.6f, -0.4f}, "a"}, {{-0.9f, 0.2f}, "b"}};
    auto m1 = fit_logistic(data);
    auto m2 = fit_logistic(data);
    CHECK(m1.weights == m2.weights);
}

TEST_CASE("stratified_folds: per-class balance and determinism") {
    std::vector<Document> corpus;
    for (int i = 0; i < 8; ++i)
        corpus.push_back(tagged_doc("d" + std::to_string(i), i < 4 ? "A" : "B", {{"x", "X"}}));
    auto folds = stratified_folds(corpus, 2, 0);
    REQUIRE(folds.size() == 8);
    std::size_t a0 = 0, b0 = 0;
    for (int i = 0; i < 4; ++i) a0 += folds[i] == 0;
    for (int i = 4; i < 8; ++i) b0 += folds[i] == 0;
    CHECK(a0 == 2);  // each class dealt evenly across folds
    CHECK(b0 == 2);
    CHECK(stratified_folds(corpus, 2, 0) == folds);

    corpus.push_back(tagged_doc("d8", "C", {{"x", "X"}}));
    CHECK_THROWS_WITH_AS(stratified_folds(corpus, 2, 0), doctest::Contains("C"), DataError);
    corpus.pop_back();
    corpus.push_back(tagged_doc("d9", nullptr, {{"x", "X"}}));
    CHECK_THROWS_WITH_AS(stratified_folds(corpus, 2, 0), doctest::Contains("d9"), DataError);
    corpus.pop_back();
    CHECK_THROWS_AS(stratified_folds(corpus, 1, 0), DataError);
}

TEST_CASE("doc_vector: trained rows concatenated in fixed modality order") {
    auto corpus = eval_corpus();
    auto models = trained_models(corpus);
    const auto sel = ModalitySelection::parse("tp,lx,ch,sy");
    const auto v = doc_vector(models, corpus[0], sel);
    REQUIRE(v.size() == 4 * 8);

    const std::size_t j = models.joint->doc_index(corpus[0].id);
    const std::size_t c = models.chars->doc_index(corpus[0].id);
    const std::size_t s = models.syntactic->doc_index(corpus[0].id);
    for (std::size_t d = 0; d < 8; ++d) {
        CHECK(v[d] == models.joint->doc_topical.row(j)[d]);
        CHECK(v[8 + d] == models.joint->doc_lexical.row(j)[d]);
        CHECK(v[16 + d] == models.chars->doc_char.row(c)[d]);
        CHECK(v[24 + d] == models.syntactic->doc_syn.row(s)[d]);
    }

    // Subselection keeps the same order.
    const auto partial = doc_vector(models, corpus[0], ModalitySelection::parse("lx,sy"));
    REQUIRE(partial.size() == 16);
    CHECK(partial[0] == v[8]);
    CHECK(partial[8] == v[24]);

    ModelSet joint_only;
    joint_only.joint = models.joint;
    CHECK_THROWS_AS(doc_vector(joint_only, corpus[0], ModalitySelection::parse("ch")), DataError);
}

TEST_CASE("verify: single-document sides equal plain cosine; merging is deterministic") {
    auto corpus = eval_corpus();
    auto models = trained_models(corpus);
    const auto sel = ModalitySelection::parse("tp,lx");

    VerificationCase single{"c1", {corpus[0]}, {corpus[1]}, true};
    const double got = verify(single, models, sel);
    CHECK(got == doctest::Approx(cosine_similarity(doc_vector(models, corpus[0], sel),
                                                   doc_vector(models, corpus[1], sel)))
                     .epsilon(1e-12));

    VerificationCase multi{"c2", {corpus[0], corpus[1]}, {corpus[2]}, true};
    CHECK(verify(multi, models, sel) == verify(multi, models, sel));
    CHECK(verify(multi, models, sel) >= -1.0);
    CHECK(verify(multi, models, sel) <= 1.0);

    // Averaged sides: explicit mean of the two known vectors.
    const auto v0 = doc_vector(models, corpus[0], sel);
    const auto v1 = doc_vector(models, corpus[1], sel);
    std::vector<float> mean(v0.size());
    for (std::size_t i = 0; i < v0.size(); ++i) mean[i] = 0.5f * (v0[i] + v1[i]);
    CHECK(verify(multi, models, sel, true) ==
          doctest::Approx(cosine_similarity(mean, doc_vector(models, corpus[2], sel)))
              .epsilon(1e-12));

    VerificationCase empty{"c3", {}, {corpus[0]}, {}};
    CHECK_THROWS_AS(verify(empty, models, sel), DataError);
}

TEST_CASE("cross_validate: deterministic accuracies in [0,1]") {
    auto corpus = eval_corpus();
    auto models = trained_models(corpus);
    const auto sel = ModalitySelection::parse("tp,lx");
    auto acc = cross_validate(models, corpus, sel, 3, 0);
    REQUIRE(acc.size() == 3);
    for (double a : acc) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
    CHECK(cross_validate(models, corpus, sel, 3, 0) == acc);
}

TEST_CASE("load_cases: id resolution, optional truth, errors name the line") {
    auto corpus = eval_corpus();
    TempFile f(R"({"id":"c1","known":["a0_d0","a0_d1"],"unknown":["a1_d0"],"truth":false})" "\n"
               R"({"id":"c2","known":["a0_d2"],"unknown":["a0_d0"]})" "\n");
    auto cases = load_cases(f.path(), corpus);
    REQUIRE(cases.size() == 2);
    CHECK(cases[0].id == "c1");
    REQUIRE(cases[0].known.size() == 2);
    CHECK(cases[0].known[1].id == "a0_d1");
    CHECK(cases[0].truth == false);
    CHECK_FALSE(cases[1].truth.has_value());

    TempFile bad(R"({"id":"c1","known":["nope"],"unknown":["a1_d0"]})" "\n");
    CHECK_THROWS_WITH_AS(load_cases(bad.path(), corpus), doctest::Contains("line 1"), DataError);
    TempFile empty_side(R"({"id":"c1","known":[],"unknown":["a1_d0"]})" "\n");
    CHECK_THROWS_AS(load_cases(empty_side.path(), corpus), DataError);
}

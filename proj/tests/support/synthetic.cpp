#include "support/synthetic.hpp"

#include <cstdio>

#include "styrep/analysis.hpp"
#include "styrep/rng.hpp"

namespace synth {

using styrep::Document;
using styrep::Rng;
using styrep::Sentence;

namespace {

std::string doc_id(std::size_t author, std::size_t doc) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "a%02zu_d%zu", author, doc + 1);
    return buf;
}

std::string word(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
    return buf;
}

}  // namespace

std::string author_of(const std::string& id) { return id.substr(0, id.find('_')); }

std::vector<Document> topical_corpus(const TopicalOpts& opts) {
    Rng rng(opts.seed);
    std::vector<Document> corpus;
    for (std::size_t a = 0; a < opts.authors; ++a) {
        const std::string author_prefix = "p" + std::to_string(a) + "w";
        for (std::size_t d = 0; d < opts.docs_per_author; ++d) {
            Document doc;
            doc.id = doc_id(a, d);
            doc.label = a < opts.authors / 2 ? "A" : "B";
            Sentence sentence;
            for (std::size_t t = 0; t < opts.tokens_per_doc; ++t) {
                // Author-preferred words dominate; the rest split between a
                // population-level vocabulary (the labeled trait) and words
                // everyone shares.
                const double r = rng.next_real();
                std::string w;
                if (r < opts.preferred_rate)
                    w = word(author_prefix.c_str(), rng.next_below(opts.preferred_vocab));
                else if (r < opts.preferred_rate + (1.0 - opts.preferred_rate) / 2.0)
                    w = word(a < opts.authors / 2 ? "gA" : "gB", rng.next_below(100));
                else
                    w = word("s", rng.next_below(opts.shared_vocab));
                sentence.tokens.push_back({std::move(w), "X"});
                if (sentence.tokens.size() == 10) {
                    doc.sentences.push_back(std::move(sentence));
                    sentence = Sentence{};
                }
            }
            if (!sentence.tokens.empty()) doc.sentences.push_back(std::move(sentence));
            corpus.push_back(std::move(doc));
        }
    }
    return corpus;
}

std::vector<Document> char_corpus(const CharOpts& opts) {
    // Base word list with vowel endings so the repetition habit has material
    // to work on.
    static const char* kStems[] = {
        "nice",  "sure",   "like",  "love",   "home",  "time",   "care",  "file",  "note",
        "code",  "game",   "idea",  "tea",    "sea",   "data",   "area",  "sofa",  "hello",
        "photo", "video",  "radio", "piano",  "zero",  "echo",   "menu",  "blue",  "true",
        "value", "pure",   "fire",  "wire",   "tune",  "ride",   "side",  "wide",  "late",
        "gate",  "face",   "race",  "place",  "space", "smile",  "style", "table", "cable",
        "apple", "little", "maybe", "simple", "eagle", "purple", "title", "while", "whole",
        "those", "these",  "where", "there",  "here",  "more",   "store", "score", "shore",
        "before"};
    constexpr std::size_t kStemCount = sizeof(kStems) / sizeof(kStems[0]);

    Rng rng(opts.seed);
    std::vector<Document> corpus;
    for (std::size_t a = 0; a < opts.authors; ++a) {
        const bool repeats = a < opts.authors / 2;
        const std::size_t extra = 1 + a % 4;  // author-specific repetition amount
        // Author-preferred subset of the word list.
        std::vector<std::size_t> preferred;
        for (std::size_t i = 0; i < 20; ++i) preferred.push_back((a * 7 + i * 3) % kStemCount);
        for (std::size_t d = 0; d < opts.docs_per_author; ++d) {
            Document doc;
            doc.id = doc_id(a, d);
            doc.label = repeats ? "A" : "B";
            Sentence sentence;
            for (std::size_t t = 0; t < opts.tokens_per_doc; ++t) {
                std::string w = kStems[rng.next_real() < 0.7
                                           ? preferred[rng.next_below(preferred.size())]
                                           : rng.next_below(kStemCount)];
                const char last = w.back();
                if (repeats && (last == 'a' || last == 'e' || last == 'i' || last == 'o' ||
                                last == 'u'))
                    w.append(extra, last);
                sentence.tokens.push_back({std::move(w), "X"});
                if (sentence.tokens.size() == 10) {
                    doc.sentences.push_back(std::move(sentence));
                    sentence = Sentence{};
                }
            }
            if (!sentence.tokens.empty()) doc.sentences.push_back(std::move(sentence));
            corpus.push_back(std::move(doc));
        }
    }
    return corpus;
}

std::vector<Document> syntactic_corpus(const SyntacticOpts& opts) {
    static const char* kDets[] = {"the", "a", "this", "that"};
    static const char* kVerbs[] = {"seems", "looks", "feels", "sounds", "stays"};
    static const char* kAdverbs[] = {"very", "quite", "really", "rather"};

    Rng rng(opts.seed);
    std::vector<Document> corpus;
    for (std::size_t a = 0; a < opts.authors; ++a) {
        const bool pop_a = a < opts.authors / 2;
        // Author-specific rate of adjective-noun order.
        const double adj_first_rate =
            pop_a ? 0.75 + 0.05 * static_cast<double>(a % 5)
                  : 0.05 + 0.05 * static_cast<double>(a % 5);
        const std::string noun_prefix = "n" + std::to_string(a) + "x";
        const std::string adj_prefix = "j" + std::to_string(a) + "x";
        for (std::size_t d = 0; d < opts.docs_per_author; ++d) {
            Document doc;
            doc.id = doc_id(a, d);
            doc.label = pop_a ? "A" : "B";
            for (std::size_t s = 0; s < opts.sentences_per_doc; ++s) {
                // Mix author nouns/adjectives with shared ones.
                std::string noun = rng.next_real() < 0.5 ? word(noun_prefix.c_str(),
                                                                rng.next_below(30))
                                                         : word("noun", rng.next_below(40));
                std::string adj = rng.next_real() < 0.5 ? word(adj_prefix.c_str(),
                                                               rng.next_below(30))
                                                        : word("adj", rng.next_below(40));
                Sentence sentence;
                sentence.tokens.push_back({kDets[rng.next_below(4)], "DT"});
                if (rng.next_real() < adj_first_rate) {
                    sentence.tokens.push_back({std::move(adj), "JJ"});
                    sentence.tokens.push_back({std::move(noun), "NN"});
                } else {
                    sentence.tokens.push_back({std::move(noun), "NN"});
                    sentence.tokens.push_back({std::move(adj), "JJ"});
                }
                sentence.tokens.push_back({kVerbs[rng.next_below(5)], "VBZ"});
                sentence.tokens.push_back({kAdverbs[rng.next_below(4)], "RB"});
                sentence.tokens.push_back({word("adj", rng.next_below(40)), "JJ"});
                sentence.tokens.push_back({".", "."});
                doc.sentences.push_back(std::move(sentence));
            }
            corpus.push_back(std::move(doc));
        }
    }
    return corpus;
}

double pairwise_author_auroc(const std::vector<Document>& corpus,
                             const std::vector<std::vector<float>>& vectors) {
    std::vector<std::pair<double, bool>> scored;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            const bool same = author_of(corpus[i].id) == author_of(corpus[j].id);
            scored.emplace_back(styrep::cosine_similarity(vectors[i], vectors[j]), same);
        }
    return styrep::auroc(scored);
}

}  // namespace synth

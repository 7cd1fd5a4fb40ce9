#pragma once

#include <string>
#include <vector>

#include "styrep/corpus.hpp"

// Synthetic corpora with known author structure, used by the evaluation
// suites. Document ids look like "a03_d1"; the author is the part before the
// underscore and the label is the author's population ("A" or "B").
namespace synth {

struct TopicalOpts {
    std::size_t authors = 20;
    std::size_t docs_per_author = 4;
    std::size_t tokens_per_doc = 2000;
    std::size_t preferred_vocab = 200;  // distinct per author
    std::size_t shared_vocab = 400;
    double preferred_rate = 0.6;
    std::uint64_t seed = 42;
};

// Each author mixes a private preferred sub-vocabulary with a shared one; the
// non-preferred remainder is split between a population-level vocabulary
// (matching the document label) and fully shared words.
std::vector<styrep::Document> topical_corpus(const TopicalOpts& opts);

struct CharOpts {
    std::size_t authors = 10;
    std::size_t docs_per_author = 4;
    std::size_t tokens_per_doc = 700;
    std::uint64_t seed = 43;
};

// All authors share one word list; authors in population "A" systematically
// repeat word-final vowels, with an author-specific repetition count, and
// every author leans on a preferred subset of the words.
std::vector<styrep::Document> char_corpus(const CharOpts& opts);

struct SyntacticOpts {
    std::size_t authors = 10;
    std::size_t docs_per_author = 4;
    std::size_t sentences_per_doc = 80;
    std::uint64_t seed = 44;
};

// Population "A" prefers adjective-noun order, population "B" noun-adjective,
// with an author-specific mixture rate.
std::vector<styrep::Document> syntactic_corpus(const SyntacticOpts& opts);

std::string author_of(const std::string& doc_id);

// AUROC of same-author (positive) vs cross-author (negative) cosine pairs
// over per-document vectors listed in corpus order.
double pairwise_author_auroc(const std::vector<styrep::Document>& corpus,
                             const std::vector<std::vector<float>>& vectors);

}  // namespace synth

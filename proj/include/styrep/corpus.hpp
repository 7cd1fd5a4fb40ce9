#pragma once

#include <optional>
#include <string>
#include <vector>

namespace styrep {

struct Token {
    std::string surface;
    std::string pos;
};

struct Sentence {
    std::vector<Token> tokens;
};

// Minimum unit of text to be analyzed: ordered sentences of (surface, POS)
// pairs plus an optional class label used only by characterization.
struct Document {
    std::string id;
    std::optional<std::string> label;
    std::vector<Sentence> sentences;
};

enum class CorpusFormat { jsonl, plain };

// Reads a corpus file. jsonl: one document object per line,
// {"id": ..., "label"?: ..., "sentences": [[[surface, pos], ...], ...]}.
// plain: one sentence per line, tokens "surface_POS" space-separated, blank
// line between documents; ids are generated as doc_1, doc_2, ...
// Throws DataError naming the offending line on malformed input, duplicate
// ids, or empty sentences.
std::vector<Document> load_corpus(const std::string& path, CorpusFormat format);

// Consecutive character pairs of a token, in order. Tokens shorter than two
// characters yield no bigrams. Operates on bytes; multi-byte UTF-8 sequences
// are treated as opaque byte pairs.
std::vector<std::string> char_bigrams_of(const std::string& token);

// All consecutive POS tag pairs of a sentence, joined as "TAG1_TAG2".
std::vector<std::string> pos_bigrams_of(const Sentence& sentence);

inline std::string pos_bigram_key(const std::string& a, const std::string& b) {
    return a + "_" + b;
}

// The neighbor POS bigrams of the token at 0-based position b: for window w,
// the w bigrams ending at position b-1 on the left and the w bigrams starting
// at position b+1 on the right, truncated at sentence boundaries. No returned
// bigram covers position b itself.
std::vector<std::string> neighbor_pos_bigrams(const Sentence& sentence, std::size_t b,
                                              std::size_t window);

}  // namespace styrep

#include "styrep/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "styrep/errors.hpp"

namespace styrep {

namespace {

void check_document(const Document& doc, std::size_t line_no) {
    if (doc.id.empty())
        throw DataError("line " + std::to_string(line_no) + ": empty document id");
    for (const auto& sentence : doc.sentences) {
        if (sentence.tokens.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty sentence in document '" +
                            doc.id + "'");
        for (const auto& tok : sentence.tokens) {
            if (tok.surface.empty())
                throw DataError("line " + std::to_string(line_no) +
                                ": empty token surface in document '" + doc.id + "'");
            if (tok.pos.empty())
                throw DataError("line " + std::to_string(line_no) +
                                ": empty POS tag in document '" + doc.id + "'");
        }
    }
}

Document parse_jsonl_line(const std::string& line, std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("sentences"))
        throw DataError("line " + std::to_string(line_no) +
                        ": expected object with \"id\" and \"sentences\"");
    Document doc;
    try {
        doc.id = j.at("id").get<std::string>();
        if (j.contains("label") && !j.at("label").is_null())
            doc.label = j.at("label").get<std::string>();
        for (const auto& jsent : j.at("sentences")) {
            Sentence s;
            for (const auto& jtok : jsent) {
                if (!jtok.is_array() || jtok.size() != 2)
                    throw DataError("line " + std::to_string(line_no) +
                                    ": token must be a [surface, pos] pair");
                s.tokens.push_back({jtok.at(0).get<std::string>(), jtok.at(1).get<std::string>()});
            }
            doc.sentences.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("line " + std::to_string(line_no) + ": bad document schema: " + e.what());
    }
    return doc;
}

std::vector<Document> load_jsonl(std::istream& in) {
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Document doc = parse_jsonl_line(line, line_no);
        check_document(doc, line_no);
        docs.push_back(std::move(doc));
    }
    return docs;
}

// "surface_POS" with the POS split off at the last underscore; a token with
// no underscore gets the placeholder tag "X".
Token parse_plain_token(const std::string& word) {
    auto pos = word.rfind('_');
    if (pos == std::string::npos || pos == 0 || pos + 1 == word.size())
        return {word, "X"};
    return {word.substr(0, pos), word.substr(pos + 1)};
}

std::vector<Document> load_plain(std::istream& in) {
    std::vector<Document> docs;
    Document current;
    std::string line;
    std::size_t line_no = 0;
    auto flush = [&] {
        if (!current.sentences.empty()) {
            current.id = "doc_" + std::to_string(docs.size() + 1);
            check_document(current, line_no);
            docs.push_back(std::move(current));
            current = Document{};
        }
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush();
            continue;
        }
        Sentence s;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) s.tokens.push_back(parse_plain_token(line.substr(i, j - i)));
            i = j;
        }
        if (!s.tokens.empty()) current.sentences.push_back(std::move(s));
    }
    flush();
    return docs;
}

}  // namespace

std::vector<Document> load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);
    std::vector<Document> docs =
        format == CorpusFormat::jsonl ? load_jsonl(in) : load_plain(in);
    std::unordered_set<std::string> seen;
    for (const auto& doc : docs)
        if (!seen.insert(doc.id).second)
            throw DataError("duplicate document id: " + doc.id);
    return docs;
}

std::vector<std::string> char_bigrams_of(const std::string& token) {
    std::vector<std::string> out;
    if (token.size() < 2) return out;
    out.reserve(token.size() - 1);
    for (std::size_t i = 0; i + 1 < token.size(); ++i) out.push_back(token.substr(i, 2));
    return out;
}

std::vector<std::string> pos_bigrams_of(const Sentence& sentence) {
    std::vector<std::string> out;
    const auto& toks = sentence.tokens;
    if (toks.size() < 2) return out;
    out.reserve(toks.size() - 1);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        out.push_back(pos_bigram_key(toks[i].pos, toks[i + 1].pos));
    return out;
}

std::vector<std::string> neighbor_pos_bigrams(const Sentence& sentence, std::size_t b,
                                              std::size_t window) {
    std::vector<std::string> out;
    const auto& toks = sentence.tokens;
    if (toks.size() < 2 || b >= toks.size()) return out;
    const std::ptrdiff_t last_start = static_cast<std::ptrdiff_t>(toks.size()) - 2;
    const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(b);
    const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(window);
    // Left bigrams end at b-1, right bigrams start at b+1; the bigrams
    // covering b itself are never predicted.
    for (std::ptrdiff_t p = pos - w - 1; p <= pos - 2; ++p) {
        if (p < 0 || p > last_start) continue;
        out.push_back(pos_bigram_key(toks[p].pos, toks[p + 1].pos));
    }
    for (std::ptrdiff_t p = pos + 1; p <= pos + w; ++p) {
        if (p < 0 || p > last_start) continue;
        out.push_back(pos_bigram_key(toks[p].pos, toks[p + 1].pos));
    }
    return out;
}

}  // namespace styrep

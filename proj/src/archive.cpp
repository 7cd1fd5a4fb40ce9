#include "styrep/archive.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "styrep/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "archive payload is little-endian; big-endian hosts need byte swaps");

namespace styrep {

namespace {

constexpr const char* kFormat = "styrep-model-v1";

std::uint64_t fnv1a(const char* data, std::size_t size) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

class Writer {
public:
    void kv(const std::string& key, const std::string& value) {
        header_ += key;
        header_ += '=';
        header_ += value;
        header_ += '\n';
    }
    void kv(const std::string& key, std::uint64_t value) { kv(key, std::to_string(value)); }
    void kv(const std::string& key, double value) { kv(key, format_double(value)); }

    void config(const TrainConfig& c) {
        kv("dim", static_cast<std::uint64_t>(c.dim));
        kv("window", static_cast<std::uint64_t>(c.window));
        kv("negatives", static_cast<std::uint64_t>(c.negatives));
        kv("learning_rate", c.learning_rate);
        kv("min_learning_rate", c.min_learning_rate);
        kv("epochs", static_cast<std::uint64_t>(c.epochs));
        kv("seed", c.seed);
        kv("min_count", c.min_count);
        kv("noise_exponent", c.noise_exponent);
        kv("head", c.head == PredictionHead::full_softmax ? "softmax" : "ns");
        kv("average_context_gradient",
           static_cast<std::uint64_t>(c.average_context_gradient ? 1 : 0));
        if (c.subsample_threshold) kv("subsample_threshold", *c.subsample_threshold);
    }

    void vocab(const std::string& name, const Vocabulary& v) {
        kv("vocab." + name + ".size", static_cast<std::uint64_t>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            kv("vocab." + name + ".item." + std::to_string(i), v.item(i));
            kv("vocab." + name + ".count." + std::to_string(i), v.count(i));
        }
    }

    void docs(const std::vector<std::string>& ids) {
        kv("docs", static_cast<std::uint64_t>(ids.size()));
        for (std::size_t i = 0; i < ids.size(); ++i) kv("doc." + std::to_string(i), ids[i]);
    }

    void matrix(const std::string& name, const EmbeddingTable& t) {
        kv("matrix." + name + ".rows", static_cast<std::uint64_t>(t.rows()));
        kv("matrix." + name + ".cols", static_cast<std::uint64_t>(t.dim()));
        payload_.append(reinterpret_cast<const char*>(t.values().data()),
                        t.values().size() * sizeof(float));
    }

    void write(const std::string& path) {
        kv("payload_bytes", static_cast<std::uint64_t>(payload_.size()));
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a(payload_.data(), payload_.size())));
        kv("payload_checksum", hex);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write archive: " + path);
        out << header_ << '\n' << payload_;
        if (!out) throw DataError("failed writing archive: " + path);
    }

private:
    std::string header_;
    std::string payload_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open archive: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) break;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw DataError("archive " + path + ": malformed header line: " + line);
            kv_.emplace(line.substr(0, eq), line.substr(eq + 1));
        }
        const std::uint64_t bytes = get_u64("payload_bytes");
        payload_.resize(bytes);
        in.read(payload_.data(), static_cast<std::streamsize>(bytes));
        if (static_cast<std::uint64_t>(in.gcount()) != bytes)
            throw DataError("archive " + path + ": truncated payload");
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a(payload_.data(), payload_.size())));
        if (get("payload_checksum") != hex)
            throw DataError("archive " + path + ": payload checksum mismatch");
    }

    const std::string& get(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw DataError("archive " + path_ + ": missing key " + key);
        return it->second;
    }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::uint64_t get_u64(const std::string& key) const {
        const std::string& s = get(key);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw DataError("archive " + path_ + ": bad integer for " + key);
        return v;
    }

    double get_double(const std::string& key) const {
        const std::string& s = get(key);
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw DataError("archive " + path_ + ": bad number for " + key);
        return v;
    }

    TrainConfig config() const {
        TrainConfig c;
        c.dim = get_u64("dim");
        c.window = get_u64("window");
        c.negatives = static_cast<int>(get_u64("negatives"));
        c.learning_rate = get_double("learning_rate");
        c.min_learning_rate = get_double("min_learning_rate");
        c.epochs = get_u64("epochs");
        c.seed = get_u64("seed");
        c.min_count = get_u64("min_count");
        c.noise_exponent = get_double("noise_exponent");
        c.head = get("head") == "softmax" ? PredictionHead::full_softmax
                                          : PredictionHead::negative_sampling;
        c.average_context_gradient = get_u64("average_context_gradient") != 0;
        if (has("subsample_threshold")) c.subsample_threshold = get_double("subsample_threshold");
        return c;
    }

    Vocabulary vocab(const std::string& name, double noise_exponent) const {
        const std::uint64_t size = get_u64("vocab." + name + ".size");
        std::vector<std::string> items;
        std::vector<std::uint64_t> counts;
        items.reserve(size);
        counts.reserve(size);
        for (std::uint64_t i = 0; i < size; ++i) {
            items.push_back(get("vocab." + name + ".item." + std::to_string(i)));
            counts.push_back(get_u64("vocab." + name + ".count." + std::to_string(i)));
        }
        return Vocabulary::from_entries(std::move(items), std::move(counts), noise_exponent);
    }

    std::vector<std::string> docs() const {
        const std::uint64_t n = get_u64("docs");
        std::vector<std::string> ids;
        ids.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) ids.push_back(get("doc." + std::to_string(i)));
        return ids;
    }

    // Matrices are consumed in the same order they were written.
    EmbeddingTable matrix(const std::string& name) {
        const std::uint64_t rows = get_u64("matrix." + name + ".rows");
        const std::uint64_t cols = get_u64("matrix." + name + ".cols");
        const std::size_t bytes = rows * cols * sizeof(float);
        if (offset_ + bytes > payload_.size())
            throw DataError("archive " + path_ + ": payload too small for matrix " + name);
        EmbeddingTable t(rows, cols);
        std::memcpy(t.values().data(), payload_.data() + offset_, bytes);
        offset_ += bytes;
        return t;
    }

private:
    std::string path_;
    std::unordered_map<std::string, std::string> kv_;
    std::string payload_;
    std::size_t offset_ = 0;
};

}  // namespace

void save_joint(const JointModel& model, const std::string& path) {
    Writer w;
    w.kv("format", kFormat);
    w.kv("modality", "joint");
    w.config(model.config);
    w.vocab("token", model.vocab);
    w.docs(model.doc_ids);
    w.matrix("word_in", model.word_in);
    w.matrix("word_out", model.word_out);
    w.matrix("doc_topical", model.doc_topical);
    w.matrix("doc_lexical", model.doc_lexical);
    w.write(path);
}

void save_char(const CharModel& model, const std::string& path) {
    Writer w;
    w.kv("format", kFormat);
    w.kv("modality", "char");
    w.config(model.config);
    w.vocab("token", model.token_vocab);
    w.vocab("bigram", model.bigram_vocab);
    w.docs(model.doc_ids);
    w.matrix("bigram_in", model.bigram_in);
    w.matrix("word_out", model.word_out);
    w.matrix("doc_char", model.doc_char);
    w.write(path);
}

void save_syntactic(const SyntacticModel& model, const std::string& path) {
    Writer w;
    w.kv("format", kFormat);
    w.kv("modality", "syntactic");
    w.config(model.config);
    w.vocab("token", model.token_vocab);
    w.vocab("posbg", model.posbg_vocab);
    w.docs(model.doc_ids);
    w.matrix("word_in", model.word_in);
    w.matrix("posbg_out", model.posbg_out);
    w.matrix("doc_syn", model.doc_syn);
    w.write(path);
}

namespace {

void check_format(const Reader& r, const std::string& path, const std::string& modality) {
    if (r.get("format") != kFormat)
        throw DataError("archive " + path + ": unsupported format " + r.get("format"));
    if (r.get("modality") != modality)
        throw DataError("archive " + path + ": expected modality " + modality + ", found " +
                        r.get("modality"));
}

}  // namespace

JointModel load_joint(const std::string& path) {
    Reader r(path);
    check_format(r, path, "joint");
    JointModel m;
    m.config = r.config();
    m.vocab = r.vocab("token", m.config.noise_exponent);
    m.doc_ids = r.docs();
    m.word_in = r.matrix("word_in");
    m.word_out = r.matrix("word_out");
    m.doc_topical = r.matrix("doc_topical");
    m.doc_lexical = r.matrix("doc_lexical");
    m.rebuild_doc_index();
    return m;
}

CharModel load_char(const std::string& path) {
    Reader r(path);
    check_format(r, path, "char");
    CharModel m;
    m.config = r.config();
    m.token_vocab = r.vocab("token", m.config.noise_exponent);
    m.bigram_vocab = r.vocab("bigram", m.config.noise_exponent);
    m.doc_ids = r.docs();
    m.bigram_in = r.matrix("bigram_in");
    m.word_out = r.matrix("word_out");
    m.doc_char = r.matrix("doc_char");
    m.rebuild_doc_index();
    return m;
}

SyntacticModel load_syntactic(const std::string& path) {
    Reader r(path);
    check_format(r, path, "syntactic");
    SyntacticModel m;
    m.config = r.config();
    m.token_vocab = r.vocab("token", m.config.noise_exponent);
    m.posbg_vocab = r.vocab("posbg", m.config.noise_exponent);
    m.doc_ids = r.docs();
    m.word_in = r.matrix("word_in");
    m.posbg_out = r.matrix("posbg_out");
    m.doc_syn = r.matrix("doc_syn");
    m.rebuild_doc_index();
    return m;
}

void load_into(ModelSet& models, const std::string& path) {
    const std::string modality = Reader(path).get("modality");
    if (modality == "joint")
        models.joint = load_joint(path);
    else if (modality == "char")
        models.chars = load_char(path);
    else if (modality == "syntactic")
        models.syntactic = load_syntactic(path);
    else
        throw DataError("archive " + path + ": unknown modality " + modality);
}

}  // namespace styrep

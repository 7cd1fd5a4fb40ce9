#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "styrep/analysis.hpp"
#include "styrep/archive.hpp"
#include "styrep/corpus.hpp"
#include "styrep/errors.hpp"

namespace {

using namespace styrep;

struct CommonOpts {
    std::string corpus_path;
    std::string format = "jsonl";
    std::string model_prefix;
    TrainConfig config;
};

CorpusFormat parse_format(const std::string& f) {
    if (f == "jsonl") return CorpusFormat::jsonl;
    if (f == "plain") return CorpusFormat::plain;
    throw CLI::ValidationError("--format", "expected jsonl or plain");
}

std::string archive_path(const std::string& prefix, const std::string& modality) {
    return prefix + "." + modality + ".styv";
}

ModelSet load_models(const std::string& prefix, const ModalitySelection& selection) {
    ModelSet models;
    if (selection.has(Modality::tp) || selection.has(Modality::lx))
        models.joint = load_joint(archive_path(prefix, "joint"));
    if (selection.has(Modality::ch)) models.chars = load_char(archive_path(prefix, "char"));
    if (selection.has(Modality::sy))
        models.syntactic = load_syntactic(archive_path(prefix, "syntactic"));
    return models;
}

void add_config_flags(CLI::App* cmd, CommonOpts& opts, std::string* head,
                      bool with_training = true) {
    cmd->add_option("--corpus", opts.corpus_path, "Corpus file (JSON Lines or plain)")
        ->required();
    cmd->add_option("--format", opts.format, "Corpus format: jsonl or plain")
        ->check(CLI::IsMember({"jsonl", "plain"}));
    cmd->add_option("--model", opts.model_prefix, "Model archive path prefix")->required();
    cmd->add_option("--seed", opts.config.seed, "Random seed (default 0)");
    if (with_training) {
        cmd->add_option("--dim", opts.config.dim, "Vector dimensionality (default 400)");
        cmd->add_option("--window", opts.config.window,
                        "Context window (default 4; syntactic default 2)");
        cmd->add_option("--negatives", opts.config.negatives, "Negative samples k (default 5)");
        cmd->add_option("--lr", opts.config.learning_rate, "Starting learning rate");
        cmd->add_option("--epochs", opts.config.epochs, "Training epochs (default 10)");
        cmd->add_option("--min-count", opts.config.min_count,
                        "Minimum token count (default 1)");
        cmd->add_option("--noise-exponent", opts.config.noise_exponent,
                        "Noise distribution exponent (default 0.75)");
        cmd->add_option("--subsample", opts.config.subsample_threshold,
                        "Frequent-token subsampling threshold (off by default)");
        cmd->add_flag("--avg-context-grad", opts.config.average_context_gradient,
                      "Divide the distributed input gradient by contributor count");
        cmd->add_option("--head", *head, "Syntactic prediction head: ns or softmax")
            ->check(CLI::IsMember({"ns", "softmax"}));
    }
    cmd->set_config("--config", "", "Read options from a key=value file");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw DataError("cannot write output file: " + path);
    return file;
}

int cmd_train(const CommonOpts& opts, const std::string& modality, const std::string& head,
              bool window_given) {
    auto corpus = load_corpus(opts.corpus_path, parse_format(opts.format));
    TrainConfig cfg = opts.config;
    cfg.head = head == "softmax" ? PredictionHead::full_softmax
                                 : PredictionHead::negative_sampling;

    const bool all = modality == "all";
    if (all || modality == "joint") {
        JointModel m = train_joint(corpus, cfg);
        const std::string path = archive_path(opts.model_prefix, "joint");
        save_joint(m, path);
        std::cout << "trained joint: docs=" << m.doc_ids.size() << " vocab=" << m.vocab.size()
                  << " objective=" << m.epoch_objective.back() << " -> " << path << "\n";
    }
    if (all || modality == "char") {
        CharModel m = train_char(corpus, cfg);
        const std::string path = archive_path(opts.model_prefix, "char");
        save_char(m, path);
        std::cout << "trained char: docs=" << m.doc_ids.size()
                  << " vocab=" << m.token_vocab.size() << " bigrams=" << m.bigram_vocab.size()
                  << " objective=" << m.epoch_objective.back() << " -> " << path << "\n";
    }
    if (all || modality == "syntactic") {
        TrainConfig syn_cfg = cfg;
        if (!window_given) syn_cfg.window = 2;
        SyntacticModel m = train_syntactic(corpus, syn_cfg);
        const std::string path = archive_path(opts.model_prefix, "syntactic");
        save_syntactic(m, path);
        std::cout << "trained syntactic: docs=" << m.doc_ids.size()
                  << " vocab=" << m.token_vocab.size() << " posbg=" << m.posbg_vocab.size()
                  << " objective=" << m.epoch_objective.back() << " -> " << path << "\n";
    }
    return 0;
}

int cmd_infer(const CommonOpts& opts, const std::string& selection_text,
              const std::string& output_path) {
    const auto selection = ModalitySelection::parse(selection_text);
    const ModelSet models = load_models(opts.model_prefix, selection);
    const auto corpus = load_corpus(opts.corpus_path, parse_format(opts.format));
    std::ofstream file;
    std::ostream& out = open_output(file, output_path);
    for (const auto& doc : corpus) {
        const auto v = doc_vector(models, doc, selection);
        out << doc.id;
        for (float x : v) out << "," << x;
        out << "\n";
    }
    return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& cases_path,
               const std::string& selection_text, const std::string& output_path,
               bool per_doc_average) {
    const auto selection = ModalitySelection::parse(selection_text);
    const ModelSet models = load_models(opts.model_prefix, selection);
    const auto corpus = load_corpus(opts.corpus_path, parse_format(opts.format));
    const auto cases = load_cases(cases_path, corpus);

    std::ofstream file;
    std::ostream& out = open_output(file, output_path);
    out << "case,similarity,truth\n";
    std::vector<std::pair<double, bool>> scored;
    bool all_labeled = !cases.empty();
    for (const auto& c : cases) {
        const double sim = verify(c, models, selection, per_doc_average);
        out << c.id << "," << sim << ",";
        if (c.truth) {
            out << (*c.truth ? "true" : "false");
            scored.emplace_back(sim, *c.truth);
        } else {
            all_labeled = false;
        }
        out << "\n";
    }
    if (all_labeled) std::cout << "AUROC=" << auroc(scored) << "\n";
    return 0;
}

int cmd_characterize(const CommonOpts& opts, const std::string& selection_text,
                     std::size_t folds, bool normalize) {
    const auto selection = ModalitySelection::parse(selection_text);
    const ModelSet models = load_models(opts.model_prefix, selection);
    const auto corpus = load_corpus(opts.corpus_path, parse_format(opts.format));
    const auto accuracies = cross_validate(models, corpus, selection, folds, opts.config.seed,
                                           LogisticConfig{}, normalize);
    double mean = 0.0;
    for (std::size_t i = 0; i < accuracies.size(); ++i) {
        std::cout << "fold " << i + 1 << ": accuracy=" << accuracies[i] << "\n";
        mean += accuracies[i];
    }
    mean /= static_cast<double>(accuracies.size());
    std::cout << "mean accuracy=" << mean << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stylometric representation learning for authorship analysis"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string modality = "all";
    std::string head = "ns";
    std::string selection = "tp,lx,ch,sy";
    std::string cases_path;
    std::string output_path;
    std::size_t folds = 10;
    bool per_doc_average = false;
    bool normalize = false;

    auto* train = app.add_subcommand("train", "Learn stylometric models from a corpus");
    add_config_flags(train, opts, &head);
    train->add_option("--modality", modality, "joint, char, syntactic, or all")
        ->check(CLI::IsMember({"joint", "char", "syntactic", "all"}));

    auto* infer = app.add_subcommand("infer", "Emit document vectors as CSV");
    add_config_flags(infer, opts, nullptr, false);
    infer->add_option("--selection", selection, "Modalities, e.g. tp,lx");
    infer->add_option("--output", output_path, "Output CSV path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Score verification cases");
    add_config_flags(verify, opts, nullptr, false);
    verify->add_option("--cases", cases_path, "Verification cases JSONL")->required();
    verify->add_option("--selection", selection, "Modalities, e.g. tp,lx");
    verify->add_option("--output", output_path, "Output CSV path (default stdout)");
    verify->add_flag("--per-doc-average", per_doc_average,
                     "Average per-document vectors instead of merging a side");

    auto* charac = app.add_subcommand("characterize", "Cross-validated label prediction");
    add_config_flags(charac, opts, nullptr, false);
    charac->add_option("--selection", selection, "Modalities, e.g. tp,lx");
    charac->add_option("--folds", folds, "Cross-validation folds (default 10)");
    charac->add_flag("--normalize", normalize, "Unit-normalize feature vectors");

    try {
        app.parse(argc, argv);
        if (train->parsed())
            return cmd_train(opts, modality, head, train->count("--window") > 0);
        if (infer->parsed()) return cmd_infer(opts, selection, output_path);
        if (verify->parsed())
            return cmd_verify(opts, cases_path, selection, output_path, per_doc_average);
        if (charac->parsed()) return cmd_characterize(opts, selection, folds, normalize);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const styrep::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

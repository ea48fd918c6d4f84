#include "themeforge/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "themeforge/analysis.hpp"
#include "themeforge/errors.hpp"
#include "themeforge/matrix.hpp"
#include "themeforge/rng.hpp"
#include "themeforge/serialize.hpp"

namespace themeforge {

namespace {

uint64_t parse_seed_string(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0')
        throw ConfigError(what + " is not a valid 64-bit seed: \"" + text + "\"");
    return v;
}

std::vector<std::string> parse_model_list(const std::string& text) {
    std::vector<std::string> models;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) models.push_back(item);
    return models;
}

void apply_models(RunConfig& cfg, const std::vector<std::string>& models) {
    std::set<std::string> wanted;
    for (const auto& m : models) {
        if (m != "lda" && m != "nmf")
            throw ConfigError("unknown model \"" + m + "\" (expected lda and/or nmf)");
        wanted.insert(m);
    }
    if (wanted.empty()) throw ConfigError("at least one model must be selected");
    cfg.models.clear();
    if (wanted.count("lda")) cfg.models.push_back("lda");
    if (wanted.count("nmf")) cfg.models.push_back("nmf");
}

void validate_run_config(RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ConfigError("an input path is required (--input)");
    if (cfg.format != "json" && cfg.format != "csv")
        throw ConfigError("format must be json or csv");
    if (cfg.mapping.id_field.empty() || cfg.mapping.text_field.empty())
        throw ConfigError("id and text field names must be non-empty");
    if (cfg.nmf_input != "tfidf" && cfg.nmf_input != "counts")
        throw ConfigError("nmf input must be tfidf or counts");
    if (cfg.pipeline.min_token_len < 1) throw ConfigError("min token length must be >= 1");
    if (cfg.pipeline.min_df < 1) throw ConfigError("min_df must be >= 1");
    if (!(cfg.pipeline.max_df_ratio > 0.0) || cfg.pipeline.max_df_ratio > 1.0)
        throw ConfigError("max_df_ratio must be in (0, 1]");
    if (cfg.coherence.window < 1) throw ConfigError("window must be >= 1");
    if (cfg.coherence.top_n < 2) throw ConfigError("top_n must be >= 2");
    if (cfg.table_words < 1) throw ConfigError("table_words must be >= 1");
    if (cfg.out_dir.empty()) throw ConfigError("an output directory is required");
    validate(cfg.lda);
    validate(cfg.nmf);
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"themeforge run"};
    app.allow_extras(false);

    std::string input, format, id_field, text_field, models_str, nmf_input, nmf_init,
        stopwords, out_dir, config_path;
    std::string seed_str;
    int k = 0, sweeps = 0, burn_in = -1, nmf_max_iter = 0, window = 0, top_n = 0, min_df = 0,
        min_token_len = 0, table_words = 0;
    double alpha = 0, beta = 0, nmf_tol = 0, max_df_ratio = 0;

    app.add_option("--input", input, "input corpus file");
    app.add_option("--format", format, "input format: json|csv");
    app.add_option("--id-field", id_field, "record field holding the document id");
    app.add_option("--text-field", text_field, "record field holding the narrative text");
    app.add_option("--models", models_str, "comma-separated subset of lda,nmf");
    app.add_option("--k", k, "number of topics (shared by both models)");
    app.add_option("--seed", seed_str, "master 64-bit seed");
    app.add_option("--alpha", alpha, "LDA doc-topic prior");
    app.add_option("--beta", beta, "LDA topic-word prior");
    app.add_option("--sweeps", sweeps, "LDA Gibbs sweeps");
    app.add_option("--burn-in", burn_in, "LDA sweeps before estimation");
    app.add_option("--nmf-max-iter", nmf_max_iter, "NMF update sweeps");
    app.add_option("--nmf-tol", nmf_tol, "NMF relative stopping threshold");
    app.add_option("--nmf-input", nmf_input, "NMF input matrix: tfidf|counts");
    app.add_option("--nmf-init", nmf_init, "NMF initialization: random|nndsvd");
    app.add_option("--window", window, "coherence sliding-window width");
    app.add_option("--top-n", top_n, "words per topic for coherence and overlap");
    app.add_option("--stopwords", stopwords, "stopword override file (one term per line)");
    app.add_option("--min-df", min_df, "minimum document frequency");
    app.add_option("--max-df-ratio", max_df_ratio, "maximum document-frequency ratio");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_path, "JSON config file (flags take precedence)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;

    // config file values sit between the defaults and the flags
    nlohmann::json file;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        try {
            in >> file;
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("malformed config file " + config_path + ": " + e.what());
        }
        if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
    }

    auto file_str = [&](const char* key, std::string& dst) {
        if (file.contains(key)) dst = file.at(key).get<std::string>();
    };
    auto file_int = [&](const char* key, int& dst) {
        if (file.contains(key)) dst = file.at(key).get<int>();
    };
    auto file_double = [&](const char* key, double& dst) {
        if (file.contains(key)) dst = file.at(key).get<double>();
    };

    try {
        file_str("input", cfg.input_path);
        file_str("format", cfg.format);
        file_str("id_field", cfg.mapping.id_field);
        file_str("text_field", cfg.mapping.text_field);
        file_str("stopwords", cfg.stopwords_path);
        file_str("nmf_input", cfg.nmf_input);
        file_str("nmf_init", cfg.nmf.init);
        file_str("out", cfg.out_dir);
        file_int("k", cfg.lda.k);
        file_int("sweeps", cfg.lda.sweeps);
        file_int("burn_in", cfg.lda.burn_in);
        file_int("nmf_max_iter", cfg.nmf.max_iter);
        file_int("window", cfg.coherence.window);
        file_int("top_n", cfg.coherence.top_n);
        file_int("min_df", cfg.pipeline.min_df);
        file_int("min_token_len", cfg.pipeline.min_token_len);
        file_int("table_words", cfg.table_words);
        file_double("alpha", cfg.lda.alpha);
        file_double("beta", cfg.lda.beta);
        file_double("nmf_tol", cfg.nmf.tol);
        file_double("nmf_eps", cfg.nmf.eps);
        file_double("max_df_ratio", cfg.pipeline.max_df_ratio);
        if (file.contains("dump_matrices")) cfg.dump_matrices = file.at("dump_matrices").get<bool>();
        if (file.contains("models")) {
            if (file.at("models").is_array())
                apply_models(cfg, file.at("models").get<std::vector<std::string>>());
            else
                apply_models(cfg, parse_model_list(file.at("models").get<std::string>()));
        }
        if (file.contains("seed")) {
            if (file.at("seed").is_number())
                cfg.seed = file.at("seed").get<uint64_t>();
            else
                cfg.seed = parse_seed_string(file.at("seed").get<std::string>(), "config seed");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value in config file: " + std::string(e.what()));
    }

    bool seed_given = app.count("--seed") > 0 || file.contains("seed");

    if (app.count("--input")) cfg.input_path = input;
    if (app.count("--format")) cfg.format = format;
    if (app.count("--id-field")) cfg.mapping.id_field = id_field;
    if (app.count("--text-field")) cfg.mapping.text_field = text_field;
    if (app.count("--models")) apply_models(cfg, parse_model_list(models_str));
    if (app.count("--k")) cfg.lda.k = k;
    if (app.count("--seed")) cfg.seed = parse_seed_string(seed_str, "--seed");
    if (app.count("--alpha")) cfg.lda.alpha = alpha;
    if (app.count("--beta")) cfg.lda.beta = beta;
    if (app.count("--sweeps")) cfg.lda.sweeps = sweeps;
    if (app.count("--burn-in")) cfg.lda.burn_in = burn_in;
    if (app.count("--nmf-max-iter")) cfg.nmf.max_iter = nmf_max_iter;
    if (app.count("--nmf-tol")) cfg.nmf.tol = nmf_tol;
    if (app.count("--nmf-input")) cfg.nmf_input = nmf_input;
    if (app.count("--nmf-init")) cfg.nmf.init = nmf_init;
    if (app.count("--window")) cfg.coherence.window = window;
    if (app.count("--top-n")) cfg.coherence.top_n = top_n;
    if (app.count("--stopwords")) cfg.stopwords_path = stopwords;
    if (app.count("--min-df")) cfg.pipeline.min_df = min_df;
    if (app.count("--max-df-ratio")) cfg.pipeline.max_df_ratio = max_df_ratio;
    if (app.count("--out")) cfg.out_dir = out_dir;

    if (!seed_given) {
        if (const char* env = std::getenv("THEMEFORGE_SEED"))
            cfg.seed = parse_seed_string(env, "THEMEFORGE_SEED");
    }

    cfg.nmf.k = cfg.lda.k;
    if (cfg.out_dir.empty()) cfg.out_dir = "themeforge_out";
    validate_run_config(cfg);
    return cfg;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failure: " + path.string());
}

template <typename Fn>
void write_artifact(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    fn(out);
    out.flush();
    if (!out) throw IoError("write failure: " + path.string());
}

struct TrainedModel {
    std::string name;
    DenseMatrix topic_word;
    DenseMatrix doc_topic;
};

} // namespace

int run_pipeline(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path out_dir(cfg.out_dir);
    std::string stage = "setup";

    try {
        fs::create_directories(out_dir);
        fs::remove(out_dir / "FAILED");
        write_artifact(out_dir / "run_config.json",
                       [&](std::ostream& o) { write_run_config_json(o, cfg); });

        stage = "ingest";
        int skipped = 0;
        std::vector<Document> docs = cfg.format == "csv"
                                         ? load_csv(cfg.input_path, cfg.mapping, &skipped)
                                         : load_json(cfg.input_path, cfg.mapping, &skipped);
        std::printf("themeforge: loaded %zu documents from %s (%d records skipped)\n",
                    docs.size(), cfg.input_path.c_str(), skipped);

        stage = "preprocess";
        PipelineConfig pipeline = cfg.pipeline;
        pipeline.stopwords = cfg.stopwords_path.empty() ? builtin_stopwords()
                                                        : load_stopword_file(cfg.stopwords_path);
        preprocess_documents(docs, pipeline);
        Vocabulary vocab = build_vocabulary(docs, pipeline);
        EncodedCorpus corpus = encode_corpus(docs, vocab);
        if (corpus.docs.empty())
            throw EmptyCorpusError("every document was emptied by preprocessing");
        if (corpus.dropped_docs > 0)
            std::printf("themeforge: dropped %d empty documents after encoding\n",
                        corpus.dropped_docs);
        std::printf("themeforge: %zu documents, %d terms, %zu tokens\n", corpus.docs.size(),
                    vocab.size(), corpus.total_tokens());
        write_artifact(out_dir / "vocab.json",
                       [&](std::ostream& o) { write_vocab_json(o, vocab); });
        const uint64_t corpus_hash = corpus_fingerprint(corpus);

        stage = "matrix";
        SparseCounts counts = build_count_matrix(corpus);
        TfidfWeights tfidf = build_tfidf(counts);
        if (cfg.dump_matrices) {
            write_artifact(out_dir / "counts.txt",
                           [&](std::ostream& o) { dump_counts(counts, corpus, o); });
            write_artifact(out_dir / "tfidf.txt",
                           [&](std::ostream& o) { dump_tfidf(tfidf, corpus, o); });
        }

        std::vector<TrainedModel> trained;
        const bool want_lda =
            std::find(cfg.models.begin(), cfg.models.end(), "lda") != cfg.models.end();
        const bool want_nmf =
            std::find(cfg.models.begin(), cfg.models.end(), "nmf") != cfg.models.end();

        if (want_lda) {
            stage = "lda";
            LdaConfig lda_cfg = cfg.lda;
            lda_cfg.seed = derive_stream(cfg.seed, "lda");
            LdaResult result = lda_train(corpus, lda_cfg);
            std::printf("themeforge: lda trained, final log-likelihood %.6f\n",
                        result.log_likelihood_trace.back());
            write_artifact(out_dir / "lda_result.json",
                           [&](std::ostream& o) { write_lda_result_json(o, result); });
            trained.push_back({"lda", std::move(result.phi), std::move(result.theta)});
        }

        if (want_nmf) {
            stage = "nmf";
            NmfConfig nmf_cfg = cfg.nmf;
            nmf_cfg.seed = derive_stream(cfg.seed, "nmf");
            CsrMatrix v = cfg.nmf_input == "counts" ? to_csr(counts) : to_csr(tfidf);
            NmfResult result = nmf_train(v, nmf_cfg);
            NormalizedFactors factors = normalize_factors(result);
            std::printf("themeforge: nmf ran %d sweeps, final objective %.6g\n",
                        result.iterations_run, result.objective_trace.back());
            write_artifact(out_dir / "nmf_result.json",
                           [&](std::ostream& o) { write_nmf_result_json(o, result, factors); });
            trained.push_back(
                {"nmf", std::move(factors.topic_word), std::move(factors.doc_topic)});
        }

        stage = "coherence";
        std::vector<CoherenceReport> reports;
        for (const auto& model : trained) {
            CoherenceReport report =
                cv_model(model.topic_word, vocab, corpus, cfg.coherence, model.name);
            std::printf("themeforge: %s mean C_v = %.6f\n", model.name.c_str(), report.mean_cv);
            write_artifact(out_dir / (model.name + "_coherence.json"),
                           [&](std::ostream& o) { write_coherence_json(o, report); });
            reports.push_back(std::move(report));
        }

        stage = "analysis";
        std::vector<ModelArtifacts> artifacts;
        for (size_t i = 0; i < trained.size(); ++i) {
            const auto& model = trained[i];
            ModelArtifacts art;
            art.model_name = model.name;
            art.k = model.topic_word.rows;
            art.corpus_hash = corpus_hash;
            art.summaries = top_words(model.topic_word, vocab, cfg.coherence.top_n);
            art.coherence = reports[i];
            art.overlap = topic_overlap_matrix(art.summaries, cfg.coherence.top_n);
            art.dominant_hist = dominant_topic_histogram(model.doc_topic);
            art.cross_topic = cross_topic_word_frequency(art.summaries);
            write_artifact(out_dir / (model.name + "_topics.json"), [&](std::ostream& o) {
                write_topics_json(o, model.name, art.k, art.summaries);
            });
            write_artifact(out_dir / (model.name + "_wordcloud.json"), [&](std::ostream& o) {
                write_wordcloud_json(o, model.name, wordcloud_export(art.summaries));
            });
            artifacts.push_back(std::move(art));
        }

        std::vector<const ModelArtifacts*> refs;
        for (const auto& art : artifacts) refs.push_back(&art);
        write_artifact(out_dir / "overlap.json", [&](std::ostream& o) {
            write_overlap_json(o, refs, cfg.coherence.top_n);
        });

        std::string report_md;
        if (artifacts.size() == 2) {
            ComparisonReport comparison = build_comparison_report(artifacts[0], artifacts[1]);
            std::printf("themeforge: higher-coherence model: %s\n",
                        comparison.higher_coherence.c_str());
            report_md = render_comparison_report(comparison, cfg.table_words);
        } else {
            report_md = render_single_model_report(artifacts[0], cfg.table_words);
        }
        write_text_file(out_dir / "report.md", report_md);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "themeforge: error at stage %s: %s\n", stage.c_str(), e.what());
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        std::ofstream marker(out_dir / "FAILED", std::ios::binary);
        if (marker) marker << "stage: " << stage << "\nerror: " << e.what() << "\n";
        return 1;
    }
}

} // namespace themeforge

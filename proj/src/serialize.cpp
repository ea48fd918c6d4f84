#include "themeforge/serialize.hpp"

#include "themeforge/json_writer.hpp"
#include "themeforge/rng.hpp"

namespace themeforge {

namespace {

void write_matrix_rows(JsonWriter& w, const DenseMatrix& m) {
    w.begin_array();
    for (int r = 0; r < m.rows; ++r) {
        w.begin_array();
        for (int c = 0; c < m.cols; ++c) w.value(m.at(r, c));
        w.end_array();
    }
    w.end_array();
}

void write_double_array(JsonWriter& w, const std::vector<double>& v) {
    w.begin_array();
    for (double x : v) w.value(x);
    w.end_array();
}

} // namespace

void write_run_config_json(std::ostream& out, const RunConfig& cfg) {
    JsonWriter w(out);
    w.begin_object();
    w.key("input").value(cfg.input_path);
    w.key("format").value(cfg.format);
    w.key("id_field").value(cfg.mapping.id_field);
    w.key("text_field").value(cfg.mapping.text_field);
    w.key("models").begin_array();
    for (const auto& m : cfg.models) w.value(m);
    w.end_array();
    w.key("seed").value(cfg.seed);
    w.key("out").value(cfg.out_dir);

    w.key("pipeline").begin_object();
    w.key("min_token_len").value(cfg.pipeline.min_token_len);
    w.key("min_df").value(cfg.pipeline.min_df);
    w.key("max_df_ratio").value(cfg.pipeline.max_df_ratio);
    w.key("stopwords").value(cfg.stopwords_path.empty() ? "builtin" : cfg.stopwords_path);
    w.end_object();

    w.key("lda").begin_object();
    w.key("k").value(cfg.lda.k);
    w.key("alpha").value(cfg.lda.alpha);
    w.key("beta").value(cfg.lda.beta);
    w.key("sweeps").value(cfg.lda.sweeps);
    w.key("burn_in").value(cfg.lda.burn_in);
    w.key("seed").value(derive_stream(cfg.seed, "lda"));
    w.end_object();

    w.key("nmf").begin_object();
    w.key("k").value(cfg.nmf.k);
    w.key("max_iter").value(cfg.nmf.max_iter);
    w.key("tol").value(cfg.nmf.tol);
    w.key("init").value(cfg.nmf.init);
    w.key("eps").value(cfg.nmf.eps);
    w.key("input").value(cfg.nmf_input);
    w.key("seed").value(derive_stream(cfg.seed, "nmf"));
    w.end_object();

    w.key("coherence").begin_object();
    w.key("window").value(cfg.coherence.window);
    w.key("top_n").value(cfg.coherence.top_n);
    w.end_object();

    w.key("table_words").value(cfg.table_words);
    w.key("dump_matrices").value(cfg.dump_matrices);
    w.end_object();
    out << '\n';
}

void write_vocab_json(std::ostream& out, const Vocabulary& vocab) {
    JsonWriter w(out);
    w.begin_object();
    w.key("num_terms").value(vocab.size());
    w.key("terms").begin_array();
    for (const auto& t : vocab.terms) w.value(t);
    w.end_array();
    w.key("doc_freq").begin_array();
    for (int f : vocab.doc_freq) w.value(f);
    w.end_array();
    w.end_object();
    out << '\n';
}

void write_lda_result_json(std::ostream& out, const LdaResult& result) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model").value("lda");
    w.key("k").value(result.config.k);
    w.key("alpha").value(result.config.alpha);
    w.key("beta").value(result.config.beta);
    w.key("sweeps").value(result.config.sweeps);
    w.key("burn_in").value(result.config.burn_in);
    w.key("seed").value(result.config.seed);
    w.key("phi");
    write_matrix_rows(w, result.phi);
    w.key("theta");
    write_matrix_rows(w, result.theta);
    w.key("log_likelihood_trace");
    write_double_array(w, result.log_likelihood_trace);
    w.end_object();
    out << '\n';
}

void write_nmf_result_json(std::ostream& out, const NmfResult& result,
                           const NormalizedFactors& factors) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model").value("nmf");
    w.key("k").value(result.config.k);
    w.key("seed").value(result.config.seed);
    w.key("init").value(result.config.init);
    w.key("iterations_run").value(result.iterations_run);
    w.key("objective_trace");
    write_double_array(w, result.objective_trace);
    w.key("topic_word");
    write_matrix_rows(w, factors.topic_word);
    w.key("doc_topic");
    write_matrix_rows(w, factors.doc_topic);
    w.key("w");
    write_matrix_rows(w, result.w);
    w.key("h");
    write_matrix_rows(w, result.h);
    w.key("uniform_topic_rows").begin_array();
    for (int r : factors.uniform_topic_rows) w.value(r);
    w.end_array();
    w.key("uniform_doc_rows").begin_array();
    for (int r : factors.uniform_doc_rows) w.value(r);
    w.end_array();
    w.end_object();
    out << '\n';
}

void write_coherence_json(std::ostream& out, const CoherenceReport& report) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model").value(report.model_name);
    w.key("window").value(report.window);
    w.key("top_n").value(report.top_n);
    w.key("per_topic").begin_array();
    for (const auto& score : report.per_topic) {
        if (score)
            w.value(*score);
        else
            w.null();
    }
    w.end_array();
    w.key("mean_cv").value(report.mean_cv);
    w.key("dropped_words").begin_array();
    for (const auto& word : report.dropped_words) w.value(word);
    w.end_array();
    w.end_object();
    out << '\n';
}

void write_topics_json(std::ostream& out, const std::string& model_name, int k,
                       const std::vector<TopicSummary>& summaries) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model").value(model_name);
    w.key("k").value(k);
    w.key("topics").begin_array();
    for (const auto& summary : summaries) {
        w.begin_object();
        w.key("id").value(summary.topic_id);
        w.key("top_words").begin_array();
        for (const auto& wt : summary.top) {
            w.begin_object();
            w.key("term").value(wt.term);
            w.key("weight").value(wt.weight);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    out << '\n';
}

void write_wordcloud_json(std::ostream& out, const std::string& model_name,
                          const std::vector<WordcloudTopic>& topics) {
    JsonWriter w(out);
    w.begin_object();
    w.key("model").value(model_name);
    w.key("topics").begin_array();
    for (const auto& topic : topics) {
        w.begin_object();
        w.key("topic_id").value(topic.topic_id);
        w.key("words").begin_array();
        for (const auto& wt : topic.words) {
            w.begin_object();
            w.key("term").value(wt.term);
            w.key("weight").value(wt.weight);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    out << '\n';
}

void write_overlap_json(std::ostream& out,
                        const std::vector<const ModelArtifacts*>& models, int top_n) {
    JsonWriter w(out);
    w.begin_object();
    w.key("method").value("jaccard");
    w.key("top_n").value(top_n);
    w.key("models").begin_object();
    for (const auto* model : models) {
        w.key(model->model_name);
        write_matrix_rows(w, model->overlap);
    }
    w.end_object();
    w.end_object();
    out << '\n';
}

} // namespace themeforge

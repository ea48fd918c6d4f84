#include "themeforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "themeforge/errors.hpp"

namespace themeforge {

std::vector<TopicSummary> top_words(const DenseMatrix& topic_word, const Vocabulary& vocab,
                                    int n) {
    if (n < 1) throw ConfigError("top_words: n must be >= 1");
    const int k = topic_word.rows;
    const int v = topic_word.cols;
    const int take = std::min(n, v);

    std::vector<TopicSummary> summaries(k);
    std::vector<int> order(v);
    for (int t = 0; t < k; ++t) {
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](int a, int b) {
            if (topic_word.at(t, a) != topic_word.at(t, b))
                return topic_word.at(t, a) > topic_word.at(t, b);
            return a < b;
        });
        summaries[t].topic_id = t;
        summaries[t].top.reserve(take);
        for (int i = 0; i < take; ++i)
            summaries[t].top.push_back({vocab.terms[order[i]], topic_word.at(t, order[i])});
    }
    return summaries;
}

std::vector<long long> dominant_topic_histogram(const DenseMatrix& doc_topic) {
    std::vector<long long> hist(doc_topic.cols, 0);
    for (int d = 0; d < doc_topic.rows; ++d) {
        int best = 0;
        for (int t = 1; t < doc_topic.cols; ++t)
            if (doc_topic.at(d, t) > doc_topic.at(d, best)) best = t;
        ++hist[best];
    }
    return hist;
}

DenseMatrix topic_overlap_matrix(const std::vector<TopicSummary>& summaries, int n) {
    const int k = static_cast<int>(summaries.size());
    std::vector<std::set<std::string>> sets(k);
    for (int t = 0; t < k; ++t) {
        int take = std::min<int>(n, static_cast<int>(summaries[t].top.size()));
        for (int i = 0; i < take; ++i) sets[t].insert(summaries[t].top[i].term);
    }

    DenseMatrix overlap(k, k);
    for (int i = 0; i < k; ++i) {
        overlap.at(i, i) = 1.0;
        for (int j = i + 1; j < k; ++j) {
            size_t inter = 0;
            for (const auto& term : sets[i]) inter += sets[j].count(term);
            size_t uni = sets[i].size() + sets[j].size() - inter;
            double sim = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
            overlap.at(i, j) = sim;
            overlap.at(j, i) = sim;
        }
    }
    return overlap;
}

DenseMatrix topic_overlap_cosine(const DenseMatrix& topic_word) {
    const int k = topic_word.rows;
    std::vector<double> norm(k);
    for (int t = 0; t < k; ++t) {
        double s = 0.0;
        for (int c = 0; c < topic_word.cols; ++c) s += topic_word.at(t, c) * topic_word.at(t, c);
        norm[t] = std::sqrt(s);
    }
    DenseMatrix overlap(k, k);
    for (int i = 0; i < k; ++i) {
        overlap.at(i, i) = 1.0;
        for (int j = i + 1; j < k; ++j) {
            double dot = 0.0;
            for (int c = 0; c < topic_word.cols; ++c) dot += topic_word.at(i, c) * topic_word.at(j, c);
            double denom = norm[i] * norm[j];
            double sim = denom == 0.0 ? 0.0 : dot / denom;
            overlap.at(i, j) = sim;
            overlap.at(j, i) = sim;
        }
    }
    return overlap;
}

std::map<std::string, int> cross_topic_word_frequency(const std::vector<TopicSummary>& summaries) {
    std::map<std::string, int> freq;
    for (const auto& summary : summaries) {
        std::set<std::string> seen;
        for (const auto& wt : summary.top) seen.insert(wt.term);
        for (const auto& term : seen) ++freq[term];
    }
    return freq;
}

std::vector<WordcloudTopic> wordcloud_export(const std::vector<TopicSummary>& summaries) {
    std::vector<WordcloudTopic> out;
    out.reserve(summaries.size());
    for (const auto& summary : summaries) {
        WordcloudTopic topic;
        topic.topic_id = summary.topic_id;
        if (!summary.top.empty()) {
            double max_w = summary.top.front().weight; // weights are non-increasing
            topic.words.reserve(summary.top.size());
            for (const auto& wt : summary.top)
                topic.words.push_back({wt.term, max_w > 0.0 ? wt.weight / max_w : 0.0});
        }
        out.push_back(std::move(topic));
    }
    return out;
}

ComparisonReport build_comparison_report(const ModelArtifacts& lda, const ModelArtifacts& nmf) {
    if (lda.k != nmf.k)
        throw ComparisonError("comparison: models were trained with different K (" +
                              std::to_string(lda.k) + " vs " + std::to_string(nmf.k) + ")");
    if (lda.corpus_hash != nmf.corpus_hash)
        throw ComparisonError("comparison: models were evaluated on different corpora");

    ComparisonReport report;
    report.lda = lda;
    report.nmf = nmf;
    if (lda.coherence.mean_cv > nmf.coherence.mean_cv)
        report.higher_coherence = lda.model_name;
    else if (nmf.coherence.mean_cv > lda.coherence.mean_cv)
        report.higher_coherence = nmf.model_name;
    else
        report.higher_coherence = "tie";
    return report;
}

namespace {

std::string format_fixed(double v, int digits) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

void render_topic_grid(std::ostringstream& out, const ModelArtifacts& model,
                       int words_per_topic) {
    out << "## " << model.model_name << " top words\n\n";
    out << "|";
    for (int t = 0; t < model.k; ++t) out << " Topic " << (t + 1) << " |";
    out << "\n|";
    for (int t = 0; t < model.k; ++t) out << "---|";
    out << "\n";
    for (int row = 0; row < words_per_topic; ++row) {
        out << "|";
        for (const auto& summary : model.summaries) {
            out << " ";
            if (row < static_cast<int>(summary.top.size())) out << summary.top[row].term;
            out << " |";
        }
        out << "\n";
    }
    out << "\n";
}

void render_coherence_detail(std::ostringstream& out, const ModelArtifacts& model) {
    out << "### " << model.model_name << "\n\n| topic | C_v |\n|---|---|\n";
    for (size_t t = 0; t < model.coherence.per_topic.size(); ++t) {
        out << "| " << (t + 1) << " | ";
        if (model.coherence.per_topic[t])
            out << format_fixed(*model.coherence.per_topic[t], 6);
        else
            out << "unscored";
        out << " |\n";
    }
    out << "\n";
}

void render_overlap(std::ostringstream& out, const ModelArtifacts& model) {
    out << "### " << model.model_name << "\n\n|  |";
    for (int j = 0; j < model.k; ++j) out << " T" << (j + 1) << " |";
    out << "\n|---|";
    for (int j = 0; j < model.k; ++j) out << "---|";
    out << "\n";
    for (int i = 0; i < model.k; ++i) {
        out << "| T" << (i + 1) << " |";
        for (int j = 0; j < model.k; ++j) out << " " << format_fixed(model.overlap.at(i, j), 3) << " |";
        out << "\n";
    }
    out << "\n";
}

void render_cross_topic(std::ostringstream& out, const ModelArtifacts& model) {
    // words that show up in more than one topic, highest counts first
    std::vector<std::pair<std::string, int>> shared;
    for (const auto& [word, count] : model.cross_topic)
        if (count > 1) shared.push_back({word, count});
    std::sort(shared.begin(), shared.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    out << "### " << model.model_name << "\n\n";
    if (shared.empty()) {
        out << "No word appears in more than one topic.\n\n";
        return;
    }
    out << "| word | topics |\n|---|---|\n";
    for (const auto& [word, count] : shared) out << "| " << word << " | " << count << " |\n";
    out << "\n";
}

} // namespace

std::string render_comparison_report(const ComparisonReport& report, int words_per_topic) {
    const auto& lda = report.lda;
    const auto& nmf = report.nmf;

    std::ostringstream out;
    out << "# Topic model comparison\n\n";
    out << "| model | topics (K) | mean C_v |\n|---|---|---|\n";
    out << "| " << lda.model_name << " | " << lda.k << " | "
        << format_fixed(lda.coherence.mean_cv, 6) << " |\n";
    out << "| " << nmf.model_name << " | " << nmf.k << " | "
        << format_fixed(nmf.coherence.mean_cv, 6) << " |\n\n";
    out << "Higher-coherence model: **" << report.higher_coherence << "**\n\n";

    render_topic_grid(out, lda, words_per_topic);
    render_topic_grid(out, nmf, words_per_topic);

    out << "## Per-topic coherence\n\n";
    render_coherence_detail(out, lda);
    render_coherence_detail(out, nmf);

    out << "## Dominant-topic document counts\n\n| topic | " << lda.model_name << " | "
        << nmf.model_name << " |\n|---|---|---|\n";
    for (int t = 0; t < lda.k; ++t)
        out << "| " << (t + 1) << " | " << lda.dominant_hist[t] << " | " << nmf.dominant_hist[t]
            << " |\n";
    out << "\n";

    out << "## Topic overlap (Jaccard over top word sets)\n\n";
    render_overlap(out, lda);
    render_overlap(out, nmf);

    out << "## Words shared across topics\n\n";
    render_cross_topic(out, lda);
    render_cross_topic(out, nmf);
    return out.str();
}

std::string render_single_model_report(const ModelArtifacts& model, int words_per_topic) {
    std::ostringstream out;
    out << "# Topic model report\n\n";
    out << "| model | topics (K) | mean C_v |\n|---|---|---|\n";
    out << "| " << model.model_name << " | " << model.k << " | "
        << format_fixed(model.coherence.mean_cv, 6) << " |\n\n";
    render_topic_grid(out, model, words_per_topic);
    out << "## Per-topic coherence\n\n";
    render_coherence_detail(out, model);
    out << "## Dominant-topic document counts\n\n| topic | documents |\n|---|---|\n";
    for (int t = 0; t < model.k; ++t)
        out << "| " << (t + 1) << " | " << model.dominant_hist[t] << " |\n";
    out << "\n## Topic overlap (Jaccard over top word sets)\n\n";
    render_overlap(out, model);
    out << "## Words shared across topics\n\n";
    render_cross_topic(out, model);
    return out.str();
}

} // namespace themeforge

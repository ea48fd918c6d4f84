#include "themeforge/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "themeforge/errors.hpp"

namespace themeforge {

WindowCounts count_windows(const std::vector<std::vector<int>>& docs, int window) {
    if (window < 1) throw ConfigError("coherence: window must be >= 1");

    WindowCounts counts;
    std::set<int> present;
    for (const auto& doc : docs) {
        const int len = static_cast<int>(doc.size());
        const int num_windows = std::max(len - window, 0) + 1;
        counts.total_windows += num_windows;
        for (int start = 0; start < num_windows; ++start) {
            const int stop = std::min(start + window, len);
            present.clear();
            for (int i = start; i < stop; ++i) present.insert(doc[i]);
            for (auto it = present.begin(); it != present.end(); ++it) {
                ++counts.occur[*it];
                for (auto jt = std::next(it); jt != present.end(); ++jt)
                    ++counts.cooccur[{*it, *jt}];
            }
        }
    }
    return counts;
}

double npmi_pair(const WindowCounts& counts, int i, int j) {
    const long long occ_i = counts.occur_of(i);
    const long long occ_j = counts.occur_of(j);
    if (occ_i == 0 || occ_j == 0)
        throw EvaluationError("npmi: term has zero window count");

    if (i == j) return 1.0;
    const long long co = counts.cooccur_of(i, j);
    if (co == 0) return -1.0;
    // p_ij == 1 forces p_i == p_j == 1 and the formula becomes 0/0; the
    // perfect-association limit is 1.
    if (co == counts.total_windows) return 1.0;

    const double total = static_cast<double>(counts.total_windows);
    const double p_i = occ_i / total;
    const double p_j = occ_j / total;
    const double p_ij = co / total;
    const double value = std::log(p_ij / (p_i * p_j)) / (-std::log(p_ij));
    return std::clamp(value, -1.0, 1.0);
}

double cv_topic(const std::vector<int>& top_words, const WindowCounts& counts,
                std::vector<int>* dropped) {
    std::vector<int> words;
    words.reserve(top_words.size());
    for (int w : top_words) {
        if (counts.occur_of(w) > 0)
            words.push_back(w);
        else if (dropped != nullptr)
            dropped->push_back(w);
    }
    const int n = static_cast<int>(words.size());
    if (n < 2) throw DegenerateTopicError("cv: topic has fewer than two scorable words");

    // context vectors u_i over the one-set segmentation
    DenseMatrix npmi(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) npmi.at(i, j) = npmi_pair(counts, words[i], words[j]);

    std::vector<double> sum(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum[j] += npmi.at(i, j);

    double sum_norm_sq = 0.0;
    for (double v : sum) sum_norm_sq += v * v;
    const double sum_norm = std::sqrt(sum_norm_sq);

    double score = 0.0;
    for (int i = 0; i < n; ++i) {
        double dot = 0.0;
        double norm_sq = 0.0;
        for (int j = 0; j < n; ++j) {
            dot += npmi.at(i, j) * sum[j];
            norm_sq += npmi.at(i, j) * npmi.at(i, j);
        }
        const double denom = std::sqrt(norm_sq) * sum_norm;
        score += denom == 0.0 ? 0.0 : dot / denom;
    }
    return score / n;
}

CoherenceReport cv_model(const DenseMatrix& topic_word, const Vocabulary& vocab,
                         const EncodedCorpus& corpus, const CoherenceConfig& cfg,
                         const std::string& model_name) {
    if (cfg.window < 1) throw ConfigError("coherence: window must be >= 1");
    if (cfg.top_n < 2) throw ConfigError("coherence: top_n must be >= 2");
    if (topic_word.cols != vocab.size())
        throw EvaluationError("coherence: model and vocabulary disagree on term count");

    const int k = topic_word.rows;
    const int v = topic_word.cols;
    const int n = std::min(cfg.top_n, v);

    // top_n term ids per topic, ties broken by ascending term id
    std::vector<std::vector<int>> topic_terms(k);
    std::vector<int> order(v);
    for (int t = 0; t < k; ++t) {
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + n, order.end(), [&](int a, int b) {
            if (topic_word.at(t, a) != topic_word.at(t, b))
                return topic_word.at(t, a) > topic_word.at(t, b);
            return a < b;
        });
        topic_terms[t].assign(order.begin(), order.begin() + n);
    }

    std::set<int> scored;
    for (const auto& terms : topic_terms) scored.insert(terms.begin(), terms.end());

    std::vector<std::vector<int>> restricted;
    restricted.reserve(corpus.docs.size());
    for (const auto& doc : corpus.docs) {
        std::vector<int> kept;
        for (int tok : doc.tokens)
            if (scored.count(tok)) kept.push_back(tok);
        restricted.push_back(std::move(kept));
    }

    const WindowCounts counts = count_windows(restricted, cfg.window);

    CoherenceReport report;
    report.model_name = model_name;
    report.window = cfg.window;
    report.top_n = cfg.top_n;
    report.per_topic.resize(k);

    std::set<int> dropped_ids;
    double total = 0.0;
    int scorable = 0;
    for (int t = 0; t < k; ++t) {
        std::vector<int> dropped;
        try {
            report.per_topic[t] = cv_topic(topic_terms[t], counts, &dropped);
            total += *report.per_topic[t];
            ++scorable;
        } catch (const DegenerateTopicError&) {
            report.per_topic[t] = std::nullopt;
        }
        dropped_ids.insert(dropped.begin(), dropped.end());
    }
    if (scorable == 0) throw EvaluationError("coherence: every topic is degenerate");

    report.mean_cv = total / scorable;
    for (int id : dropped_ids) report.dropped_words.push_back(vocab.terms[id]);
    return report;
}

} // namespace themeforge

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "themeforge/corpus.hpp"
#include "themeforge/dense.hpp"

namespace themeforge {

struct CoherenceConfig {
    int window = 110; // boolean sliding-window width in tokens
    int top_n = 10;   // words per topic scored
};

// Boolean sliding-window occurrence counts. A term counts at most once per
// window; cooccur is symmetric and keyed by (min id, max id).
struct WindowCounts {
    long long total_windows = 0;
    std::map<int, long long> occur;
    std::map<std::pair<int, int>, long long> cooccur;

    long long occur_of(int t) const {
        auto it = occur.find(t);
        return it == occur.end() ? 0 : it->second;
    }
    long long cooccur_of(int i, int j) const {
        if (i == j) return occur_of(i);
        auto it = cooccur.find({std::min(i, j), std::max(i, j)});
        return it == cooccur.end() ? 0 : it->second;
    }
};

struct CoherenceReport {
    std::string model_name;
    int window = 0;
    int top_n = 0;
    // null for topics with fewer than two scorable words
    std::vector<std::optional<double>> per_topic;
    double mean_cv = 0.0; // arithmetic mean over the scored topics
    std::vector<std::string> dropped_words;
};

// Slides a window of the given width over each document. A document of
// length L contributes max(L - window, 0) + 1 windows; windows never cross
// document boundaries. Documents are given as term-id sequences already
// restricted to the terms being scored.
WindowCounts count_windows(const std::vector<std::vector<int>>& docs, int window);

// Normalized pointwise mutual information of two terms over the windows:
//   ln(p_ij / (p_i * p_j)) / (-ln p_ij), clamped to [-1, 1].
// Conventions: i == j -> 1 exactly; zero joint count -> -1 exactly;
// p_ij == 1 -> 1 exactly (the perfect-association limit, where the formula
// is 0/0). Throws EvaluationError when either term has no windows.
double npmi_pair(const WindowCounts& counts, int i, int j);

// One-set segmentation C_v: for each word w_i a context vector
// u_i = (NPMI(w_i, w_j))_j over the whole set, U = sum_i u_i, and the score
// is the mean cosine similarity between each u_i and U. Words with zero
// window count are dropped (appended to *dropped when given); fewer than two
// survivors raises DegenerateTopicError.
double cv_topic(const std::vector<int>& top_words, const WindowCounts& counts,
                std::vector<int>* dropped = nullptr);

// Scores every topic of a topic-word distribution against the corpus: takes
// the top_n words per topic (ties broken by ascending term id), restricts
// the corpus to the union of scored words, counts windows once, then applies
// cv_topic per topic. Topics left with fewer than two scorable words are
// reported as null; if every topic is degenerate an EvaluationError is
// thrown.
CoherenceReport cv_model(const DenseMatrix& topic_word, const Vocabulary& vocab,
                         const EncodedCorpus& corpus, const CoherenceConfig& cfg,
                         const std::string& model_name);

} // namespace themeforge

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "themeforge/coherence.hpp"
#include "themeforge/corpus.hpp"
#include "themeforge/dense.hpp"

namespace themeforge {

struct WeightedTerm {
    std::string term;
    double weight = 0.0;
};

struct TopicSummary {
    int topic_id = 0;
    std::vector<WeightedTerm> top; // weights non-increasing, terms unique
};

// The n highest-weight terms per topic; ties broken by ascending term id,
// n clamped to the vocabulary size.
std::vector<TopicSummary> top_words(const DenseMatrix& topic_word, const Vocabulary& vocab,
                                    int n);

// Histogram of argmax topics over document rows; ties go to the lowest
// topic id. Entries sum to the number of documents.
std::vector<long long> dominant_topic_histogram(const DenseMatrix& doc_topic);

// Jaccard similarity of the top-n word sets of every topic pair; symmetric
// with unit diagonal.
DenseMatrix topic_overlap_matrix(const std::vector<TopicSummary>& summaries, int n);

// Cosine similarity between topic-word rows, offered as an alternative
// overlap measure.
DenseMatrix topic_overlap_cosine(const DenseMatrix& topic_word);

// For each word in any top list, the number of topics whose list contains it.
std::map<std::string, int> cross_topic_word_frequency(const std::vector<TopicSummary>& summaries);

struct WordcloudTopic {
    int topic_id = 0;
    std::vector<WeightedTerm> words; // weights scaled so the max is 1.0
};

std::vector<WordcloudTopic> wordcloud_export(const std::vector<TopicSummary>& summaries);

// Everything the comparison needs from one trained model.
struct ModelArtifacts {
    std::string model_name;
    int k = 0;
    uint64_t corpus_hash = 0;
    std::vector<TopicSummary> summaries;
    CoherenceReport coherence;
    DenseMatrix overlap;
    std::vector<long long> dominant_hist;
    std::map<std::string, int> cross_topic;
};

struct ComparisonReport {
    ModelArtifacts lda;
    ModelArtifacts nmf;
    std::string higher_coherence; // "lda" | "nmf" | "tie"
};

// Throws ComparisonError when the two models disagree on K or were evaluated
// on different corpora.
ComparisonReport build_comparison_report(const ModelArtifacts& lda, const ModelArtifacts& nmf);

// Markdown report with one K-column x words_per_topic grid per model,
// coherence summary, dominant-topic histograms, overlap matrices and
// cross-topic word statistics.
std::string render_comparison_report(const ComparisonReport& report, int words_per_topic);

// Report for a run where only one model was trained.
std::string render_single_model_report(const ModelArtifacts& model, int words_per_topic);

} // namespace themeforge

#include "themeforge/matrix.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "themeforge/errors.hpp"

namespace themeforge {

SparseCounts build_count_matrix(const EncodedCorpus& corpus) {
    if (corpus.docs.empty()) throw EmptyCorpusError("count matrix needs at least one document");

    SparseCounts counts;
    counts.num_docs = static_cast<int>(corpus.docs.size());
    counts.num_terms = corpus.vocab.size();
    counts.row_ptr.reserve(corpus.docs.size() + 1);
    counts.row_ptr.push_back(0);
    counts.doc_total.reserve(corpus.docs.size());

    for (const auto& doc : corpus.docs) {
        std::map<int, int> row; // term id -> occurrences, iterated in id order
        for (int t : doc.tokens) ++row[t];
        for (const auto& [t, c] : row) {
            counts.term.push_back(t);
            counts.count.push_back(c);
        }
        counts.row_ptr.push_back(static_cast<int>(counts.term.size()));
        counts.doc_total.push_back(static_cast<int>(doc.tokens.size()));
    }
    return counts;
}

TfidfWeights build_tfidf(const SparseCounts& counts) {
    if (counts.num_docs == 0) throw EmptyCorpusError("tfidf needs a non-empty count matrix");

    std::vector<int> df(counts.num_terms, 0);
    for (int t : counts.term) ++df[t];

    TfidfWeights w;
    w.num_docs = counts.num_docs;
    w.num_terms = counts.num_terms;
    w.row_ptr = counts.row_ptr;
    w.term = counts.term;
    w.weight.resize(counts.count.size());
    w.idf.resize(counts.num_terms);

    const double d = counts.num_docs;
    for (int t = 0; t < counts.num_terms; ++t)
        w.idf[t] = std::log((1.0 + d) / (1.0 + df[t])) + 1.0;

    for (int doc = 0; doc < counts.num_docs; ++doc) {
        double norm_sq = 0.0;
        for (int i = counts.row_ptr[doc]; i < counts.row_ptr[doc + 1]; ++i) {
            double raw = counts.count[i] * w.idf[counts.term[i]];
            w.weight[i] = raw;
            norm_sq += raw * raw;
        }
        if (norm_sq <= 0.0) continue;
        double inv = 1.0 / std::sqrt(norm_sq);
        for (int i = counts.row_ptr[doc]; i < counts.row_ptr[doc + 1]; ++i) w.weight[i] *= inv;
    }
    return w;
}

namespace {

// 9 significant digits, locale-independent
void write_g9(std::ostream& out, double v) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    out.write(buf, res.ptr - buf);
}

} // namespace

void dump_counts(const SparseCounts& counts, const EncodedCorpus& corpus, std::ostream& out) {
    for (int doc = 0; doc < counts.num_docs; ++doc)
        for (int i = counts.row_ptr[doc]; i < counts.row_ptr[doc + 1]; ++i)
            out << corpus.docs[doc].id << ' ' << corpus.vocab.terms[counts.term[i]] << ' '
                << counts.count[i] << '\n';
}

void dump_tfidf(const TfidfWeights& weights, const EncodedCorpus& corpus, std::ostream& out) {
    for (int doc = 0; doc < weights.num_docs; ++doc)
        for (int i = weights.row_ptr[doc]; i < weights.row_ptr[doc + 1]; ++i) {
            out << corpus.docs[doc].id << ' ' << corpus.vocab.terms[weights.term[i]] << ' ';
            write_g9(out, weights.weight[i]);
            out << '\n';
        }
}

} // namespace themeforge

#pragma once

#include <ostream>
#include <vector>

#include "themeforge/corpus.hpp"

namespace themeforge {

// Document-term count matrix in CSR form. Entries within a row are sorted by
// term id; counts are strictly positive; no duplicate (doc, term) pairs.
struct SparseCounts {
    int num_docs = 0;
    int num_terms = 0;
    std::vector<int> row_ptr; // size num_docs + 1
    std::vector<int> term;    // column indices
    std::vector<int> count;   // parallel to term
    std::vector<int> doc_total;

    size_t nnz() const { return term.size(); }
};

// TF-IDF weights with the same sparsity pattern as the counts they came
// from. Each nonzero row is scaled to unit Euclidean norm.
struct TfidfWeights {
    int num_docs = 0;
    int num_terms = 0;
    std::vector<int> row_ptr;
    std::vector<int> term;
    std::vector<double> weight;
    std::vector<double> idf; // length num_terms

    size_t nnz() const { return term.size(); }
};

SparseCounts build_count_matrix(const EncodedCorpus& corpus);

// idf(t) = ln((1 + D) / (1 + df(t))) + 1, then count * idf per entry, then
// L2 row normalization. df is computed from the counts matrix itself.
TfidfWeights build_tfidf(const SparseCounts& counts);

// Debug dumps in coordinate format, one entry per line:
//   doc_id term count            /  doc_id term weight
// Weights are printed to 9 significant digits.
void dump_counts(const SparseCounts& counts, const EncodedCorpus& corpus, std::ostream& out);
void dump_tfidf(const TfidfWeights& weights, const EncodedCorpus& corpus, std::ostream& out);

} // namespace themeforge

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "themeforge/dense.hpp"
#include "themeforge/matrix.hpp"

namespace themeforge {

// General sparse matrix (CSR, double values) fed to the factorizer. Counts
// and TF-IDF matrices convert losslessly; tests build it from dense data.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    static CsrMatrix from_dense(int rows, int cols, const std::vector<double>& data);
    double frobenius_norm_sq() const;
};

CsrMatrix to_csr(const SparseCounts& counts);
CsrMatrix to_csr(const TfidfWeights& weights);

struct NmfConfig {
    int k = 10;
    int max_iter = 200;
    double tol = 1e-4;   // relative objective-change stopping threshold
    uint64_t seed = 0;
    std::string init = "random"; // "random" | "nndsvd"
    double eps = 1e-12;          // denominator guard
};

struct NmfResult {
    DenseMatrix w; // D x k, elementwise >= 0
    DenseMatrix h; // k x V, elementwise >= 0
    std::vector<double> objective_trace; // initial value plus one entry per sweep
    int iterations_run = 0;
    NmfConfig config;
};

void validate(const NmfConfig& cfg);

// "random": entries uniform(0,1) scaled by sqrt(mean(V)/k), W filled
// row-major then H. "nndsvd": deterministic SVD-based non-negative init
// (Boutsidis & Gallopoulos 2008). Throws DegenerateInputError for an
// all-zero or negative matrix.
std::pair<DenseMatrix, DenseMatrix> nmf_init(const CsrMatrix& v, const NmfConfig& cfg);

// One Lee-Seung Frobenius multiplicative sweep:
//   H <- H .* (W'V) ./ (W'WH + eps), then W <- W .* (VH') ./ (WHH' + eps)
// Non-negativity and exact zeros are preserved.
void nmf_update(const CsrMatrix& v, DenseMatrix& w, DenseMatrix& h, double eps);

// ||V - WH||_F^2, evaluated entrywise.
double frobenius_objective(const CsrMatrix& v, const DenseMatrix& w, const DenseMatrix& h);

// Iterates nmf_update until the relative objective change drops below tol or
// max_iter sweeps have run. objective_trace[0] is the initial objective and
// one entry is appended per sweep.
NmfResult nmf_train(const CsrMatrix& v, const NmfConfig& cfg);

// Row-stochastic views of the factors, comparable to LDA's phi/theta:
// each H row is scaled to sum 1 (zero rows become uniform and are flagged),
// W columns absorb the inverse scales, then W rows are scaled to sum 1.
struct NormalizedFactors {
    DenseMatrix topic_word; // k x V rows summing to 1
    DenseMatrix doc_topic;  // D x k rows summing to 1
    std::vector<int> uniform_topic_rows; // H rows that were all zero
    std::vector<int> uniform_doc_rows;   // W rows that were all zero
};

NormalizedFactors normalize_factors(const NmfResult& result);

} // namespace themeforge

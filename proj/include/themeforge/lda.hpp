#pragma once

#include <cstdint>
#include <vector>

#include "themeforge/corpus.hpp"
#include "themeforge/dense.hpp"
#include "themeforge/rng.hpp"

namespace themeforge {

struct LdaConfig {
    int k = 10;
    double alpha = 0.1; // symmetric doc-topic prior
    double beta = 0.01; // symmetric topic-word prior
    int sweeps = 1000;
    int burn_in = 800; // sweeps before estimates are accumulated
    uint64_t seed = 0;
};

// Collapsed Gibbs sufficient statistics. All counts are derivable from z;
// they are kept incrementally and must stay consistent after every sweep.
struct LdaState {
    int num_docs = 0;
    int num_terms = 0;
    int num_topics = 0;
    std::vector<std::vector<int>> z; // per doc, per token position
    std::vector<int> n_dk;           // num_docs x k, row-major
    std::vector<int> n_kw;           // k x num_terms, row-major
    std::vector<int> n_k;            // k
};

struct LdaResult {
    DenseMatrix phi;   // k x V, rows sum to 1, strictly positive
    DenseMatrix theta; // D x k, rows sum to 1, strictly positive
    LdaConfig config;
    std::vector<double> log_likelihood_trace; // one entry per sweep
};

// Throws ConfigError unless k >= 1, alpha > 0, beta > 0, sweeps >= 1 and
// burn_in < sweeps.
void validate(const LdaConfig& cfg);

// Assigns every token a topic drawn uniformly from the given stream and
// builds the count arrays. Warns on stderr when k exceeds the token count.
LdaState lda_init(const EncodedCorpus& corpus, const LdaConfig& cfg, Rng& rng);
// Convenience overload seeding a fresh stream from cfg.seed.
LdaState lda_init(const EncodedCorpus& corpus, const LdaConfig& cfg);

// Collapsed Gibbs conditional for resampling one token of term w in doc d:
//   p(k) proportional to (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)
// The state must already exclude the token being resampled. Returns the
// normalized distribution.
std::vector<double> lda_conditional(const LdaState& state, const LdaConfig& cfg, int d, int w);

// Resamples every token once in fixed (doc index, token position) order.
void lda_sweep(LdaState& state, const EncodedCorpus& corpus, const LdaConfig& cfg, Rng& rng);

// phi[k][w] = (n_kw + beta) / (n_k + V*beta)
DenseMatrix estimate_phi(const LdaState& state, const LdaConfig& cfg);

// theta[d][k] = (n_dk + alpha) / (len(d) + K*alpha)
DenseMatrix estimate_theta(const LdaState& state, const LdaConfig& cfg);

// Sum over tokens of ln(sum_k theta[d][k] * phi[k][w]). Empty corpus -> 0.
double corpus_log_likelihood(const EncodedCorpus& corpus, const DenseMatrix& phi,
                             const DenseMatrix& theta);

// Runs cfg.sweeps Gibbs sweeps; phi and theta are the averages of the
// per-sweep point estimates over the sweeps after burn_in.
LdaResult lda_train(const EncodedCorpus& corpus, const LdaConfig& cfg);

} // namespace themeforge

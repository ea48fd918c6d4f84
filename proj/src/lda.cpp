#include "themeforge/lda.hpp"

#include <cmath>
#include <cstdio>

#include "themeforge/errors.hpp"

namespace themeforge {

void validate(const LdaConfig& cfg) {
    if (cfg.k < 1) throw ConfigError("lda: k must be >= 1");
    if (!(cfg.alpha > 0.0)) throw ConfigError("lda: alpha must be > 0");
    if (!(cfg.beta > 0.0)) throw ConfigError("lda: beta must be > 0");
    if (cfg.sweeps < 1) throw ConfigError("lda: sweeps must be >= 1");
    if (cfg.burn_in < 0 || cfg.burn_in >= cfg.sweeps)
        throw ConfigError("lda: burn_in must be in [0, sweeps)");
}

namespace {

void require_nonempty(const EncodedCorpus& corpus) {
    if (corpus.docs.empty() || corpus.vocab.size() == 0 || corpus.total_tokens() == 0)
        throw EmptyCorpusError("lda: corpus has no tokens");
}

} // namespace

LdaState lda_init(const EncodedCorpus& corpus, const LdaConfig& cfg, Rng& rng) {
    validate(cfg);
    require_nonempty(corpus);

    LdaState state;
    state.num_docs = static_cast<int>(corpus.docs.size());
    state.num_terms = corpus.vocab.size();
    state.num_topics = cfg.k;
    state.z.resize(corpus.docs.size());
    state.n_dk.assign(static_cast<size_t>(state.num_docs) * cfg.k, 0);
    state.n_kw.assign(static_cast<size_t>(cfg.k) * state.num_terms, 0);
    state.n_k.assign(cfg.k, 0);

    size_t total = corpus.total_tokens();
    if (static_cast<size_t>(cfg.k) > total)
        std::fprintf(stderr, "themeforge: warning: k (%d) exceeds the corpus token count (%zu)\n",
                     cfg.k, total);

    for (size_t d = 0; d < corpus.docs.size(); ++d) {
        const auto& tokens = corpus.docs[d].tokens;
        state.z[d].resize(tokens.size());
        for (size_t pos = 0; pos < tokens.size(); ++pos) {
            int k = rng.next_index(cfg.k);
            state.z[d][pos] = k;
            ++state.n_dk[d * cfg.k + k];
            ++state.n_kw[static_cast<size_t>(k) * state.num_terms + tokens[pos]];
            ++state.n_k[k];
        }
    }
    return state;
}

LdaState lda_init(const EncodedCorpus& corpus, const LdaConfig& cfg) {
    Rng rng(cfg.seed);
    return lda_init(corpus, cfg, rng);
}

std::vector<double> lda_conditional(const LdaState& state, const LdaConfig& cfg, int d, int w) {
    const int k = state.num_topics;
    const double vbeta = state.num_terms * cfg.beta;
    std::vector<double> p(k);
    double total = 0.0;
    for (int t = 0; t < k; ++t) {
        p[t] = (state.n_dk[static_cast<size_t>(d) * k + t] + cfg.alpha) *
               (state.n_kw[static_cast<size_t>(t) * state.num_terms + w] + cfg.beta) /
               (state.n_k[t] + vbeta);
        total += p[t];
    }
    for (auto& v : p) v /= total;
    return p;
}

void lda_sweep(LdaState& state, const EncodedCorpus& corpus, const LdaConfig& cfg, Rng& rng) {
    const int k = state.num_topics;
    const int v = state.num_terms;
    const double vbeta = v * cfg.beta;
    std::vector<double> weight(k);

    for (size_t d = 0; d < corpus.docs.size(); ++d) {
        const auto& tokens = corpus.docs[d].tokens;
        int* n_dk = state.n_dk.data() + d * k;
        for (size_t pos = 0; pos < tokens.size(); ++pos) {
            const int w = tokens[pos];
            const int old_topic = state.z[d][pos];

            --n_dk[old_topic];
            --state.n_kw[static_cast<size_t>(old_topic) * v + w];
            --state.n_k[old_topic];

            double total = 0.0;
            for (int t = 0; t < k; ++t) {
                weight[t] = (n_dk[t] + cfg.alpha) *
                            (state.n_kw[static_cast<size_t>(t) * v + w] + cfg.beta) /
                            (state.n_k[t] + vbeta);
                total += weight[t];
            }

            double u = rng.next_double() * total;
            int new_topic = 0;
            double cum = weight[0];
            while (u > cum && new_topic + 1 < k) cum += weight[++new_topic];

            state.z[d][pos] = new_topic;
            ++n_dk[new_topic];
            ++state.n_kw[static_cast<size_t>(new_topic) * v + w];
            ++state.n_k[new_topic];
        }
    }
}

DenseMatrix estimate_phi(const LdaState& state, const LdaConfig& cfg) {
    const int k = state.num_topics;
    const int v = state.num_terms;
    const double vbeta = v * cfg.beta;
    DenseMatrix phi(k, v);
    for (int t = 0; t < k; ++t) {
        const double denom = state.n_k[t] + vbeta;
        for (int w = 0; w < v; ++w)
            phi.at(t, w) = (state.n_kw[static_cast<size_t>(t) * v + w] + cfg.beta) / denom;
    }
    return phi;
}

DenseMatrix estimate_theta(const LdaState& state, const LdaConfig& cfg) {
    const int k = state.num_topics;
    DenseMatrix theta(state.num_docs, k);
    for (int d = 0; d < state.num_docs; ++d) {
        const double len = static_cast<double>(state.z[d].size());
        const double denom = len + k * cfg.alpha;
        for (int t = 0; t < k; ++t)
            theta.at(d, t) = (state.n_dk[static_cast<size_t>(d) * k + t] + cfg.alpha) / denom;
    }
    return theta;
}

double corpus_log_likelihood(const EncodedCorpus& corpus, const DenseMatrix& phi,
                             const DenseMatrix& theta) {
    const int k = phi.rows;
    double ll = 0.0;
    for (size_t d = 0; d < corpus.docs.size(); ++d) {
        for (int w : corpus.docs[d].tokens) {
            double p = 0.0;
            for (int t = 0; t < k; ++t) p += theta.at(static_cast<int>(d), t) * phi.at(t, w);
            ll += std::log(p);
        }
    }
    return ll;
}

namespace {

// Log-likelihood of the current state's point estimates, computed straight
// from the count arrays so the per-sweep trace needs no temporaries.
double state_log_likelihood(const LdaState& state, const EncodedCorpus& corpus,
                            const LdaConfig& cfg) {
    const int k = state.num_topics;
    const int v = state.num_terms;
    const double vbeta = v * cfg.beta;

    std::vector<double> topic_denom(k);
    for (int t = 0; t < k; ++t) topic_denom[t] = 1.0 / (state.n_k[t] + vbeta);

    std::vector<double> theta_d(k);
    double ll = 0.0;
    for (size_t d = 0; d < corpus.docs.size(); ++d) {
        const double len = static_cast<double>(state.z[d].size());
        const double denom = 1.0 / (len + k * cfg.alpha);
        for (int t = 0; t < k; ++t)
            theta_d[t] = (state.n_dk[d * k + t] + cfg.alpha) * denom;
        for (int w : corpus.docs[d].tokens) {
            double p = 0.0;
            for (int t = 0; t < k; ++t)
                p += theta_d[t] * (state.n_kw[static_cast<size_t>(t) * v + w] + cfg.beta) *
                     topic_denom[t];
            ll += std::log(p);
        }
    }
    return ll;
}

} // namespace

LdaResult lda_train(const EncodedCorpus& corpus, const LdaConfig& cfg) {
    validate(cfg);
    require_nonempty(corpus);

    Rng rng(cfg.seed);
    LdaState state = lda_init(corpus, cfg, rng);

    const int k = cfg.k;
    const int v = state.num_terms;
    DenseMatrix phi_acc(k, v);
    DenseMatrix theta_acc(state.num_docs, k);
    int averaged = 0;

    LdaResult result;
    result.config = cfg;
    result.log_likelihood_trace.reserve(cfg.sweeps);

    for (int sweep = 1; sweep <= cfg.sweeps; ++sweep) {
        lda_sweep(state, corpus, cfg, rng);
        result.log_likelihood_trace.push_back(state_log_likelihood(state, corpus, cfg));

        if (sweep <= cfg.burn_in) continue;
        ++averaged;
        const double vbeta = v * cfg.beta;
        for (int t = 0; t < k; ++t) {
            const double denom = 1.0 / (state.n_k[t] + vbeta);
            for (int w = 0; w < v; ++w)
                phi_acc.at(t, w) += (state.n_kw[static_cast<size_t>(t) * v + w] + cfg.beta) * denom;
        }
        for (int d = 0; d < state.num_docs; ++d) {
            const double denom = 1.0 / (static_cast<double>(state.z[d].size()) + k * cfg.alpha);
            for (int t = 0; t < k; ++t)
                theta_acc.at(d, t) += (state.n_dk[static_cast<size_t>(d) * k + t] + cfg.alpha) * denom;
        }
    }

    const double inv = 1.0 / averaged;
    for (auto& x : phi_acc.data) x *= inv;
    for (auto& x : theta_acc.data) x *= inv;
    result.phi = std::move(phi_acc);
    result.theta = std::move(theta_acc);
    return result;
}

} // namespace themeforge

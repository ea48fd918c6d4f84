#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "themeforge/analysis.hpp"
#include "themeforge/coherence.hpp"
#include "themeforge/corpus.hpp"
#include "themeforge/lda.hpp"
#include "themeforge/nmf.hpp"
#include "themeforge/pipeline.hpp"

namespace themeforge {

// Writers for the run artifacts. All output is deterministic: fixed key
// order, compact layout, doubles at 17 significant digits.

void write_run_config_json(std::ostream& out, const RunConfig& cfg);
void write_vocab_json(std::ostream& out, const Vocabulary& vocab);
void write_lda_result_json(std::ostream& out, const LdaResult& result);
void write_nmf_result_json(std::ostream& out, const NmfResult& result,
                           const NormalizedFactors& factors);
void write_coherence_json(std::ostream& out, const CoherenceReport& report);
void write_topics_json(std::ostream& out, const std::string& model_name, int k,
                       const std::vector<TopicSummary>& summaries);
void write_wordcloud_json(std::ostream& out, const std::string& model_name,
                          const std::vector<WordcloudTopic>& topics);
// One dense K x K matrix per selected model, in the order given.
void write_overlap_json(std::ostream& out,
                        const std::vector<const ModelArtifacts*>& models, int top_n);

} // namespace themeforge

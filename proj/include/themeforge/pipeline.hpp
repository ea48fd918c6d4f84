#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "themeforge/coherence.hpp"
#include "themeforge/corpus.hpp"
#include "themeforge/lda.hpp"
#include "themeforge/nmf.hpp"

namespace themeforge {

// Fully resolved run configuration. parse_config fills one of these from
// flags, an optional JSON config file, the THEMEFORGE_SEED environment
// variable and the documented defaults (in that precedence order).
struct RunConfig {
    std::string input_path;
    std::string format = "json"; // json | csv
    FieldMapping mapping{"id", "text"};

    PipelineConfig pipeline;
    std::string stopwords_path; // empty = built-in list

    std::vector<std::string> models = {"lda", "nmf"};
    LdaConfig lda;
    NmfConfig nmf;
    std::string nmf_input = "tfidf"; // tfidf | counts
    CoherenceConfig coherence;

    uint64_t seed = 0;   // master seed; per-model seeds are derived from it
    int table_words = 5; // words per topic in the report grids
    bool dump_matrices = false;

    std::string out_dir;
};

// Parses `run` subcommand arguments (without the program and subcommand
// names). Throws ConfigError on unknown flags, invalid values or a missing
// input path.
RunConfig parse_config(const std::vector<std::string>& args);

// Executes ingest -> preprocess -> matrices -> selected models -> coherence
// -> analysis, writing all artifacts into cfg.out_dir. Returns 0 on success;
// on failure prints the failing stage, leaves partial outputs in place and
// writes a FAILED marker file.
int run_pipeline(const RunConfig& cfg);

} // namespace themeforge

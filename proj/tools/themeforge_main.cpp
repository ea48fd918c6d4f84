#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "themeforge/errors.hpp"
#include "themeforge/pipeline.hpp"

namespace {

const char* kUsage =
    "usage: themeforge <command> [options]\n"
    "\n"
    "commands:\n"
    "  run      train the selected topic models over a corpus and write all\n"
    "           artifacts into the output directory\n"
    "  inspect  summarize a result file produced by a previous run\n"
    "\n"
    "run options:\n"
    "  --input PATH         input corpus (required)\n"
    "  --format json|csv    input format (default json)\n"
    "  --id-field S         record field with the document id (default id)\n"
    "  --text-field S       record field with the narrative (default text)\n"
    "  --models lda,nmf     models to train (default both)\n"
    "  --k INT              topic count shared by both models (default 10)\n"
    "  --seed INT           master seed (default 0; THEMEFORGE_SEED fallback)\n"
    "  --alpha F --beta F   LDA priors (defaults 0.1, 0.01)\n"
    "  --sweeps INT         LDA Gibbs sweeps (default 1000)\n"
    "  --burn-in INT        LDA burn-in sweeps (default 800)\n"
    "  --nmf-max-iter INT   NMF update sweeps (default 200)\n"
    "  --nmf-tol F          NMF stopping threshold (default 1e-4)\n"
    "  --nmf-input tfidf|counts   matrix fed to NMF (default tfidf)\n"
    "  --nmf-init random|nndsvd   NMF initialization (default random)\n"
    "  --window INT         coherence window width (default 110)\n"
    "  --top-n INT          words per topic scored (default 10)\n"
    "  --stopwords PATH     stopword override file (one term per line)\n"
    "  --min-df INT         vocabulary pruning (default 2)\n"
    "  --max-df-ratio F     vocabulary pruning (default 0.95)\n"
    "  --out DIR            output directory (default themeforge_out)\n"
    "  --config PATH        JSON config file; flags take precedence\n";

int inspect_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "themeforge: cannot open %s\n", path.c_str());
        return 1;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        std::fprintf(stderr, "themeforge: %s is not valid JSON: %s\n", path.c_str(), e.what());
        return 1;
    }

    std::printf("%s\n", path.c_str());
    if (j.contains("model") && j.contains("phi")) {
        std::printf("  lda result: k=%d alpha=%g beta=%g sweeps=%d burn_in=%d seed=%llu\n",
                    j["k"].get<int>(), j["alpha"].get<double>(), j["beta"].get<double>(),
                    j["sweeps"].get<int>(), j["burn_in"].get<int>(),
                    static_cast<unsigned long long>(j["seed"].get<uint64_t>()));
        std::printf("  phi: %zux%zu, theta: %zux%zu\n", j["phi"].size(),
                    j["phi"].empty() ? 0 : j["phi"][0].size(), j["theta"].size(),
                    j["theta"].empty() ? 0 : j["theta"][0].size());
        const auto& trace = j["log_likelihood_trace"];
        if (!trace.empty())
            std::printf("  log-likelihood: first %.6f last %.6f (%zu sweeps)\n",
                        trace.front().get<double>(), trace.back().get<double>(), trace.size());
    } else if (j.contains("model") && j.contains("objective_trace")) {
        std::printf("  nmf result: k=%d init=%s iterations=%d seed=%llu\n", j["k"].get<int>(),
                    j["init"].get<std::string>().c_str(), j["iterations_run"].get<int>(),
                    static_cast<unsigned long long>(j["seed"].get<uint64_t>()));
        const auto& trace = j["objective_trace"];
        if (!trace.empty())
            std::printf("  objective: first %.6g last %.6g\n", trace.front().get<double>(),
                        trace.back().get<double>());
    } else if (j.contains("mean_cv")) {
        std::printf("  coherence (%s): mean C_v %.6f over %zu topics\n",
                    j.value("model", std::string("?")).c_str(), j["mean_cv"].get<double>(),
                    j["per_topic"].size());
        for (size_t t = 0; t < j["per_topic"].size(); ++t) {
            if (j["per_topic"][t].is_null())
                std::printf("    topic %zu: unscored\n", t + 1);
            else
                std::printf("    topic %zu: %.6f\n", t + 1, j["per_topic"][t].get<double>());
        }
    } else if (j.contains("topics")) {
        std::printf("  topics (%s):\n", j.value("model", std::string("?")).c_str());
        for (const auto& topic : j["topics"]) {
            std::printf("    %d:", topic.contains("id") ? topic["id"].get<int>()
                                                        : topic["topic_id"].get<int>());
            const auto& words = topic.contains("top_words") ? topic["top_words"] : topic["words"];
            for (const auto& wt : words) std::printf(" %s", wt["term"].get<std::string>().c_str());
            std::printf("\n");
        }
    } else if (j.contains("terms")) {
        std::printf("  vocabulary: %d terms\n", j["num_terms"].get<int>());
    } else {
        std::printf("%s\n", j.dump(2).c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        std::fputs(kUsage, args.empty() ? stderr : stdout);
        return args.empty() ? 2 : 0;
    }

    const std::string command = args[0];
    args.erase(args.begin());

    if (command == "run") {
        try {
            themeforge::RunConfig cfg = themeforge::parse_config(args);
            return themeforge::run_pipeline(cfg);
        } catch (const themeforge::ConfigError& e) {
            std::fprintf(stderr, "themeforge: %s\n", e.what());
            std::fprintf(stderr, "run \"themeforge help\" for usage\n");
            return 2;
        }
    }
    if (command == "inspect") {
        if (args.size() != 1) {
            std::fprintf(stderr, "usage: themeforge inspect FILE\n");
            return 2;
        }
        return inspect_file(args[0]);
    }

    std::fprintf(stderr, "themeforge: unknown command \"%s\"\n", command.c_str());
    std::fputs(kUsage, stderr);
    return 2;
}

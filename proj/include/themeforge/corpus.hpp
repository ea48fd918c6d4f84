#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace themeforge {

// One source record: a report identifier plus its narrative text. The tokens
// field starts empty and is filled by preprocess_documents.
struct Document {
    std::string id;
    std::string raw_text;
    std::vector<std::string> tokens;
};

// Maps record fields to (id, text). For JSON input the paths may be
// dot-separated to address nested objects; for CSV they are column names.
struct FieldMapping {
    std::string id_field;
    std::string text_field;
};

struct PipelineConfig {
    std::set<std::string> stopwords; // empty set means "filter nothing"
    int min_token_len = 2;
    int min_df = 2;
    double max_df_ratio = 0.95;
};

// Term <-> index map. Term ids are assigned in ascending lexicographic order
// of the term string, so vocabulary content is independent of corpus order.
struct Vocabulary {
    std::vector<std::string> terms;    // index == term id
    std::vector<int> doc_freq;         // aligned with terms
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(terms.size()); }
    // -1 when the term is not in the vocabulary
    int id_of(const std::string& term) const {
        auto it = index.find(term);
        return it == index.end() ? -1 : it->second;
    }
};

struct EncodedDoc {
    std::string id;
    std::vector<int> tokens; // term ids, all < vocab.size()
};

struct EncodedCorpus {
    std::vector<EncodedDoc> docs;
    Vocabulary vocab;
    int dropped_docs = 0; // documents emptied by encoding, removed from docs

    size_t total_tokens() const {
        size_t n = 0;
        for (const auto& d : docs) n += d.tokens.size();
        return n;
    }
};

// Loads a JSON array of objects or newline-delimited JSON objects. Records
// missing the mapped id or text field (or with empty text) are skipped and
// counted into *skipped_records when given.
std::vector<Document> load_json(const std::string& path, const FieldMapping& map,
                                int* skipped_records = nullptr);

// Loads a CSV file whose first row is a header containing both mapped column
// names. RFC 4180 quoting: fields may be double-quoted, "" escapes a quote,
// quoted fields may contain commas and newlines.
std::vector<Document> load_csv(const std::string& path, const FieldMapping& map,
                               int* skipped_records = nullptr);

// Lowercases, strips URL-shaped tokens (http://, https:// or leading www.
// up to the next whitespace), replaces every character that is not an ASCII
// letter, digit or whitespace with a space, and trims the ends. Idempotent.
std::string normalize_text(const std::string& raw);

// Splits on whitespace runs; drops tokens shorter than min_token_len and
// purely numeric tokens.
std::vector<std::string> tokenize(const std::string& normalized, int min_token_len);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords);

// The fixed built-in English stopword list (see src/stopwords.cpp).
const std::set<std::string>& builtin_stopwords();

// Stopword override file: one term per line, UTF-8, blank lines ignored.
std::set<std::string> load_stopword_file(const std::string& path);

// Runs normalize -> tokenize -> remove_stopwords over every document.
void preprocess_documents(std::vector<Document>& docs, const PipelineConfig& cfg);

// Retains a term iff min_df <= doc_freq <= ceil(max_df_ratio * D).
// Throws ConfigError when nothing survives pruning.
Vocabulary build_vocabulary(const std::vector<Document>& docs, const PipelineConfig& cfg);

// Maps tokens to term ids; out-of-vocabulary tokens are dropped and documents
// left with zero tokens are removed (counted in dropped_docs).
EncodedCorpus encode_corpus(const std::vector<Document>& docs, const Vocabulary& vocab);

// FNV-1a hash over vocabulary terms, document ids and token ids. Used to
// verify that two model runs saw the same corpus.
uint64_t corpus_fingerprint(const EncodedCorpus& corpus);

} // namespace themeforge

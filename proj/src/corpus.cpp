#include "themeforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "themeforge/errors.hpp"

namespace themeforge {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path);
    return buf.str();
}

// Resolves a dot-separated path inside a JSON object; returns nullptr when
// any step is missing.
const nlohmann::json* resolve_path(const nlohmann::json& record, const std::string& path) {
    const nlohmann::json* cur = &record;
    size_t start = 0;
    while (true) {
        size_t dot = path.find('.', start);
        std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (!cur->is_object()) return nullptr;
        auto it = cur->find(part);
        if (it == cur->end()) return nullptr;
        cur = &*it;
        if (dot == std::string::npos) return cur;
        start = dot + 1;
    }
}

// Accepts strings and scalar values for ids; only strings count as text.
bool scalar_to_string(const nlohmann::json& v, bool allow_nonstring, std::string& out) {
    if (v.is_string()) {
        out = v.get<std::string>();
        return true;
    }
    if (allow_nonstring && (v.is_number() || v.is_boolean())) {
        out = v.dump();
        return true;
    }
    return false;
}

bool record_to_document(const nlohmann::json& record, const FieldMapping& map, Document& doc) {
    if (!record.is_object()) return false;
    const nlohmann::json* idv = resolve_path(record, map.id_field);
    const nlohmann::json* textv = resolve_path(record, map.text_field);
    if (idv == nullptr || textv == nullptr) return false;
    std::string id, text;
    if (!scalar_to_string(*idv, true, id) || id.empty()) return false;
    if (!scalar_to_string(*textv, false, text) || text.empty()) return false;
    doc.id = std::move(id);
    doc.raw_text = std::move(text);
    return true;
}

void validate_mapping(const FieldMapping& map) {
    if (map.id_field.empty() || map.text_field.empty())
        throw ConfigError("field mapping requires non-empty id and text paths");
}

} // namespace

std::vector<Document> load_json(const std::string& path, const FieldMapping& map,
                                int* skipped_records) {
    validate_mapping(map);
    std::string content = read_file(path);

    std::vector<Document> docs;
    int skipped = 0;
    auto take = [&](const nlohmann::json& record) {
        Document doc;
        if (record_to_document(record, map, doc))
            docs.push_back(std::move(doc));
        else
            ++skipped;
    };

    size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '[') {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(content);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("malformed JSON in " + path + " at byte " +
                             std::to_string(e.byte) + ": " + e.what());
        }
        for (const auto& record : parsed) take(record);
    } else {
        // newline-delimited JSON: one object per line, blank lines ignored
        size_t line_start = 0;
        int line_no = 0;
        while (line_start <= content.size()) {
            size_t nl = content.find('\n', line_start);
            size_t len = (nl == std::string::npos ? content.size() : nl) - line_start;
            std::string line = content.substr(line_start, len);
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) {
                nlohmann::json parsed;
                try {
                    parsed = nlohmann::json::parse(line);
                } catch (const nlohmann::json::parse_error& e) {
                    throw ParseError("malformed JSON in " + path + " at byte " +
                                     std::to_string(line_start + e.byte) + " (line " +
                                     std::to_string(line_no) + "): " + e.what());
                }
                take(parsed);
            }
            if (nl == std::string::npos) break;
            line_start = nl + 1;
        }
    }

    if (skipped_records != nullptr) *skipped_records = skipped;
    if (docs.empty()) throw EmptyCorpusError("no usable records in " + path);
    return docs;
}

namespace {

// RFC 4180 CSV reader: returns logical records, tracking the record number
// for error messages. Quoted fields may contain commas, quotes ("") and
// newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string& content,
                                                const std::string& path) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    int record_no = 1;

    size_t i = 0;
    // skip a UTF-8 BOM if present
    if (content.size() >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;

    auto end_field = [&]() {
        fields.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&]() {
        end_field();
        records.push_back(std::move(fields));
        fields.clear();
        row_started = false;
        ++record_no;
    };

    for (; i < content.size(); ++i) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty())
                    throw ParseError(path + ": malformed quoting in record " +
                                     std::to_string(record_no));
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !fields.empty() || !field.empty()) end_record();
                break;
            default:
                field += c;
                row_started = true;
        }
    }
    if (in_quotes)
        throw ParseError(path + ": unterminated quoted field in record " +
                         std::to_string(record_no));
    if (row_started || !fields.empty() || !field.empty()) end_record();
    return records;
}

} // namespace

std::vector<Document> load_csv(const std::string& path, const FieldMapping& map,
                               int* skipped_records) {
    validate_mapping(map);
    std::string content = read_file(path);
    auto records = parse_csv(content, path);
    if (records.empty()) throw EmptyCorpusError("no rows in " + path);

    const auto& header = records[0];
    auto column_of = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw SchemaError(path + ": header is missing column \"" + name + "\"");
        return static_cast<size_t>(it - header.begin());
    };
    size_t id_col = column_of(map.id_field);
    size_t text_col = column_of(map.text_field);

    std::vector<Document> docs;
    int skipped = 0;
    for (size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        if (row.size() != header.size())
            throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                             std::to_string(row.size()) + " fields, expected " +
                             std::to_string(header.size()));
        if (row[id_col].empty() || row[text_col].empty()) {
            ++skipped;
            continue;
        }
        docs.push_back(Document{row[id_col], row[text_col], {}});
    }

    if (skipped_records != nullptr) *skipped_records = skipped;
    if (docs.empty()) throw EmptyCorpusError("no usable records in " + path);
    return docs;
}

std::string normalize_text(const std::string& raw) {
    std::string lower;
    lower.reserve(raw.size());
    for (unsigned char c : raw)
        lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c);

    auto is_space = [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };

    // drop whole whitespace-delimited chunks that look like URLs
    std::string kept;
    kept.reserve(lower.size());
    size_t i = 0;
    while (i < lower.size()) {
        if (is_space(lower[i])) {
            kept += lower[i++];
            continue;
        }
        size_t end = i;
        while (end < lower.size() && !is_space(lower[end])) ++end;
        std::string_view chunk(lower.data() + i, end - i);
        bool url = chunk.starts_with("http://") || chunk.starts_with("https://") ||
                   chunk.starts_with("www.");
        if (!url) kept.append(chunk);
        i = end;
    }

    std::string out;
    out.reserve(kept.size());
    for (unsigned char c : kept) {
        if (is_space(c) || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))
            out += static_cast<char>(c);
        else
            out += ' ';
    }

    size_t begin = out.find_first_not_of(" \t\n\r\f\v");
    if (begin == std::string::npos) return "";
    size_t last = out.find_last_not_of(" \t\n\r\f\v");
    return out.substr(begin, last - begin + 1);
}

std::vector<std::string> tokenize(const std::string& normalized, int min_token_len) {
    std::vector<std::string> tokens;
    std::istringstream in(normalized);
    std::string tok;
    while (in >> tok) {
        if (static_cast<int>(tok.size()) < min_token_len) continue;
        bool numeric = std::all_of(tok.begin(), tok.end(),
                                   [](unsigned char c) { return c >= '0' && c <= '9'; });
        if (numeric) continue;
        tokens.push_back(tok);
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens)
        if (stopwords.find(t) == stopwords.end()) kept.push_back(t);
    return kept;
}

std::set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(begin, last - begin + 1);
        for (auto& c : word)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + ('a' - 'A'));
        words.insert(word);
    }
    return words;
}

void preprocess_documents(std::vector<Document>& docs, const PipelineConfig& cfg) {
    if (cfg.min_token_len < 1) throw ConfigError("min_token_len must be >= 1");
    for (auto& doc : docs)
        doc.tokens = remove_stopwords(tokenize(normalize_text(doc.raw_text), cfg.min_token_len),
                                      cfg.stopwords);
}

Vocabulary build_vocabulary(const std::vector<Document>& docs, const PipelineConfig& cfg) {
    if (cfg.min_df < 1) throw ConfigError("min_df must be >= 1");
    if (!(cfg.max_df_ratio > 0.0) || cfg.max_df_ratio > 1.0)
        throw ConfigError("max_df_ratio must be in (0, 1]");

    std::map<std::string, int> df;
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.tokens.begin(), doc.tokens.end());
        for (const auto& t : seen) ++df[t];
    }

    const int num_docs = static_cast<int>(docs.size());
    // nudge below the FP product so ratios that land exactly on an integer
    // (0.95 * 100) do not round up through the representation error
    const int max_df = static_cast<int>(std::ceil(cfg.max_df_ratio * num_docs - 1e-9));

    Vocabulary vocab;
    for (const auto& [term, count] : df) { // std::map iterates lexicographically
        if (count < cfg.min_df || count > max_df) continue;
        vocab.index.emplace(term, static_cast<int>(vocab.terms.size()));
        vocab.terms.push_back(term);
        vocab.doc_freq.push_back(count);
    }
    if (vocab.terms.empty())
        throw ConfigError("vocabulary is empty after document-frequency pruning");
    return vocab;
}

EncodedCorpus encode_corpus(const std::vector<Document>& docs, const Vocabulary& vocab) {
    EncodedCorpus corpus;
    corpus.vocab = vocab;
    for (const auto& doc : docs) {
        EncodedDoc enc;
        enc.id = doc.id;
        enc.tokens.reserve(doc.tokens.size());
        for (const auto& t : doc.tokens) {
            int id = vocab.id_of(t);
            if (id >= 0) enc.tokens.push_back(id);
        }
        if (enc.tokens.empty()) {
            ++corpus.dropped_docs;
            continue;
        }
        corpus.docs.push_back(std::move(enc));
    }
    return corpus;
}

uint64_t corpus_fingerprint(const EncodedCorpus& corpus) {
    uint64_t h = 0xCBF29CE484222325ull;
    auto mix_byte = [&h](unsigned char c) {
        h ^= c;
        h *= 0x100000001B3ull;
    };
    auto mix_string = [&](const std::string& s) {
        for (unsigned char c : s) mix_byte(c);
        mix_byte(0);
    };
    auto mix_int = [&](uint64_t v) {
        for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
    };

    mix_int(corpus.vocab.terms.size());
    for (const auto& t : corpus.vocab.terms) mix_string(t);
    mix_int(corpus.docs.size());
    for (const auto& doc : corpus.docs) {
        mix_string(doc.id);
        mix_int(doc.tokens.size());
        for (int t : doc.tokens) mix_int(static_cast<uint64_t>(t));
    }
    return h;
}

} // namespace themeforge

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "themeforge/corpus.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("themeforge_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        auto p = path_ / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Builds an encoded corpus directly from token-id sequences; term strings are
// zero-padded so ids follow lexicographic order as build_vocabulary would
// assign them.
inline themeforge::EncodedCorpus make_corpus(const std::vector<std::vector<int>>& docs,
                                             int num_terms) {
    themeforge::EncodedCorpus corpus;
    for (int t = 0; t < num_terms; ++t) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "t%05d", t);
        corpus.vocab.index.emplace(buf, t);
        corpus.vocab.terms.push_back(buf);
    }
    corpus.vocab.doc_freq.assign(num_terms, 0);
    for (size_t d = 0; d < docs.size(); ++d) {
        themeforge::EncodedDoc doc;
        doc.id = "d" + std::to_string(d);
        doc.tokens = docs[d];
        corpus.docs.push_back(std::move(doc));
    }
    for (int t = 0; t < num_terms; ++t) {
        for (const auto& doc : corpus.docs) {
            for (int tok : doc.tokens) {
                if (tok == t) {
                    ++corpus.vocab.doc_freq[t];
                    break;
                }
            }
        }
    }
    return corpus;
}

} // namespace testutil

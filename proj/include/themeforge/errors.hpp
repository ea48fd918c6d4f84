#pragma once

#include <stdexcept>
#include <string>

namespace themeforge {

// Error taxonomy for the toolkit. Every failure surfaces as one of these so
// the CLI can name the failing stage and callers can discriminate in tests.

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyCorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A topic with fewer than two scorable words; callers usually catch this and
// record the topic as unscored rather than aborting.
struct DegenerateTopicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComparisonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace themeforge

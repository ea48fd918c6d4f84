#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace themeforge {

// Streaming JSON writer for the toolkit's output files. Output is compact
// (no whitespace) and fully deterministic: keys appear in the order they are
// written and every double is printed with 17 significant digits via
// std::to_chars, which is locale-independent and round-trip exact.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();

    JsonWriter& key(std::string_view k);

    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(double d);
    JsonWriter& value(int i) { return value(static_cast<int64_t>(i)); }
    JsonWriter& value(int64_t i);
    JsonWriter& value(uint64_t u);
    JsonWriter& value(bool b);
    JsonWriter& null();

private:
    void separate();
    void write_escaped(std::string_view s);

    std::ostream& out_;
    // true once at least one element was emitted at this nesting level
    std::vector<bool> has_element_;
    bool pending_key_ = false;
};

} // namespace themeforge

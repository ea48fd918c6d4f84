#include "themeforge/json_writer.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace themeforge {

void JsonWriter::separate() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!has_element_.empty()) {
        if (has_element_.back()) out_ << ',';
        has_element_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ << '{';
    has_element_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    has_element_.pop_back();
    out_ << '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ << '[';
    has_element_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    has_element_.pop_back();
    out_ << ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    separate();
    write_escaped(k);
    out_ << ':';
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    separate();
    write_escaped(s);
    return *this;
}

JsonWriter& JsonWriter::value(double d) {
    if (!std::isfinite(d)) throw std::logic_error("non-finite value in JSON output");
    separate();
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::general, 17);
    out_.write(buf, res.ptr - buf);
    return *this;
}

JsonWriter& JsonWriter::value(int64_t i) {
    separate();
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), i);
    out_.write(buf, res.ptr - buf);
    return *this;
}

JsonWriter& JsonWriter::value(uint64_t u) {
    separate();
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), u);
    out_.write(buf, res.ptr - buf);
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    separate();
    out_ << (b ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    out_ << "null";
    return *this;
}

void JsonWriter::write_escaped(std::string_view s) {
    out_ << '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out_ << "\\\""; break;
            case '\\': out_ << "\\\\"; break;
            case '\b': out_ << "\\b"; break;
            case '\f': out_ << "\\f"; break;
            case '\n': out_ << "\\n"; break;
            case '\r': out_ << "\\r"; break;
            case '\t': out_ << "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out_ << buf;
                } else {
                    out_ << static_cast<char>(c);
                }
        }
    }
    out_ << '"';
}

} // namespace themeforge

#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "themeforge/json_writer.hpp"
#include "themeforge/rng.hpp"

using namespace themeforge;

TEST_CASE("splitmix64 matches the reference sequence for seed 0") {
    Rng rng(0);
    CHECK(rng.next_u64() == 0xe220a8397b1dcdafull);
    CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ull);
    CHECK(rng.next_u64() == 0x06c45d188009454full);
    CHECK(rng.next_u64() == 0xf88bb8a8724c81ecull);
}

TEST_CASE("next_double lies in [0,1) and is reproducible") {
    Rng a(42), b(42);
    CHECK(a.next_double() == doctest::Approx(0.7415648787718233).epsilon(1e-15));
    b.next_u64();
    for (int i = 0; i < 1000; ++i) {
        double d = a.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
}

TEST_CASE("next_index stays in range and covers the range") {
    Rng rng(7);
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 5000; ++i) {
        int v = rng.next_index(5);
        REQUIRE(v >= 0);
        REQUIRE(v < 5);
        ++seen[v];
    }
    for (int count : seen) CHECK(count > 0);
}

TEST_CASE("derive_stream separates stages deterministically") {
    CHECK(derive_stream(7, "lda") == 0xf2640bf851afa2bbull);
    CHECK(derive_stream(7, "lda") == derive_stream(7, "lda"));
    CHECK(derive_stream(7, "lda") != derive_stream(7, "nmf"));
    CHECK(derive_stream(7, "lda") != derive_stream(8, "lda"));
}

TEST_CASE("json writer emits valid compact json") {
    std::ostringstream out;
    JsonWriter w(out);
    w.begin_object();
    w.key("name").value("quote \" backslash \\ tab \t");
    w.key("values").begin_array().value(1).value(2.5).value(true).null().end_array();
    w.key("nested").begin_object().key("k").value(int64_t{-3}).end_object();
    w.end_object();

    auto parsed = nlohmann::json::parse(out.str());
    CHECK(parsed["name"] == "quote \" backslash \\ tab \t");
    CHECK(parsed["values"][0] == 1);
    CHECK(parsed["values"][1] == 2.5);
    CHECK(parsed["values"][2] == true);
    CHECK(parsed["values"][3].is_null());
    CHECK(parsed["nested"]["k"] == -3);
}

TEST_CASE("doubles round-trip exactly through 17 significant digits") {
    const double cases[] = {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, 0.7415648787718233};
    for (double v : cases) {
        std::ostringstream out;
        JsonWriter w(out);
        w.begin_array().value(v).end_array();
        auto parsed = nlohmann::json::parse(out.str());
        CHECK(parsed[0].get<double>() == v);
    }
}

TEST_CASE("uint64 seeds round-trip") {
    std::ostringstream out;
    JsonWriter w(out);
    w.begin_array().value(uint64_t{18446744073709551615ull}).end_array();
    auto parsed = nlohmann::json::parse(out.str());
    CHECK(parsed[0].get<uint64_t>() == 18446744073709551615ull);
}

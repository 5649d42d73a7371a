#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>

#include "dpa/errors.hpp"
#include "dpa/io.hpp"
#include "dpa/rng.hpp"

using namespace dpa;

TEST_CASE("doubles survive a format/parse round trip bit-exactly") {
  Rng rng(1);
  for (int k = 0; k < 20000; ++k) {
    std::uint64_t bits = rng.next();
    double x;
    std::memcpy(&x, &bits, sizeof(x));
    if (!std::isfinite(x)) continue;
    const double back = parse_double(format_double(x));
    std::uint64_t back_bits;
    std::memcpy(&back_bits, &back, sizeof(back));
    std::uint64_t x_bits;
    std::memcpy(&x_bits, &x, sizeof(x));
    CHECK(back_bits == x_bits);
  }
  CHECK(parse_double("0.2857142857142857") == 0.2857142857142857);
  CHECK_THROWS_AS(parse_double("1.25x"), ValidationError);
  CHECK_THROWS_AS(parse_double(""), ValidationError);
}

TEST_CASE("csv round trip") {
  CsvTable t;
  t.header = {"i", "j", "p"};
  t.rows = {{"0", "1", format_double(2.0 / 7.0)},
            {"1", "0", format_double(1e-17)}};
  const auto text = t.to_string();
  CHECK(text.front() == 'i');
  CHECK(text.back() == '\n');
  const auto back = CsvTable::parse(text);
  CHECK(back.header == t.header);
  REQUIRE(back.rows == t.rows);
  CHECK(parse_double(back.rows[0][2]) == 2.0 / 7.0);
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("hello") != fnv1a64_hex("hellp"));
}

TEST_CASE("text files write and read back verbatim") {
  const auto dir = std::filesystem::temp_directory_path() / "dpa_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "sample.txt";
  const std::string payload = "line1\n,comma,0.5\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);
  std::filesystem::remove_all(dir);
}

#include "doctest.h"

#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "that/csv.hpp"
#include "that/text.hpp"

using namespace that;

namespace {

Schema mixed_schema() {
  return Schema({AttributeSpec::numeric("x"), AttributeSpec::nominal("color", {"r", "g", "b"})},
                {"pos", "neg"});
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("format_double and parse_double round-trip bit-exactly") {
  const std::vector<double> values{0.1,       2.0 / 3.0, 3.141592653589793, -0.0,     0.0,
                                   1e300,     -1e-300,   123456789.123456,  -42.5,    1.0 / 3.0};
  for (double v : values) {
    CAPTURE(v);
    CHECK(same_bits(parse_double(format_double(v)), v));
  }

  SUBCASE("parsing is strict about leftovers") {
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(" 1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("1.5 "), std::invalid_argument);
  }
}

TEST_CASE("csv write then read reproduces every instance") {
  const Schema schema = mixed_schema();
  std::vector<Instance> instances;
  instances.push_back(Instance{{0.1, 0.0}, 0, 1.0});
  instances.push_back(Instance{{2.0 / 3.0, 2.0}, 1, 1.0});
  instances.push_back(Instance{{-1e300, 1.0}, 0, 1.0});
  instances.push_back(Instance{{3.141592653589793, 0.0}, 1, 1.0});

  std::ostringstream out;
  write_csv_stream(instances, schema, out);

  SUBCASE("header names every attribute then the class column") {
    const std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) == "x,color,class");
  }

  std::istringstream in(out.str());
  CsvStream reader(in, schema);
  std::vector<Instance> back = drain(reader);
  REQUIRE(back.size() == instances.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CAPTURE(i);
    CHECK(same_bits(back[i].values[0], instances[i].values[0]));
    CHECK(back[i].values[1] == instances[i].values[1]);
    CHECK(back[i].label == instances[i].label);
  }

  SUBCASE("a second serialization of the parsed rows is byte-identical") {
    std::ostringstream again;
    write_csv_stream(back, schema, again);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("nominal cells carry the declared names") {
  std::ostringstream out;
  write_csv_row(Instance{{1.5, 2.0}, 1, 1.0}, mixed_schema(), out);
  CHECK(out.str() == "1.5,b,neg\n");
}

TEST_CASE("header validation") {
  const Schema schema = mixed_schema();
  SUBCASE("missing header") {
    std::istringstream in("");
    CHECK_THROWS_AS(CsvStream(in, schema), std::runtime_error);
  }
  SUBCASE("wrong column names") {
    std::istringstream in("x,colour,class\n1.0,r,pos\n");
    CHECK_THROWS_WITH_AS(CsvStream(in, schema),
                         doctest::Contains("header mismatch"), std::runtime_error);
  }
  SUBCASE("trailing newline after the last row is fine") {
    std::istringstream in("x,color,class\n1.0,r,pos\n");
    CsvStream reader(in, schema);
    CHECK(drain(reader).size() == 1);
  }
}

TEST_CASE("row errors carry the physical line number") {
  const Schema schema = mixed_schema();
  SUBCASE("wrong field count on line 3") {
    std::istringstream in("x,color,class\n1.0,r,pos\n1.0,r\n");
    CsvStream reader(in, schema);
    CHECK(reader.next().has_value());
    CHECK_THROWS_WITH_AS(reader.next(), doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("non-numeric cell") {
    std::istringstream in("x,color,class\nfast,r,pos\n");
    CsvStream reader(in, schema);
    CHECK_THROWS_WITH_AS(reader.next(), doctest::Contains("not a number"), std::runtime_error);
  }
  SUBCASE("unknown nominal value") {
    std::istringstream in("x,color,class\n1.0,purple,pos\n");
    CsvStream reader(in, schema);
    CHECK_THROWS_WITH_AS(reader.next(), doctest::Contains("unknown value"), std::runtime_error);
  }
  SUBCASE("unknown class label") {
    std::istringstream in("x,color,class\n1.0,r,maybe\n");
    CsvStream reader(in, schema);
    CHECK_THROWS_WITH_AS(reader.next(), doctest::Contains("unknown class label"),
                         std::runtime_error);
  }
}

TEST_CASE("opening a missing file reports the path") {
  CHECK_THROWS_WITH_AS(CsvStream::open("/no/such/dir/missing.csv", mixed_schema()),
                       doctest::Contains("missing.csv"), std::runtime_error);
}

TEST_CASE("write_csv_row validates the instance") {
  std::ostringstream out;
  CHECK_THROWS_AS(write_csv_row(Instance{{1.0}, 0, 1.0}, mixed_schema(), out),
                  std::invalid_argument);
  CHECK_THROWS_AS(write_csv_row(Instance{{1.0, 9.0}, 0, 1.0}, mixed_schema(), out),
                  std::invalid_argument);
  CHECK_THROWS_AS(write_csv_row(Instance{{1.0, 0.0}, 5, 1.0}, mixed_schema(), out),
                  std::invalid_argument);
}

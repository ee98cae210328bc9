#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "dnls/field_io.hpp"
#include "test_support.hpp"

using namespace dnls;

TEST_SUITE("field_io") {

TEST_CASE("round trip is exact in both formats") {
  std::mt19937_64 rng(8);
  for (const BoxDomain& d : {BoxDomain::cube(1, std::numbers::pi, 15), BoxDomain({1.0, 2.5}, {9, 11})}) {
    const ComplexField u = test::random_field(d, rng);
    for (SnapshotFormat f : {SnapshotFormat::csv, SnapshotFormat::binary}) {
      std::stringstream ss;
      write_field(ss, u, f);
      const ComplexField v = read_field(ss, f);
      CHECK(v.domain() == d);
      CHECK(v == u);
    }
  }
}

TEST_CASE("malformed input") {
  std::stringstream bad("# dims 1\n# lengths 3\n# points 9\nre,im\n1,2\n");
  CHECK_THROWS(read_field(bad, SnapshotFormat::csv));
  std::stringstream empty;
  CHECK_THROWS(read_field(empty, SnapshotFormat::binary));
  CHECK_THROWS(load_field("/nonexistent/field.csv", SnapshotFormat::csv));
}

}

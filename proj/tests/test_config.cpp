#include <doctest.h>

#include <numbers>
#include <string>

#include "dnls/config.hpp"
#include "dnls/scenario.hpp"

using namespace dnls;

namespace {

int error_line(const std::string& text) {
  try {
    interpret(ConfigDocument::parse(text, "t.cfg"));
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

const char* kBase = R"([domain]
dims = 1
lengths = pi
points = 63

[model]
a_re = 0
a_im = 1
m = 0.5

[run]
t_end = 0.1
)";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("numbers") {
  CHECK(parse_number("3") == 3.0);
  CHECK(parse_number("-1e-3") == -1e-3);
  CHECK(parse_number("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_number("2*pi") == doctest::Approx(2 * std::numbers::pi));
  CHECK(parse_number("pi/2") == doctest::Approx(std::numbers::pi / 2));
  CHECK(parse_number("-pi") == doctest::Approx(-std::numbers::pi));
  CHECK_THROWS(parse_number("abc"));
  CHECK_THROWS(parse_number(""));
  CHECK_THROWS(parse_number("1/0"));
}

TEST_CASE("document parsing") {
  const ConfigDocument doc = ConfigDocument::parse(
      "# comment\n[run]\nt_end = 2  # trailing\nscheme = \"midpoint\"\n\n[model]\nm = 0.25\n");
  REQUIRE(doc.find("run", "t_end"));
  CHECK(doc.find("run", "t_end")->value == "2");
  CHECK(doc.find("run", "t_end")->line == 3);
  CHECK(doc.find("run", "scheme")->value == "midpoint");
  CHECK(doc.find("model", "a_re") == nullptr);
  CHECK_THROWS_AS(ConfigDocument::parse("m = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDocument::parse("[a]\nx = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDocument::parse("[a\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDocument::load("/nonexistent/dnls.cfg"), ConfigError);
}

TEST_CASE("set and canonical text round trip") {
  ConfigDocument doc = ConfigDocument::parse(kBase);
  doc.set("run.dt", "5e-4");
  doc.set("analysis", "scenario", "x");
  const ConfigDocument again = ConfigDocument::parse(doc.to_text());
  CHECK(again.find("run", "dt")->value == "5e-4");
  CHECK(again.find("analysis", "scenario")->value == "x");
  CHECK(again.to_text() == doc.to_text());
  const RunConfig cfg = interpret(again);
  CHECK(cfg.run.dt == 5e-4);
  CHECK(cfg.domain.points == std::vector<int>{63});
}

TEST_CASE("errors point at the offending line") {
  const std::string base = kBase;
  CHECK(error_line(base + "bogus = 1\n") == 13);
  CHECK(error_line(base + "dt = fast\n") == 13);
  CHECK(error_line(base + "scheme = euler\n") == 13);
  CHECK(error_line(base + "[nonsense]\nx = 1\n") == 14);
  // a = 1 + 0.1i violates the damping dominance condition for m = 1/2
  std::string bad = base;
  bad.replace(bad.find("a_re = 0"), 8, "a_re = 5");
  CHECK(error_line(bad) > 0);
  std::string flat = base;
  flat.replace(flat.find("a_im = 1"), 8, "a_im = 0");
  CHECK(error_line(flat) > 0);
  CHECK(error_line(base + "[source]\nkind = compact\nT0 = -1\n") > 0);
  try {
    interpret(ConfigDocument::parse(base + "bogus = 1\n", "t.cfg"));
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("t.cfg:13") == 0);
  }
}

TEST_CASE("every preset parses") {
  const auto names = preset_names();
  CHECK(names.size() == 7);
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK_NOTHROW(preset_config(n));
    CHECK(preset_config(n).analysis.scenario == n);
  }
  CHECK_FALSE(preset_text("nope"));
  CHECK_THROWS(preset_config("nope"));
}

}

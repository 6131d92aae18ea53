#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weylkit/specfile.hpp"

using namespace weylkit;

namespace {

const char* kGolden = R"(# static black hole chart
[meta]
name = schw
dim = 4
signature = 3 1

[coords]
t r theta phi

[params]
M = 1.0

[metric]
g 0 0 = -(1 - 2*M/r)   # lapse
g 1 1 = 1/(1 - 2*M/r)
g 2 2 = r^2
g 3 3 = r^2*sin(theta)^2

[ranges]
1 = 3 8
2 = 0.4 2.7
)";

std::string error_of(const std::string& text) {
  try {
    (void)parse_spec_text(text, "mem");
  } catch (const SpecParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("golden metric file parses completely") {
  LoadedSpec spec = parse_spec_text(kGolden, "mem");
  REQUIRE(std::holds_alternative<MetricSpec>(spec));
  const MetricSpec& m = std::get<MetricSpec>(spec);
  CHECK(m.name == "schw");
  CHECK(m.dim == 4);
  CHECK(m.coords == std::vector<std::string>{"t", "r", "theta", "phi"});
  CHECK(m.params.at("M") == 1.0);
  CHECK(m.expected_signature == std::pair<int, int>{3, 1});
  CHECK(m.g_at(0, 0).eval_real({{"M", 1.0}, {"r", 4.0}}) == doctest::Approx(-0.5));
  CHECK(m.g_at(0, 1).is_zero_literal());
  CHECK(m.g_at(3, 3).eval_real({{"r", 2.0}, {"theta", 3.14159265358979 / 2}}) ==
        doctest::Approx(4.0));
  CHECK(m.sample_ranges[1] == std::pair<double, double>{3.0, 8.0});
  CHECK(m.sample_ranges[0] == std::pair<double, double>{-1.0, 1.0});  // default
}

TEST_CASE("symmetric closure fills the mirror entry") {
  LoadedSpec spec = parse_spec_text(
      "[coords]\nx y\n[metric]\ng 0 0 = 1\ng 1 1 = 1\ng 0 1 = x\n", "mem");
  const MetricSpec& m = std::get<MetricSpec>(spec);
  CHECK(m.g_at(1, 0).str() == "x");
}

TEST_CASE("embedding files parse with an ambient signature") {
  LoadedSpec spec = parse_spec_text(
      "[meta]\nname = hb\nsignature = 4 1\n[coords]\na b c d\n[embedding]\n"
      "X 0 = sinh(a)\nX 1 = cosh(a)\nX 2 = b\nX 3 = c\nX 4 = d\n",
      "mem");
  REQUIRE(std::holds_alternative<EmbeddingSpec>(spec));
  const EmbeddingSpec& e = std::get<EmbeddingSpec>(spec);
  CHECK(e.ambient_dim == 5);
  CHECK(e.ambient_eta == std::vector<double>{-1, 1, 1, 1, 1});
  CHECK(e.dim() == 4);
}

TEST_CASE("error positions and messages") {
  CHECK(error_of("[metric]\ng 0 0 = 1\n").find("missing section [coords]") !=
        std::string::npos);
  CHECK(error_of("[coords]\nx y\n") .find("need [metric] or [embedding]") != std::string::npos);
  {
    std::string e = error_of("[coords]\nx y\n[metric]\ng 0 0 = 1\ng 1 1 = 1\ng 0 1 = x\ng 1 0 = -x\n");
    CHECK(e.find("conflicting symmetric entries") != std::string::npos);
    CHECK(e.find("mem:7:") != std::string::npos);
  }
  {
    std::string e = error_of("[coords]\nx y\n[metric]\ng 0 0 = 1\ng 0 0 = 2\ng 1 1 = 1\n");
    CHECK(e.find("duplicate metric entry") != std::string::npos);
  }
  {
    // expression error reported at the offending column of the right line
    std::string e = error_of("[coords]\nx y\n[metric]\ng 0 0 = 1 + * x\ng 1 1 = 1\n");
    CHECK(e.find("mem:4:") != std::string::npos);
  }
  CHECK(error_of("[meta]\ndim = 3\n[coords]\nx y\n[metric]\ng 0 0 = 1\ng 1 1 = 1\n")
            .find("but [coords] lists") != std::string::npos);
  CHECK(error_of("[coords]\nx y\n[metric]\ng 0 5 = 1\ng 1 1 = 1\n")
            .find("out of bounds") != std::string::npos);
  CHECK(error_of("[bogus]\n").find("unknown section") != std::string::npos);
  CHECK(error_of("[coords]\nx y\n[metric]\ng 0 0 = 1\n[embedding]\nX 0 = x\n")
            .find("both") != std::string::npos);
  CHECK(error_of("[meta]\nname = a\nname = b\n[coords]\nx y\n[metric]\ng 0 0 = 1\n")
            .find("duplicate meta key") != std::string::npos);
  CHECK(error_of("[coords]\nx y\n[embedding]\nX 0 = x\nX 1 = y\n")
            .find("missing embedding entry X 2") != std::string::npos);
}

TEST_CASE("load_spec reads from disk and reports unopenable paths") {
  CHECK_THROWS_AS((void)load_spec("/definitely/not/here.spec"), SpecParseError);
}

TEST_CASE("comments and blank lines are ignored everywhere") {
  LoadedSpec spec = parse_spec_text(
      "# header\n\n[coords]  # trailing\nx y\n\n[metric]\n# full-line\ng 0 0 = 1\ng 1 1 = 1\n",
      "mem");
  CHECK(std::get<MetricSpec>(spec).dim == 2);
}

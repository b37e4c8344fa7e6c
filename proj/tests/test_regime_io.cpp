#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"
#include "ginoe/precision.hpp"
#include "ginoe/regime.hpp"

using namespace ginoe;

TEST_CASE("regime validation and speeds") {
  CHECK_THROWS_AS(Regime::strong(1.0), RangeError);
  CHECK_THROWS_AS(Regime::strong(-0.1), RangeError);
  CHECK_THROWS_AS(Regime::weak(0.0), DomainError);
  const Regime s = Regime::strong(0.5), w = Regime::weak(2.0);
  CHECK(s.speed(8) == doctest::Approx(4.0));
  CHECK(w.speed(8) == doctest::Approx(16.0));
  CHECK(w.tau_exact_at(8) == mpq_class(3, 4));
  CHECK(w.tau_at(8) == 0.75);
  CHECK_THROWS_AS(w.check_at(2), RangeError);
  CHECK_THROWS_AS(s.alpha(), UsageError);
  CHECK(s.describe() == "tau=0.5");
  CHECK(w.describe() == "alpha=2");
}

TEST_CASE("precision schedule") {
  CHECK(default_precision_bits(16) == 0);
  CHECK(default_precision_bits(17) == 256);
  CHECK(default_precision_bits(64) == 256);
  CHECK(default_precision_bits(65) == 512);
  CHECK(resolve_precision_bits(kAutoPrecision, 100) == 512);
  CHECK(resolve_precision_bits(1024, 2) == 1024);
  CHECK_THROWS_AS(resolve_precision_bits(300, 2), PrecisionError);
  CHECK(with_precision(0, [](auto x) { return precision_tier<decltype(x)>(); }) == 0);
  CHECK(with_precision(512, [](auto x) { return precision_tier<decltype(x)>(); }) == 512);
  CHECK(std::numeric_limits<Float256>::digits >= 256);
}

TEST_CASE("shortest round-trip formatting") {
  for (double x : {0.1, 1.0 / 3, 1e-300, 6.02214076e23, -2.5}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("output headers") {
  OutputHeader h{"pmf", {{"n", "4"}, {"tau", "0.5"}}, 256};
  std::ostringstream os;
  write_csv_header(os, h);
  const std::string s = os.str();
  CHECK(s.find("# ginoe " + version_string()) == 0);
  CHECK(s.find("# flags: n=4 tau=0.5") != std::string::npos);
  CHECK(s.find("# precision_bits: 256") != std::string::npos);
  const auto j = header_json(h);
  CHECK(j["precision_bits"] == 256);
  CHECK(j["flags"]["tau"] == "0.5");
  CHECK(j["version"] == version_string());
}

TEST_CASE("error messages carry values") {
  const RangeError e("x out of range", 0.0, 1.0);
  CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  CHECK(e.lower() == 0.0);
}

TEST_CASE("csv cells with separators are quoted") {
  std::ostringstream os;
  write_csv_row(os, {"1", "a,b", "say \"hi\"", "0.5"});
  CHECK(os.str() == "1,\"a,b\",\"say \"\"hi\"\"\",0.5\n");
}

#include <doctest.h>

#include <sstream>

#include "capplan/error.hpp"
#include "capplan/forecast.hpp"
#include "helpers.hpp"

using namespace capplan;
using testing_util::make_topology;

namespace {

constexpr double kHour = 3600.0;

// Hourly samples over two days; the last day peaks at `peak`.
DemandHistory two_days(double old_peak, double peak) {
  DemandHistory h(2);
  for (int i = 0; i < 48; ++i) {
    double v = 1.0;
    if (i == 5) v = old_peak;
    if (i == 30) v = peak;
    h.add(0, 1, i * kHour, v);
  }
  return h;
}

}  // namespace

TEST_CASE("forecast examples") {
  const DemandHistory h = two_days(50.0, 10.0);
  // Only the trailing 24 hours count, so the old peak of 50 is ignored.
  CHECK(forecast(h, 0.0, 0.0).at(0, 1) == 10.0);
  CHECK(forecast(h, 0.0, 7.0).at(0, 1) == 10.0);
  CHECK(forecast(h, 0.5, 2.0).at(0, 1) == doctest::Approx(22.5));
  CHECK(forecast(h, 0.5, 0.0).at(0, 1) == 10.0);

  DemandHistory flat(2);
  for (int i = 0; i <= 24; ++i) flat.add(1, 0, i * kHour, 4.0);
  CHECK(forecast(flat, 0.0, 1.0).at(1, 0) == 4.0);
  CHECK(forecast(flat, 0.0, 1.0).at(0, 1) == 0.0);
}

TEST_CASE("forecast is monotone in growth and horizon") {
  const DemandHistory h = two_days(3.0, 8.0);
  double last = 0.0;
  for (double g : {0.0, 0.1, 0.3, 1.0}) {
    const double v = forecast(h, g, 3.0).at(0, 1);
    CHECK(v >= last);
    last = v;
  }
  last = 0.0;
  for (double y : {0.0, 0.5, 1.0, 4.0}) {
    const double v = forecast(h, 0.2, y).at(0, 1);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("forecast errors") {
  DemandHistory h(3);
  h.add(0, 1, 0.0, 1.0);
  h.declare(1, 2);
  CHECK_THROWS_AS(forecast(h, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(forecast(two_days(1, 1), -0.1, 1.0), ValidationError);

  DemandHistory uneven(2);
  uneven.add(0, 1, 0.0, 1.0);
  uneven.add(0, 1, 10.0, 1.0);
  uneven.add(0, 1, 30.0, 1.0);
  CHECK_THROWS_AS(forecast(uneven, 0.0, 0.0), ValidationError);

  DemandHistory h2(2);
  h2.add(0, 1, 10.0, 1.0);
  CHECK_THROWS_AS(h2.add(0, 1, 10.0, 1.0), ValidationError);
  CHECK_THROWS_AS(h2.add(0, 1, 20.0, -1.0), ValidationError);
  CHECK_THROWS_AS(h2.add(0, 0, 30.0, 1.0), ValidationError);
}

TEST_CASE("timestamps") {
  CHECK(parse_timestamp("0") == 0.0);
  CHECK(parse_timestamp("86400") == 86400.0);
  CHECK(parse_timestamp("1970-01-02T00:00:00Z") == 86400.0);
  CHECK(parse_timestamp("2024-01-31T12:00:00Z") == 1706702400.0);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), ValidationError);
  CHECK_THROWS_AS(parse_timestamp("2024-02-30T00:00:00Z"), ValidationError);
}

TEST_CASE("history CSV") {
  const Topology t = make_topology({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}});
  SUBCASE("samples and declarations") {
    std::istringstream in(
        "src,dst,timestamp,gbps\n"
        "a,b,2024-01-01T00:00:00Z,3\n"
        "a,b,2024-01-01T01:00:00Z,5.5\n"
        "\n"
        "b,c,0,2\n");
    const DemandHistory h = parse_history_csv(in, t);
    CHECK(h.series().size() == 2);
    const DemandMatrix d = forecast(h, 0.0, 0.0);
    CHECK(d.at(0, 1) == 5.5);
    CHECK(d.at(1, 2) == 2.0);
  }
  SUBCASE("declared pair without samples fails the forecast") {
    std::istringstream in("src,dst,timestamp,gbps\na,b,0,1\nb,c,,\n");
    CHECK_THROWS_AS(forecast(parse_history_csv(in, t), 0.0, 0.0), ValidationError);
  }
  SUBCASE("parse errors carry the line") {
    std::istringstream bad("src,dst,timestamp,gbps\na,b,0,1\na,zz,1,1\n");
    try {
      parse_history_csv(bad, t);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    std::istringstream header("from,to,t,v\n");
    CHECK_THROWS_AS(parse_history_csv(header, t), ParseError);
    std::istringstream volume("src,dst,timestamp,gbps\na,b,0,lots\n");
    CHECK_THROWS_AS(parse_history_csv(volume, t), ParseError);
  }
}

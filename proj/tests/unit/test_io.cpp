#include <doctest.h>

#include <functional>

#include "thetaforge/json_io.hpp"
#include "thetaforge/svg.hpp"

using namespace thetaforge;
using io::Json;

namespace {

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("series round trip") {
  Series f(9);
  f.add_term({-1, 2}, 3);
  f.add_term({2, 2}, Integer("-123456789012345678901234567890"));
  const Json j = io::to_json(f);
  CHECK(j["cutoff"] == 9);
  CHECK(j["terms"][1]["c"] == "-123456789012345678901234567890");
  CHECK(io::series_from_json(j, "f").identical(f));

  Series exact;
  exact.add_term({0, 0}, 1);
  const Json e = io::to_json(exact);
  CHECK(e["cutoff"].is_null());
  CHECK(io::series_from_json(e, "f").identical(exact));
  CHECK(io::series_from_json(io::parse(R"({"cutoff":3,"terms":[{"m":[1,0],"c":2}]})", "x"), "x")
            .identical(2 * Series::monomial({1, 0}, 3)));
}

TEST_CASE("diagram round trip") {
  for (auto [b, c] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 3}}) {
    const auto d = complete(initial_diagram(b, c, 8));
    const Json j = io::to_json(d);
    const auto back = io::diagram_from_json(io::parse(j.dump(), "diagram"), "diagram");
    CHECK(io::to_json(back).dump() == j.dump());
  }
  const Json a2 = io::to_json(complete(initial_diagram(1, 1, 8)));
  CHECK(a2["walls"].size() == 3);
  CHECK(a2["rays"].size() == 5);
}

TEST_CASE("expansion round trip") {
  ThetaExpansion e;
  e.cutoff = 8;
  e.add({-1, 0}, 2);
  e.add({0, 1}, Integer("99999999999999999999"));
  const Json j = io::to_json(e);
  CHECK(io::expansion_from_json(j, 8, "combo") == e);
  const auto loose = io::expansion_from_json(io::parse(R"({"coeffs":[{"m":[1,1],"a":3}]})", "combo"), 6, "combo");
  CHECK(loose.cutoff == 6);
  CHECK(loose.coeffs.at({1, 1}) == 3);
}

TEST_CASE("format errors name the field") {
  CHECK(field_of([] { io::parse("{", "combo"); }) == "combo");
  CHECK(field_of([] { io::expansion_from_json(io::parse(R"({"coeffs":[{"m":[1,0],"a":"x1"}]})", "c"), 8, "combo"); }) ==
        "combo.coeffs[0].a");
  CHECK(field_of([] { io::expansion_from_json(io::parse(R"({"coeffs":[{"m":[1],"a":1}]})", "c"), 8, "combo"); }) ==
        "combo.coeffs[0].m");
  CHECK(field_of([] { io::expansion_from_json(io::parse(R"({"terms":[]})", "c"), 8, "combo"); }) == "combo.coeffs");
  CHECK(field_of([] { io::series_from_json(io::parse(R"({"cutoff":2,"terms":[{"m":[3,0],"c":1}]})", "s"), "s"); }) ==
        "s.terms[0].m");
  CHECK(field_of([] {
          io::diagram_from_json(
              io::parse(R"({"b":1,"c":1,"cutoff":8,"walls":[{"kind":"arc","dir":[1,0],"coeffs":[1]}]})", "d"), "d");
        }) == "d.walls[0].kind");
  CHECK(field_of([] {
          io::diagram_from_json(io::parse(R"({"b":1,"c":1,"cutoff":8,"walls":[{"kind":"ray","dir":[2,0],"coeffs":[1]}]})",
                                          "d"),
                                "d");
        }) == "d");
  CHECK(field_of([] { io::diagram_from_json(io::parse(R"({"b":1,"cutoff":8,"walls":[]})", "d"), "d"); }) == "d.c");
}

TEST_CASE("report serialization") {
  const auto d = complete(initial_diagram(1, 1, 8));
  const Json r = io::to_json(check_consistency(d));
  CHECK(r["verdict"] == "pass");
  const Json raw = io::to_json(check_consistency(initial_diagram(1, 1, 8)));
  CHECK(raw["verdict"] == "fail");
  CHECK(raw["witness"]["degree"] == 2);

  Atlas a(d);
  ThetaExpansion e;
  e.add({-1, 0}, 1);
  e.add({1, -1}, -1);
  const Json v = io::to_json(a.check_universal_positivity(e));
  CHECK(v["verdict"] == "negative-witness");
  CHECK(v["witness"]["coefficient"] == "-1");
  CHECK(v["witness"]["exponent"] == Json::array({1, -1}));
}

TEST_CASE("svg export") {
  const auto d = complete(initial_diagram(1, 1, 8));
  const std::string s = export_svg(d, chambers(d), {});
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s == export_svg(d, chambers(d), {}));
  CHECK(s.find("1 + x*y") != std::string::npos);
}

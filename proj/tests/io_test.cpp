#include <doctest.h>

#include <cstdio>
#include <string>

#include "pencil/errors.hpp"
#include "pencil/io.hpp"

using namespace pencil;

TEST_CASE("doubles print with full precision and no noise") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(json_complex(Complex{1, 2}) == "[1,2]");
  CHECK(json_complex(Complex{0.5, -0.25}) == "[0.5,-0.25]");
}

TEST_CASE("potential json round trip is byte stable") {
  Eigen::VectorXcd p(1), q(2);
  p << Complex{0.1, -0.2};
  q << Complex{1, 0}, Complex{0, 0.3};
  const FourierPotential pot = validate_potential(1.5, p, q);

  const std::string text = to_json(pot);
  const FourierPotential back = parse_potential_json(text);
  CHECK(to_json(back) == text);
  CHECK(back.beta == pot.beta);
  CHECK(back.p.size() == 1);
  CHECK(back.q.size() == 2);
  CHECK(back.q_at(2) == Complex{0, 0.3});
}

TEST_CASE("vtable json round trip keeps every entry and the flag") {
  Eigen::VectorXcd q(1);
  q << Complex{1, 0};
  const FourierPotential pot = validate_potential(1.0, {}, q);
  VTable vt = build_vtable(pot, 3, Sign::plus);
  vt.divergence_suspected = true;

  const std::string text = to_json(vt);
  const VTable back = parse_vtable_json(text);
  CHECK(to_json(back) == text);
  CHECK(back.sign == Sign::plus);
  CHECK(back.M == 3);
  CHECK(back.divergence_suspected);
  CHECK(back.at(1, 1) == vt.at(1, 1));
  CHECK(back.at(1, 3) == vt.at(1, 3));
  CHECK(back.single_at(2) == vt.single_at(2));
}

TEST_CASE("spectral json round trip covers every section") {
  SpectralData sd;
  sd.order = 2;
  sd.beta_hint = 1.25;

  EigenvalueRecord rec;
  rec.sector = 3;
  rec.lambda = Complex{0.4, -0.5};
  rec.c11_plus = Complex{1e-12, 0};
  rec.c11_minus = Complex{0.3, 0.7};
  sd.eigenvalues.push_back(rec);

  CircleData circle;
  circle.center = Complex{0.5, 0};
  circle.radius = 0.125;
  circle.samples.push_back({Complex{0.625, 0}, Complex{1, 2}, Complex{3, 4}});
  circle.samples.push_back({Complex{0.375, 0}, Complex{-1, 0}, Complex{0, 1}});
  sd.circles.push_back(circle);

  sd.axis_probes.push_back({Complex{0, -0.05}, Complex{0.5, 0.5}, Complex{1, 1}});
  sd.axis_probes.push_back({Complex{0, -6}, Complex{0.25, 0}, Complex{2, 0}});

  const std::string text = to_json(sd);
  SpectralData back = parse_spectral_json(text);
  CHECK(to_json(back) == text);
  REQUIRE(back.beta_hint.has_value());
  CHECK(*back.beta_hint == 1.25);
  CHECK(back.eigenvalues.size() == 1);
  CHECK(back.eigenvalues[0].sector == 3);
  CHECK(back.circles.size() == 1);
  CHECK(back.circles[0].samples.size() == 2);
  CHECK(back.axis_probes.size() == 2);
  CHECK(back.axis_probes[1].c12 == Complex{2, 0});

  sd.beta_hint.reset();
  const std::string text2 = to_json(sd);
  CHECK(text2.find("null") != std::string::npos);
  back = parse_spectral_json(text2);
  CHECK_FALSE(back.beta_hint.has_value());
  CHECK(to_json(back) == text2);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_potential_json("{"), ParseError);
  CHECK_THROWS_AS(parse_potential_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_potential_json(R"({"beta": 1.0, "p": 3, "q": []})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_potential_json(R"({"beta": 1.0, "p": [[1]], "q": []})"),
      ParseError);

  CHECK_THROWS_AS(
      parse_vtable_json(
          R"({"sign": "x", "M": 1, "single": [[0,0]], "double": [[[1,0]]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_vtable_json(
          R"({"sign": "+", "M": 2, "single": [], "double": [[[1,0]], [[1,0]]]})"),
      ParseError);

  CHECK_THROWS_AS(parse_spectral_json(R"({"order": 1})"), ParseError);
  CHECK_THROWS_AS(
      parse_spectral_json(
          R"({"order": 1, "beta_hint": null, "eigenvalues":
              [{"sector": 7, "lambda": [0,0], "c11_plus": [0,0],
                "c11_minus": [0,0]}],
              "circles": [], "axis_probes": []})"),
      ParseError);
}

TEST_CASE("file helpers write then read verbatim") {
  const std::string path = "io_test_tmp.json";
  const std::string body = "{\"beta\":2,\"p\":[],\"q\":[[1,0]]}";
  write_file(path, body);
  CHECK(read_file(path) == body);
  const FourierPotential pot = read_potential_file(path);
  CHECK(pot.beta == 2.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), ParseError);
}

#include <sstream>

#include <doctest.h>

#include "jacobi_lab/acceptance.hpp"
#include "jacobi_lab/errors.hpp"
#include "jacobi_lab/io.hpp"

using namespace jacobi;

TEST_CASE("descriptor round trip") {
  const auto p = parse_descriptor(
      R"({"beta1": 2, "beta2": 0, "x0": 1, "x1": 2, "x2": 1, "y0": 1, "y1": 0, "y2": 0,
          "epsilon": 0.5, "remainder": {"kind": "SeededNoise", "amplitude": 0.01, "seed": 9},
          "order": "SecondOrder"})");
  CHECK(p.beta1 == 2.0);
  CHECK(p.x1 == 2.0);
  CHECK(p.epsilon == 0.5);
  CHECK(p.remainder.kind == RemainderModel::Kind::SeededNoise);
  CHECK(p.remainder.seed == 9);
  CHECK_FALSE(p.exact);

  const auto q = descriptor_from_json(to_json(p));
  CHECK(q.beta1 == p.beta1);
  CHECK(q.x2 == p.x2);
  CHECK(q.remainder.amplitude == p.remainder.amplitude);
  CHECK(q.order == p.order);
  CHECK(to_json(q) == to_json(p));
}

TEST_CASE("decimal strings keep exact data") {
  const auto p = parse_descriptor(
      R"({"beta1":"3","beta2":"3","x0":"1","x1":"1.5","x2":"2","y0":"-2","y1":"0","y2":"0"})");
  REQUIRE(p.exact);
  CHECK(p.x1 == 1.5);
  CHECK(p.exact->x1 == Rational(3, 2));
  const auto j = to_json(p);
  CHECK(j["x1"] == "1.5");
  CHECK(descriptor_from_json(j).exact.has_value());

  const auto mixed = parse_descriptor(R"({"beta1":"3","beta2":3,"x0":"1","y0":"-2"})");
  CHECK_FALSE(mixed.exact);
  CHECK(mixed.beta2 == 3.0);

  CHECK(parse_decimal("-1.25") == Rational(-5, 4));
  CHECK(parse_decimal("2.5e-3") == Rational(1, 400));
  CHECK_THROWS_AS(parse_decimal("1/3"), ParseError);
}

TEST_CASE("malformed descriptors") {
  CHECK_THROWS_AS(parse_descriptor("{\"beta1\": 2,"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2})"), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2, "beta2": 0, "bogus": 1})"), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2, "beta2": 0, "x0": "abc"})"), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2, "beta2": 0, "order": "ThirdOrder"})"), ParseError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2, "beta2": 0, "y0": 0})"), DomainError);
  CHECK_THROWS_AS(parse_descriptor(R"({"beta1": 2, "beta2": 0, "x0": -1})"), DomainError);
}

TEST_CASE("sequence CSV") {
  std::istringstream ok("n,rho,q\n0,1,0\n1,2.5,-1\n2,4,0.5\n");
  const auto seq = read_sequence_csv(ok);
  CHECK(seq.size() == 3);
  CHECK(seq.rho(1) == 2.5);
  CHECK(seq.q(1) == -1.0);
  CHECK(seq.is_external());

  std::istringstream bad_header("i,rho,q\n0,1,0\n");
  CHECK_THROWS_AS(read_sequence_csv(bad_header), ParseError);
  std::istringstream gap("n,rho,q\n0,1,0\n2,1,0\n");
  CHECK_THROWS_AS(read_sequence_csv(gap), ParseError);
  std::istringstream cell("n,rho,q\n0,one,0\n");
  CHECK_THROWS_AS(read_sequence_csv(cell), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_sequence_csv(empty), ParseError);
  std::istringstream negative("n,rho,q\n0,-1,0\n1,1,0\n");
  CHECK_THROWS_AS(read_sequence_csv(negative), DomainError);
}

TEST_CASE("CSV writers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

  const JacobiSequence seq({4.0, 4.0}, {0.0, 0.0});
  std::ostringstream s;
  write_solution_csv(s, solve_at_zero(seq));
  CHECK(s.str() == "n,P,Q\n0,1,0\n1,0,0.25\n2,-1,0\n");

  std::ostringstream e;
  write_spectrum_csv(e, std::vector<double>{-1.0, 1.0});
  CHECK(e.str() == "index,lambda\n0,-1\n1,1\n");

  std::ostringstream c;
  const std::vector<std::size_t> counts{0, 2};
  write_counting_csv(c, std::vector<double>{0.5, 1.0}, counts);
  CHECK(c.str() == "r,count\n0.5,0\n1,2\n");
  CHECK_THROWS_AS(write_counting_csv(c, std::vector<double>{0.5}, counts), DomainError);
}

TEST_CASE("git blob hash") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("classification JSON") {
  const auto c = classify(model_m1());
  const auto j = to_json(c);
  CHECK(j["regime"] == "lcc");
  CHECK(j["case"] == "T1(ii)");
  CHECK(j.contains("density_upper"));
  const auto r = to_json(classification_report(model_m1(), 512));
  CHECK(r["criteria"].is_array());
}

TEST_CASE("golden table file matches the built-in table") {
  const std::string path = std::string(JACOBI_LAB_SOURCE_DIR) + "/golden/classification_table.json";
  const auto from_file = golden_from_json(Json::parse(read_file(path)));
  const auto builtin = builtin_golden_table();
  REQUIRE(from_file.size() == builtin.size());
  CHECK(golden_to_json(from_file) == golden_to_json(builtin));
  for (const auto& g : from_file) CHECK(golden_diff(g, classify(g.descriptor)).empty());
}

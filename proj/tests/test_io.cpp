#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "margdist/common.hpp"
#include "margdist/io.hpp"
#include "margdist/measure.hpp"
#include "margdist/stepfn.hpp"
#include "margdist/transform.hpp"

using namespace margdist;

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must point at the bundled data files"
#endif

namespace {

std::string data_path(const char* name) { return std::string(TEST_DATA_DIR) + "/" + name; }

bool code_is(const error& e, errc c) { return e.code() == c; }

}  // namespace

TEST_CASE("measure json round trip") {
  DiscreteMeasure p = mdtest::p_co();
  DiscreteMeasure back = measure_from_json(measure_to_json(p));
  CHECK(approx_equal(back, p, 0.0));

  DiscreteMeasure ind = measure_from_json(measure_to_json(mdtest::p_ind()));
  CHECK(approx_equal(ind, mdtest::p_ind(), 0.0));

  // Irregular weights round trip bitwise: the serializer emits shortest
  // exact representations and construction is idempotent.
  DiscreteMeasure odd = DiscreteMeasure::make(
      {{0.123456789012345}, {0.5}, {0.987654321098765}}, {1.0 / 3.0, 1.0 / 7.0, 11.0 / 21.0});
  CHECK(approx_equal(measure_from_json(measure_to_json(odd)), odd, 0.0));
}

TEST_CASE("measure json accepts missing weights as uniform") {
  DiscreteMeasure p =
      measure_from_json(R"({"dim": 2, "atoms": [[0, 0], [0, 1], [1, 0], [1, 1]]})");
  CHECK(approx_equal(p, mdtest::p_ind(), 0.0));
  DiscreteMeasure with_null =
      measure_from_json(R"({"dim": 1, "atoms": [[0], [1]], "weights": null})");
  CHECK(with_null.weight(0) == 0.5);
}

TEST_CASE("measure json rejects malformed input") {
  auto expect_parse = [](const std::string& text) {
    try {
      measure_from_json(text);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const error& e) {
      CHECK(code_is(e, errc::parse));
    }
  };
  expect_parse("[1, 2]");
  expect_parse(R"({"atoms": [[0]]})");
  expect_parse(R"({"dim": 0, "atoms": [[0]]})");
  expect_parse(R"({"dim": 2, "atoms": [[0]]})");
  expect_parse(R"({"dim": 1, "atoms": [["a"]]})");
  expect_parse(R"({"dim": 1})");
  expect_parse("{\"dim\": 2, \"atoms\": [[0, 0],");

  // Weight errors surface as construction failures, not parse failures.
  try {
    measure_from_json(R"({"dim": 1, "atoms": [[0], [1]], "weights": [0.5, 0.6]})");
    FAIL_CHECK("expected a weight-sum rejection");
  } catch (const error& e) {
    CHECK(code_is(e, errc::invalid_argument));
  }
}

TEST_CASE("measure csv parsing") {
  DiscreteMeasure p = measure_from_csv("x1,x2,weight\n0,0,0.5\n1,1,0.5\n");
  CHECK(approx_equal(p, mdtest::p_co(), 0.0));

  DiscreteMeasure crlf = measure_from_csv("x1,x2,w\r\n0,0,0.5\r\n1,1,0.5\r\n");
  CHECK(approx_equal(crlf, mdtest::p_co(), 0.0));

  DiscreteMeasure uniform = measure_from_csv("a,b\n0,0\n0,1\n1,0\n1,1\n\n");
  CHECK(approx_equal(uniform, mdtest::p_ind(), 0.0));

  DiscreteMeasure spaced = measure_from_csv("x , weight\n 0.25 , 1.0 \n");
  CHECK(spaced.atom(0)[0] == 0.25);
}

TEST_CASE("measure csv reports the offending line") {
  try {
    measure_from_csv("x1,x2\n0,0\n1,oops\n");
    FAIL_CHECK("expected a parse error");
  } catch (const error& e) {
    CHECK(code_is(e, errc::parse));
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(measure_from_csv(""), error);
  CHECK_THROWS_AS(measure_from_csv("x1,x2\n"), error);
  CHECK_THROWS_AS(measure_from_csv("x1,x2\n0\n"), error);
  CHECK_THROWS_AS(measure_from_csv("weight\n0.5\n"), error);
}

TEST_CASE("file loading dispatches on extension") {
  DiscreteMeasure from_json = measure_from_file(data_path("p_co.json"));
  DiscreteMeasure from_csv = measure_from_file(data_path("p_co.csv"));
  CHECK(approx_equal(from_json, from_csv, 0.0));
  CHECK(approx_equal(from_json, mdtest::p_co(), 0.0));

  try {
    measure_from_file(data_path("bad.json"));
    FAIL_CHECK("expected a parse error");
  } catch (const error& e) {
    CHECK(code_is(e, errc::parse));
  }
  try {
    measure_from_file(data_path("does_not_exist.json"));
    FAIL_CHECK("expected an io error");
  } catch (const error& e) {
    CHECK(code_is(e, errc::io));
  }
}

TEST_CASE("step function json round trips") {
  MonotoneStep id = stepfn_from_file(data_path("g_identity.json"));
  CHECK(id.is_identity());
  CHECK(stepfn_from_json(stepfn_to_json(id)).is_identity());

  MonotoneStep th = stepfn_from_file(data_path("g_threshold.json"));
  CHECK(th(0.4) == 0.0);
  CHECK(th(0.6) == 1.0);
  MonotoneStep back = stepfn_from_json(stepfn_to_json(th));
  CHECK(back(0.4) == 0.0);
  CHECK(back(0.6) == 1.0);

  CHECK_THROWS_AS(stepfn_from_json(R"({"identity": false})"), error);
  CHECK_THROWS_AS(stepfn_from_json(R"({"breakpoints": [0.5]})"), error);
  CHECK_THROWS_AS(stepfn_from_json("3"), error);
}

TEST_CASE("rectangle mixture serialization") {
  RectMixture c = to_copula(mdtest::p_co());
  const std::string text = rect_mixture_to_json(c);
  CHECK(text.find("\"dim\": 2") != std::string::npos);
  CHECK(text.find("\"components\"") != std::string::npos);
  CHECK(text.find("\"weight\"") != std::string::npos);
}

TEST_CASE("text file round trip") {
  const std::string path = "margdist_io_test_tmp.txt";
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), error);
}

#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "expconvex/matrix_io.hpp"

using namespace expconvex;
using namespace std::complex_literals;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an expconvex::Error");
  return ErrorKind::InvalidArgument;
}

std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_matrix_document") {
  SUBCASE("entries document") {
    const MatrixDocument d = parse_matrix_document(R"({"n": 2, "entries": [[1,0],[0,1],[0,-1],[3,0]]})");
    CHECK(d.n == 2);
    REQUIRE(d.entries);
    CHECK((*d.entries)(0, 1) == 1i);
    CHECK((*d.entries)(1, 0) == -1i);
    CHECK_FALSE(d.a);
  }
  SUBCASE("pair document") {
    const MatrixDocument d =
        parse_matrix_document(R"({"n": 1, "A": [[2, 0]], "B": [[-1, 0]]})");
    REQUIRE(d.a);
    REQUIRE(d.b);
    CHECK((*d.a)(0, 0) == 2.0);
    CHECK((*d.b)(0, 0) == -1.0);
  }
  SUBCASE("syntax error carries line and column") {
    const std::string msg = message_of([] { parse_matrix_document("{\n \"n\": 2,\n \"entries\": [1, }"); });
    CHECK(msg.find("Parse") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
  SUBCASE("structural errors") {
    CHECK(kind_of([] { parse_matrix_document("[]"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_matrix_document(R"({"n": 0, "entries": []})"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_matrix_document(R"({"n": 2})"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_matrix_document(R"({"n": 2, "entries": [[1,0]]})"); }) == ErrorKind::Parse);
    const std::string msg =
        message_of([] { parse_matrix_document(R"({"n": 2, "A": [[1,0],[0,0],[0,"x"],[1,0]]})"); });
    CHECK(msg.find("entry 2 (row 1, col 0)") != std::string::npos);
  }
}

TEST_CASE("round trip through JSON") {
  ComplexMatrix m(2, 2);
  m << 1.5, Complex(0.25, -2.0), Complex(0.25, 2.0), -0.0;
  const Json j = matrix_to_json(m);
  CHECK(j["n"] == 2);
  CHECK(j["entries"][3][0].get<double>() == 0.0);
  CHECK_FALSE(std::signbit(j["entries"][3][0].get<double>()));
  const ComplexMatrix back = matrix_from_json(j["entries"], 2, 2, "entries");
  CHECK(back == m);

  const Json rect = matrix_to_json(ComplexMatrix::Zero(2, 3));
  CHECK(rect["rows"] == 2);
  CHECK(rect["cols"] == 3);

  const Json pair = pair_document(m, m);
  const MatrixDocument d = parse_matrix_document(pair.dump());
  CHECK(*d.a == m);
  CHECK(*d.b == m);
}

TEST_CASE("pretty_json keeps scalar arrays inline") {
  Json doc = Json::object();
  doc["grid"] = {-1.0, 0.0, 1.0};
  doc["pairs"] = Json::array({Json::array({1, 0}), Json::array({0, 1})});
  doc["empty"] = Json::object();
  const std::string text = pretty_json(doc);
  CHECK(text == "{\n  \"grid\": [-1.0, 0.0, 1.0],\n  \"pairs\": [\n    [1, 0],\n    [0, 1]\n  ],\n  \"empty\": {}\n}\n");
  CHECK(Json::parse(text) == doc);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "expconvex_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "pair.json";
  write_text(path, R"({"n": 2, "A": [[0,0],[0,0],[0,0],[1,0]], "B": [[1,0],[0,1],[0,-1],[3,0]]})");
  const auto [a, b] = read_hermitian_pair(path);
  CHECK(a(1, 1) == 1.0);
  CHECK(b(0, 1) == 1i);

  CHECK(kind_of([&] { read_matrix_file(dir / "missing.json"); }) == ErrorKind::Io);

  write_text(path, R"({"n": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]})");
  const std::string msg = message_of([&] { read_hermitian_pair(path); });
  CHECK(msg.find("pair.json") != std::string::npos);

  write_text(path, R"({"n": 2, "A": [[0,0],[1,0],[0,0],[1,0]], "B": [[1,0],[0,0],[0,0],[3,0]]})");
  CHECK(kind_of([&] { read_hermitian_pair(path); }) == ErrorKind::NotHermitian);

  write_text(path, "{ broken");
  const std::string parse_msg = message_of([&] { read_matrix_file(path); });
  CHECK(parse_msg.rfind("Parse: ", 0) == 0);
  CHECK(parse_msg.find("Parse: Parse") == std::string::npos);
  std::filesystem::remove_all(dir);
}

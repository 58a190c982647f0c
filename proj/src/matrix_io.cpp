#include "expconvex/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace expconvex {

namespace {

// + 0.0 folds -0.0 into 0.0.
Json complex_to_json(const Complex& z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

}  // namespace

ComplexMatrix matrix_from_json(const Json& entries, Index rows, Index cols, std::string_view key) {
  const std::string name(key);
  if (!entries.is_array()) parse_fail("\"" + name + "\" must be an array of [re, im] pairs");
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (entries.size() != expected) {
    std::ostringstream os;
    os << "\"" << name << "\" has " << entries.size() << " entries, expected " << expected << " (" << rows << "x"
       << cols << ")";
    parse_fail(os.str());
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < expected; ++i) {
    const Json& e = entries[i];
    const auto r = static_cast<Index>(i) / cols;
    const auto c = static_cast<Index>(i) % cols;
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      std::ostringstream os;
      os << "\"" << name << "\" entry " << i << " (row " << r << ", col " << c << ") is not a [re, im] number pair";
      parse_fail(os.str());
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      std::ostringstream os;
      os << "\"" << name << "\" entry " << i << " (row " << r << ", col " << c << ") is not finite";
      throw Error(ErrorKind::NonFinite, os.str());
    }
    m(r, c) = Complex(re, im);
  }
  return m;
}

MatrixDocument parse_matrix_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    parse_fail("\"n\" must be a positive integer");
  }

  MatrixDocument out;
  out.n = static_cast<Index>(doc["n"].get<long long>());
  if (doc.contains("entries")) out.entries = matrix_from_json(doc["entries"], out.n, out.n, "entries");
  if (doc.contains("A")) out.a = matrix_from_json(doc["A"], out.n, out.n, "A");
  if (doc.contains("B")) out.b = matrix_from_json(doc["B"], out.n, out.n, "B");
  if (!out.entries && !out.a && !out.b) parse_fail("document has neither \"entries\" nor \"A\"/\"B\"");
  return out;
}

MatrixDocument read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_document(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

std::pair<HermitianMatrix, HermitianMatrix> read_hermitian_pair(const std::filesystem::path& path) {
  MatrixDocument doc = read_matrix_file(path);
  if (!doc.a || !doc.b) throw Error(ErrorKind::Parse, path.string() + ": expected both \"A\" and \"B\"");
  return {validate_hermitian(*doc.a), validate_hermitian(*doc.b)};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
  Json out = Json::object();
  if (m.rows() == m.cols()) {
    out["n"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["entries"] = std::move(entries);
  return out;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index j = 0; j < v.size(); ++j) out.push_back(complex_to_json(v(j)));
  return out;
}

Json real_vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index j = 0; j < v.size(); ++j) out.push_back(v(j));
  return out;
}

Json pair_document(const ComplexMatrix& a, const ComplexMatrix& b) {
  Json doc = Json::object();
  doc["n"] = a.rows();
  doc["A"] = matrix_to_json(a)["entries"];
  doc["B"] = matrix_to_json(b)["entries"];
  return doc;
}

namespace {

void dump_into(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += inner + Json(it.key()).dump() + ": ";
      dump_into(it.value(), depth + 1, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ", ";
        out += j[k].dump(-1, ' ', false, Json::error_handler_t::replace);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      dump_into(j[k], depth + 1, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

}  // namespace

std::string pretty_json(const Json& doc) {
  std::string out;
  dump_into(doc, 0, out);
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace expconvex

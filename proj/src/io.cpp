#include "pmfiber/io.hpp"

#include <fstream>

#include "pmfiber/error.hpp"

namespace pmfiber::io {

namespace {

std::string entry_text(const Json& v, int i, int j) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   ") must be a string or an integer");
}

template <typename S>
Matrix<S> parse_entries(const Json& rows, int n) {
  Matrix<S> a(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("row " + std::to_string(i + 1) + " must be an array of " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) a(i, j) = ScalarTraits<S>::parse(entry_text(row[static_cast<std::size_t>(j)], i, j));
  }
  return a;
}

}  // namespace

AnyMatrix parse_matrix_file(const Json& doc) {
  if (!doc.is_object()) throw ParseError("matrix file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("missing integer field \"n\"");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("missing array field \"entries\"");
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseError("\"n\" must be positive");
  const Json& rows = doc["entries"];
  if (static_cast<int>(rows.size()) != n) throw ParseError("\"entries\" must have n rows");
  const std::string field = doc.contains("field") ? doc["field"].get<std::string>() : "Q";
  if (parse_field(field) == FieldTag::Rational) return parse_entries<Rational>(rows, n);
  return parse_entries<Gaussian>(rows, n);
}

AnyMatrix read_matrix_file(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_matrix_file(doc);
}

AnyMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix_file(in);
}

template <typename S>
Json matrix_file(const Matrix<S>& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["n"] = a.rows();
  out["field"] = ScalarTraits<S>::name;
  out["entries"] = std::move(rows);
  return out;
}

template <typename S>
Json scalars(const std::vector<S>& values) {
  Json out = Json::array();
  for (const S& v : values) out.push_back(to_string(v));
  return out;
}

Json labels(IndexSet s) {
  Json out = Json::array();
  for (int e : s.elements()) out.push_back(e + 1);
  return out;
}

template <typename S>
Json polynomial(const MPoly<S>& p, bool structured) {
  if (!structured) return p.to_string();
  Json out = Json::array();
  const bool multiaffine = p.is_multiaffine();
  for (const auto& [e, c] : p.terms()) {
    Json term;
    if (multiaffine) {
      IndexSet s;
      for (int k = 0; k < p.nvars(); ++k) {
        if (e[static_cast<std::size_t>(k)] != 0) s = s.with(k);
      }
      term["subset"] = labels(s);
    } else {
      Json exps = Json::array();
      for (int k = 0; k < p.nvars(); ++k) exps.push_back(e[static_cast<std::size_t>(k)]);
      term["exponents"] = std::move(exps);
    }
    term["coefficient"] = to_string(c);
    out.push_back(std::move(term));
  }
  return out;
}

template Json matrix_file(const Matrix<Rational>&);
template Json matrix_file(const Matrix<Gaussian>&);
template Json scalars(const std::vector<Rational>&);
template Json scalars(const std::vector<Gaussian>&);
template Json polynomial(const MPoly<Rational>&, bool);
template Json polynomial(const MPoly<Gaussian>&, bool);

}  // namespace pmfiber::io

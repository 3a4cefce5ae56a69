#include "qfp/io.hpp"

#include "qfp/error.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace qfp {

namespace {

bool looks_like_json(const std::string& s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

std::vector<std::vector<std::string>> tokenize_lines(const std::string& content) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

std::size_t parse_dim(const std::string& tok) {
  const auto v = parse_rational(tok);
  if (!v || !is_integral(*v) || *v < 1 || *v > 100000) fail(ErrorCode::ParseError, "bad dimension '" + tok + "'");
  return v->get_num().get_ui();
}

Rational parse_entry(const std::string& tok, std::size_t i, std::size_t j) {
  const auto v = parse_rational(tok);
  if (!v) {
    fail(ErrorCode::ParseError,
         "bad entry '" + tok + "' at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  return *v;
}

Rational json_entry(const nlohmann::json& v, std::size_t i, std::size_t j) {
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (v.is_string()) return parse_entry(v.get<std::string>(), i, j);
  fail(ErrorCode::ParseError, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") must be an integer or a \"p/q\" string");
}

RationalMatrix rational_from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t r, std::size_t c) {
  if (rows.size() != r) {
    fail(ErrorCode::ParseError, "expected " + std::to_string(r) + " rows, got " + std::to_string(rows.size()));
  }
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      fail(ErrorCode::ParseError, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                      " entries, expected " + std::to_string(c));
    }
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

struct Parsed {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> entries;
  bool square_header = false;
};

Parsed parse_any(const std::string& content) {
  Parsed p;
  if (looks_like_json(content)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("entries") || !j["entries"].is_array()) fail(ErrorCode::ParseError, "JSON matrix needs \"entries\"");
    auto dim = [&](const char* key) -> std::size_t {
      if (!j[key].is_number_integer() || j[key].get<long long>() < 0) {
        fail(ErrorCode::ParseError, std::string("\"") + key + "\" must be a non-negative integer");
      }
      return j[key].get<std::size_t>();
    };
    if (j.contains("n")) {
      p.rows = p.cols = dim("n");
      p.square_header = true;
    } else if (j.contains("rows") && j.contains("cols")) {
      p.rows = dim("rows");
      p.cols = dim("cols");
    } else {
      fail(ErrorCode::ParseError, "JSON matrix needs \"n\" or \"rows\"/\"cols\"");
    }
    std::size_t i = 0;
    for (const auto& row : j["entries"]) {
      if (!row.is_array()) fail(ErrorCode::ParseError, "row " + std::to_string(i) + " is not an array");
      std::vector<Rational> values;
      std::size_t jj = 0;
      for (const auto& v : row) values.push_back(json_entry(v, i, jj++));
      p.entries.push_back(std::move(values));
      ++i;
    }
    return p;
  }
  const auto lines = tokenize_lines(content);
  if (lines.empty()) fail(ErrorCode::ParseError, "empty matrix file");
  const auto& header = lines.front();
  if (header.size() == 1) {
    p.rows = p.cols = parse_dim(header[0]);
    p.square_header = true;
  } else if (header.size() == 2) {
    p.rows = parse_dim(header[0]);
    p.cols = parse_dim(header[1]);
  } else {
    fail(ErrorCode::ParseError, "header must be \"n\" or \"rows cols\"");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<Rational> values;
    for (std::size_t j = 0; j < lines[i].size(); ++j) values.push_back(parse_entry(lines[i][j], i - 1, j));
    p.entries.push_back(std::move(values));
  }
  return p;
}

}  // namespace

SymmetricIntMatrix parse_symmetric_matrix(const std::string& content) {
  const auto p = parse_any(content);
  if (p.rows != p.cols) fail(ErrorCode::ParseError, "symmetric matrix must be square");
  const auto m = rational_from_rows(p.entries, p.rows, p.cols);
  std::vector<Integer> e;
  e.reserve(p.rows * p.cols);
  for (std::size_t i = 0; i < p.rows; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) {
      if (!is_integral(m(i, j))) {
        fail(ErrorCode::ParseError, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not an integer");
      }
      e.push_back(m(i, j).get_num());
    }
  return SymmetricIntMatrix(p.rows, std::move(e));
}

RationalMatrix parse_rational_matrix(const std::string& content) {
  const auto p = parse_any(content);
  return rational_from_rows(p.entries, p.rows, p.cols);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileNotFound, "file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SymmetricIntMatrix load_symmetric_matrix(const std::string& path) { return parse_symmetric_matrix(read_file(path)); }

RationalMatrix load_rational_matrix(const std::string& path) { return parse_rational_matrix(read_file(path)); }

std::string format_matrix_text(const SymmetricIntMatrix& a) {
  std::string out = std::to_string(a.n()) + "\n";
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) {
      if (j) out += ' ';
      out += to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qfp

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/sparse.hpp"

namespace spgemm_hg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

Index parse_index(std::string_view tok, std::size_t line_no) {
  Index v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

NonzeroStructure load_matrix_market(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& out) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    out = text.substr(pos, end - pos);
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw ParseError(1, "empty input");
  auto header = split_ws(line);
  if (header.size() < 5 || lower(std::string(header[0])) != "%%matrixmarket" ||
      lower(std::string(header[1])) != "matrix") {
    throw ParseError(line_no, "missing '%%MatrixMarket matrix' header");
  }
  const std::string format = lower(std::string(header[2]));
  const std::string field = lower(std::string(header[3]));
  const std::string symmetry = lower(std::string(header[4]));
  if (format == "array") throw ParseError(line_no, "dense array format is not supported");
  if (format != "coordinate") throw ParseError(line_no, "unknown format '" + format + "'");
  std::size_t n_values = 0;
  if (field == "pattern") {
    n_values = 0;
  } else if (field == "real" || field == "integer" || field == "double") {
    n_values = 1;
  } else if (field == "complex") {
    n_values = 2;
  } else {
    throw ParseError(line_no, "unknown field '" + field + "'");
  }
  const bool mirror = symmetry == "symmetric" || symmetry == "skew-symmetric" ||
                      symmetry == "hermitian";
  if (!mirror && symmetry != "general") {
    throw ParseError(line_no, "unknown symmetry '" + symmetry + "'");
  }

  Index rows = -1, cols = -1, entries = -1;
  while (next_line(line)) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '%') continue;
    if (toks.size() != 3) throw ParseError(line_no, "size line must be 'rows cols nnz'");
    rows = parse_index(toks[0], line_no);
    cols = parse_index(toks[1], line_no);
    entries = parse_index(toks[2], line_no);
    if (rows < 0 || cols < 0 || entries < 0) throw ParseError(line_no, "negative size");
    break;
  }
  if (rows < 0) throw ParseError(line_no, "missing size line");

  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(mirror ? 2 * entries : entries));
  Index seen = 0;
  while (next_line(line)) {
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '%') continue;
    if (toks.size() != 2 + n_values) {
      throw ParseError(line_no, "expected " + std::to_string(2 + n_values) + " fields, got " +
                                    std::to_string(toks.size()));
    }
    Index i = parse_index(toks[0], line_no);
    Index k = parse_index(toks[1], line_no);
    if (i < 1 || i > rows || k < 1 || k > cols) {
      throw ParseError(line_no, "index (" + std::to_string(i) + "," + std::to_string(k) +
                                    ") out of range");
    }
    if (++seen > entries) throw ParseError(line_no, "more entries than declared");
    coords.push_back({i - 1, k - 1});
    if (mirror && i != k) coords.push_back({k - 1, i - 1});
  }
  if (seen != entries) {
    throw ParseError(line_no, "declared " + std::to_string(entries) + " entries, found " +
                                  std::to_string(seen));
  }
  if (mirror && rows != cols) throw ParseError(1, "symmetric matrix must be square");
  return NonzeroStructure::from_coords(rows, cols, std::move(coords));
}

NonzeroStructure load_matrix_market_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_matrix_market(buf.str());
}

std::string write_matrix_market(const NonzeroStructure& s) {
  std::string out = "%%MatrixMarket matrix coordinate pattern general\n";
  out += std::to_string(s.n_rows()) + " " + std::to_string(s.n_cols()) + " " +
         std::to_string(s.nnz()) + "\n";
  for (Index i = 0; i < s.n_rows(); ++i) {
    for (Index k : s.row(i)) {
      out += std::to_string(i + 1);
      out += ' ';
      out += std::to_string(k + 1);
      out += '\n';
    }
  }
  return out;
}

}  // namespace spgemm_hg

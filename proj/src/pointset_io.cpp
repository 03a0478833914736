#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "sumprod/errors.hpp"
#include "sumprod/io.hpp"

namespace sumprod {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  // A final newline does not start a new line.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool is_blank(std::string_view line) { return split_tokens(line).empty(); }

void check_header(const std::vector<std::string_view>& lines, std::string_view header) {
  if (lines.empty()) throw ParseError("empty input", 1);
  const std::string_view first = lines[0];
  const bool ok = first.substr(0, header.size()) == header &&
                  (first.size() == header.size() || first[header.size()] == ' ');
  if (!ok) throw ParseError("expected header '" + std::string(header) + "'", 1);
}

std::size_t parse_dim(const std::vector<std::string_view>& lines) {
  if (lines.size() < 2) throw ParseError("missing 'dim <d>' line", 2);
  const auto tokens = split_tokens(lines[1]);
  if (tokens.size() != 2 || tokens[0] != "dim") throw ParseError("expected 'dim <d>'", 2);
  std::size_t dim = 0;
  for (char c : tokens[1]) {
    if (c < '0' || c > '9' || dim > 1'000'000) throw ParseError("invalid dimension", 2);
    dim = dim * 10 + static_cast<std::size_t>(c - '0');
  }
  if (dim == 0) throw ParseError("dimension must be at least 1", 2);
  return dim;
}

std::vector<Rational> parse_row(std::string_view line, std::size_t expected, std::size_t lineno) {
  const auto tokens = split_tokens(line);
  if (tokens.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " values, got " +
                         std::to_string(tokens.size()),
                     lineno);
  }
  std::vector<Rational> row;
  row.reserve(expected);
  for (auto tok : tokens) {
    try {
      row.push_back(Rational::parse(tok));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return row;
}

std::string header_line(std::string_view header, std::string_view provenance) {
  std::string out(header);
  if (!provenance.empty()) {
    if (provenance.find('\n') != std::string_view::npos) {
      throw DomainError("provenance must be a single line");
    }
    out += ' ';
    out += provenance;
  }
  out += '\n';
  return out;
}

}  // namespace

std::string format_pointset(const PointSet& a, std::string_view provenance) {
  std::string out = header_line(kPointSetHeader, provenance);
  out += "dim " + std::to_string(a.dim()) + "\n";
  for (const auto& p : a) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i != 0) out += ' ';
      out += p[i].str();
    }
    out += '\n';
  }
  return out;
}

PointSet parse_pointset(std::string_view text) {
  const auto lines = split_lines(text);
  check_header(lines, kPointSetHeader);
  const std::size_t dim = parse_dim(lines);
  std::vector<Point> pts;
  std::set<Point> seen;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    Point p(parse_row(lines[i], dim, i + 1));
    if (!seen.insert(p).second) throw ParseError("duplicate point", i + 1);
    pts.push_back(std::move(p));
  }
  return PointSet::from_points(dim, std::move(pts));
}

std::string format_matrixset(const MatrixSet& a, std::string_view provenance) {
  std::string out = header_line(kMatrixSetHeader, provenance);
  out += "dim " + std::to_string(a.dim()) + "\n";
  bool first = true;
  for (const auto& m : a) {
    if (!first) out += '\n';
    first = false;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) {
        if (j != 0) out += ' ';
        out += m(i, j).str();
      }
      out += '\n';
    }
  }
  return out;
}

MatrixSet parse_matrixset(std::string_view text) {
  const auto lines = split_lines(text);
  check_header(lines, kMatrixSetHeader);
  const std::size_t dim = parse_dim(lines);
  std::vector<Matrix> mats;
  std::set<Matrix> seen;
  std::size_t i = 2;
  while (i < lines.size()) {
    if (is_blank(lines[i])) {
      ++i;
      continue;
    }
    const std::size_t first_line = i + 1;
    std::vector<Rational> entries;
    entries.reserve(dim * dim);
    for (std::size_t r = 0; r < dim; ++r, ++i) {
      if (i >= lines.size() || is_blank(lines[i])) {
        throw ParseError("matrix has fewer than " + std::to_string(dim) + " rows", i + 1);
      }
      auto row = parse_row(lines[i], dim, i + 1);
      entries.insert(entries.end(), row.begin(), row.end());
    }
    if (i < lines.size() && !is_blank(lines[i])) {
      throw ParseError("matrix has more than " + std::to_string(dim) + " rows", i + 1);
    }
    Matrix m(dim, std::move(entries));
    if (!seen.insert(m).second) throw ParseError("duplicate matrix", first_line);
    mats.push_back(std::move(m));
  }
  return MatrixSet::from_matrices(dim, std::move(mats));
}

SetFileKind detect_kind(std::string_view text) {
  const auto nl = text.find('\n');
  const std::string_view first = text.substr(0, nl);
  auto starts = [&](std::string_view h) {
    return first.substr(0, h.size()) == h &&
           (first.size() == h.size() || first[h.size()] == ' ' || first[h.size()] == '\r');
  };
  if (starts(kPointSetHeader)) return SetFileKind::pointset;
  if (starts(kMatrixSetHeader)) return SetFileKind::matrixset;
  throw ParseError("unrecognised header (expected '# pointset v1' or '# matset v1')", 1);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace sumprod

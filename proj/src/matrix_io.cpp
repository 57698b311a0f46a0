#include "charpoly/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "charpoly/errors.hpp"

namespace charpoly {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

// Content lines only: comment lines (starting with '#') and blank lines
// are dropped, trailing whitespace with them.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      Line out{line_no, {}};
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.tokens.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
      }
      if (!out.tokens.empty()) lines.push_back(std::move(out));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

template <RingType R>
Matrix<R> parse_entries(const R& ring, std::size_t n, const std::vector<Line>& lines,
                        std::size_t first_row) {
  Matrix<R> m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (first_row + i >= lines.size())
      throw ParseError("expected " + std::to_string(n) + " data rows, found " + std::to_string(i),
                       lines.empty() ? 1 : lines.back().number + 1, 1);
    const Line& row = lines[first_row + i];
    if (row.tokens.size() != n)
      throw ParseError("expected " + std::to_string(n) + " entries, found " +
                           std::to_string(row.tokens.size()),
                       row.number,
                       row.tokens.size() > n ? row.tokens[n].column : row.tokens.back().column);
    for (std::size_t j = 0; j < n; ++j) {
      try {
        m.at(i, j) = ring.parse(row.tokens[j].text);
      } catch (const MalformedLiteralError& e) {
        throw ParseError(e.what(), row.number, row.tokens[j].column);
      }
    }
  }
  return m;
}

}  // namespace

AnyMatrix parse_matrix_text(std::string_view text, std::optional<RingSpec> override_ring) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty matrix file", 1, 1);

  const Line& header = lines[0];
  if (header.tokens[0].text != "ring:")
    throw ParseError("expected 'ring:' header", header.number, header.tokens[0].column);
  if (header.tokens.size() < 2)
    throw ParseError("missing ring name after 'ring:'", header.number,
                     header.tokens[0].column + header.tokens[0].text.size());
  std::string ring_text = header.tokens[1].text;
  for (std::size_t t = 2; t < header.tokens.size(); ++t) ring_text += " " + header.tokens[t].text;
  RingSpec spec;
  try {
    spec = parse_ring_spec(ring_text);
  } catch (const Error& e) {
    throw ParseError(e.what(), header.number, header.tokens[1].column);
  }
  if (override_ring) spec = *override_ring;

  if (lines.size() < 2) throw ParseError("missing dimension line", header.number + 1, 1);
  const Line& dim = lines[1];
  if (dim.tokens.size() != 1)
    throw ParseError("dimension line must hold a single integer", dim.number, dim.tokens[1].column);
  std::size_t n = 0;
  try {
    mpz_class d = detail::parse_integer_literal(dim.tokens[0].text);
    if (sgn(d) <= 0 || !d.fits_ulong_p()) throw MalformedLiteralError("dimension must be >= 1");
    n = d.get_ui();
  } catch (const MalformedLiteralError& e) {
    throw ParseError(std::string("bad dimension: ") + e.what(), dim.number, dim.tokens[0].column);
  }

  AnyMatrix result = with_ring(spec, [&](auto ring) -> AnyMatrix {
    return parse_entries(ring, n, lines, 2);
  });
  if (lines.size() > 2 + n) {
    const Line& extra = lines[2 + n];
    throw ParseError("unexpected content after matrix rows", extra.number, extra.tokens[0].column);
  }
  return result;
}

AnyMatrix read_matrix_file(const std::string& path, std::optional<RingSpec> override_ring) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str(), override_ring);
}

}  // namespace charpoly

#include "hx/io.hpp"

#include <fstream>
#include <sstream>

namespace hx {

namespace {

// Reads the next non-comment, non-blank line; returns false at EOF.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line, std::size_t expected, int line_no) {
  std::istringstream is(line);
  std::vector<long long> out;
  long long v;
  while (is >> v) out.push_back(v);
  std::string rest;
  if (is.clear(), is >> rest)
    throw io_error("trailing garbage", line_no);
  if (out.size() != expected)
    throw io_error("expected " + std::to_string(expected) + " integers, got " +
                       std::to_string(out.size()),
                   line_no);
  return out;
}

}  // namespace

std::string write_hypergraph(const UniformHypergraph& g) {
  std::ostringstream os;
  os << g.uniformity() << " " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << "\n";
  }
  return os.str();
}

UniformHypergraph read_hypergraph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw io_error("empty hypergraph file", line_no);
  auto header = parse_ints(line, 3, line_no);
  int k = static_cast<int>(header[0]);
  Vertex n = static_cast<Vertex>(header[1]);
  long long m = header[2];
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no))
      throw io_error("unexpected end of file, expected " + std::to_string(m) + " edges",
                     line_no);
    auto vals = parse_ints(line, static_cast<std::size_t>(k), line_no);
    Edge e(vals.begin(), vals.end());
    for (std::size_t j = 1; j < e.size(); ++j)
      if (e[j - 1] >= e[j]) throw io_error("edge not strictly increasing", line_no);
    edges.push_back(std::move(e));
  }
  try {
    return UniformHypergraph(k, n, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw io_error(ex.what(), line_no);
  }
}

UniformHypergraph read_hypergraph_string(const std::string& text) {
  std::istringstream is(text);
  return read_hypergraph(is);
}

std::string write_colouring(const EdgeColouring& c) {
  std::ostringstream os;
  os << c.uniformity() << " " << c.vertex_count() << " " << c.colour_count() << "\n";
  for_each_combination(c.vertex_count(), c.uniformity(), [&](std::span<const Vertex> t) {
    for (std::size_t i = 0; i < t.size(); ++i) os << t[i] << " ";
    os << c.colour(t) << "\n";
  });
  return os.str();
}

EdgeColouring read_colouring(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw io_error("empty colouring file", line_no);
  auto header = parse_ints(line, 3, line_no);
  int k = static_cast<int>(header[0]);
  Vertex n = static_cast<Vertex>(header[1]);
  int colours = static_cast<int>(header[2]);
  std::uint64_t total = binomial_u64(n, k);
  std::vector<std::uint8_t> table(total, 0);
  std::vector<bool> seen(total, false);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!next_content_line(in, line, line_no))
      throw io_error("colouring not total: expected " + std::to_string(total) + " lines",
                     line_no);
    auto vals = parse_ints(line, static_cast<std::size_t>(k) + 1, line_no);
    Edge t(vals.begin(), vals.end() - 1);
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < 0 || t[j] >= n) throw io_error("vertex out of range", line_no);
      if (j > 0 && t[j - 1] >= t[j]) throw io_error("tuple not strictly increasing", line_no);
    }
    long long colour = vals.back();
    if (colour < 0 || colour >= colours) throw io_error("colour out of range", line_no);
    std::uint64_t rank = colex_rank(t);
    if (seen[rank]) throw io_error("tuple coloured twice", line_no);
    seen[rank] = true;
    table[rank] = static_cast<std::uint8_t>(colour);
  }
  return EdgeColouring::table(k, n, colours, std::move(table));
}

EdgeColouring read_colouring_string(const std::string& text) {
  std::istringstream is(text);
  return read_colouring(is);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

UniformHypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_hypergraph(in);
}

EdgeColouring read_colouring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_colouring(in);
}

}  // namespace hx

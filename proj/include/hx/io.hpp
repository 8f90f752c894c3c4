#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hx/core.hpp"

namespace hx {

struct io_error : std::runtime_error {
  io_error(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  int line_number;
};

// Text formats (both round-trip bit-exactly):
//   hypergraph: "k n m" then m lines of k space-separated sorted vertex ids,
//               edges in lexicographic order;
//   colouring:  "k n l" then C(n,k) lines "v1 .. vk c" in lexicographic
//               tuple order (explicit backings only).
// Lines starting with '#' are comments and are skipped on read.

std::string write_hypergraph(const UniformHypergraph& g);
UniformHypergraph read_hypergraph(std::istream& in);
UniformHypergraph read_hypergraph_string(const std::string& text);

std::string write_colouring(const EdgeColouring& c);
EdgeColouring read_colouring(std::istream& in);
EdgeColouring read_colouring_string(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

UniformHypergraph read_hypergraph_file(const std::string& path);
EdgeColouring read_colouring_file(const std::string& path);

}  // namespace hx

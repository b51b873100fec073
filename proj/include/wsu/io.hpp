#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace wsu {

/// "order n" followed by n rows of n space-separated indices.
inline std::string to_cayley_text(const GroupTable& g) {
  std::ostringstream os;
  const auto n = g.order();
  os << "order " << n << '\n';
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << g.mul(i, j);
    }
    os << '\n';
  }
  return os.str();
}

inline GroupTable parse_cayley_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string word;
  std::size_t n = 0;
  if (!(is >> word) || word != "order" || !(is >> n) || n == 0)
    throw GroupError(ErrorCode::ParseError, "expected header \"order n\"");
  if (n > order_cap()) throw GroupError(ErrorCode::OrderCapExceeded, "table of order " + std::to_string(n));
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long v = -1;
      if (!(is >> v)) throw GroupError(ErrorCode::ParseError, "table truncated at row " + std::to_string(i));
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw GroupError(ErrorCode::ParseError, "entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      rows[i][j] = static_cast<Element>(v);
    }
  if (is >> word) throw GroupError(ErrorCode::ParseError, "trailing data after table");
  return from_cayley_table(n, rows);
}

struct GeneratorFile {
  std::size_t degree = 0;
  std::vector<Permutation> gens;
};

/// "degree d" followed by one permutation per line in cycle notation.
inline std::string to_generator_text(const GeneratorFile& f) {
  std::string out = "degree " + std::to_string(f.degree) + "\n";
  for (const auto& p : f.gens) out += p.to_cycles() + "\n";
  return out;
}

inline GeneratorFile parse_generator_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  GeneratorFile f;
  while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream head(line);
  std::string word;
  if (!(head >> word) || word != "degree" || !(head >> f.degree) || f.degree == 0)
    throw GroupError(ErrorCode::ParseError, "expected header \"degree d\"");
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    f.gens.push_back(Permutation::from_cycles(f.degree, line));
  }
  return f;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GroupError(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GroupError(ErrorCode::ParseError, "cannot write " + path);
  out << content;
}

/// A group file in either format, chosen by its header word.
inline GroupTable load_group_file(const std::string& path) {
  const auto text = read_file(path);
  std::istringstream is(text);
  std::string word;
  is >> word;
  if (word == "order") return parse_cayley_text(text);
  if (word == "degree") {
    const auto f = parse_generator_text(text);
    return from_permutation_generators(f.degree, f.gens);
  }
  throw GroupError(ErrorCode::ParseError, path + ": unknown header \"" + word + "\"");
}

}  // namespace wsu

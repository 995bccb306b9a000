#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splitmat/matroid.hpp"

namespace splitmat {

// Text formats.
//
// Block format, one matroid per blank-line-separated block:
//   MATROID n=4 r=2
//   0,1
//   0,2
// Basis lines are comma-separated ascending indices, one basis per line in
// ascending mask order. A rank-0 matroid has no basis lines (its only basis
// is empty). The alternative compact body is a single line `BASES <string>`.
//
// Shard-string format for whole files: a header line `n r`, then one
// `*`/`0` string per matroid per line, one character per r-subset in
// reverse-lexicographic subset order (for fixed cardinality this is
// ascending bitmask order), `*` marking a basis. Further `n r` header
// lines switch shards mid-file; strings never contain spaces, so the
// two line kinds cannot collide.

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  Error err(errc::parse_error, "line " + std::to_string(line) + ": " + msg);
  err.line = line;
  throw err;
}

inline bool parse_int(const std::string& s, std::size_t& pos, int& out) {
  std::size_t start = pos;
  long v = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    v = v * 10 + (s[pos] - '0');
    if (v > 1000000) return false;
    ++pos;
  }
  if (pos == start) return false;
  out = static_cast<int>(v);
  return true;
}

inline mask_t parse_basis_csv(const std::string& s, int line) {
  mask_t out = 0;
  std::size_t pos = 0;
  int prev = -1;
  while (true) {
    int e = 0;
    if (!parse_int(s, pos, e)) parse_fail(line, "expected element index in '" + s + "'");
    if (e <= prev) parse_fail(line, "element indices must be strictly ascending");
    if (e >= kMaxGroundSet) parse_fail(line, "element " + std::to_string(e) + " out of range");
    out |= bit(e);
    prev = e;
    if (pos == s.size()) break;
    if (s[pos] != ',') parse_fail(line, "expected ',' in basis line");
    ++pos;
  }
  return out;
}

}  // namespace detail

inline std::string revlex_string(const Matroid& m) {
  std::string s;
  s.reserve(binomial(m.n(), m.rank()));
  for_each_subset_of_card(m.n(), m.rank(), [&](mask_t sub) {
    s.push_back(m.is_basis(sub) ? '*' : '0');
  });
  return s;
}

inline std::vector<mask_t> bases_from_revlex(int n, int r, const std::string& s, int line) {
  if (s.size() != binomial(n, r))
    detail::parse_fail(line, "shard string has length " + std::to_string(s.size()) + ", expected " +
                                 std::to_string(binomial(n, r)));
  std::vector<mask_t> bases;
  std::size_t i = 0;
  bool bad = false;
  for_each_subset_of_card(n, r, [&](mask_t sub) {
    char c = s[i++];
    if (c == '*')
      bases.push_back(sub);
    else if (c != '0')
      bad = true;
  });
  if (bad) detail::parse_fail(line, "shard string may contain only '*' and '0'");
  return bases;
}

// A parsed but not yet validated matroid block.
struct RawBlock {
  int n = 0;
  int r = 0;
  std::vector<mask_t> bases;
  int header_line = 0;
};

inline std::vector<RawBlock> read_raw_blocks(std::istream& in) {
  std::vector<RawBlock> blocks;
  std::string line;
  int lineno = 0;
  bool in_block = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      in_block = false;
      continue;
    }
    if (line.rfind("MATROID ", 0) == 0) {
      RawBlock b;
      b.header_line = lineno;
      std::size_t pos = 8;
      if (line.compare(pos, 2, "n=") != 0) detail::parse_fail(lineno, "expected 'n=' in header");
      pos += 2;
      if (!detail::parse_int(line, pos, b.n)) detail::parse_fail(lineno, "bad ground-set size");
      if (line.compare(pos, 3, " r=") != 0) detail::parse_fail(lineno, "expected ' r=' in header");
      pos += 3;
      if (!detail::parse_int(line, pos, b.r)) detail::parse_fail(lineno, "bad rank");
      if (pos != line.size()) detail::parse_fail(lineno, "trailing text after header");
      if (b.r == 0) b.bases.push_back(0);  // the empty basis is implicit
      blocks.push_back(std::move(b));
      in_block = true;
      continue;
    }
    if (!in_block) detail::parse_fail(lineno, "expected 'MATROID n=<n> r=<r>' header");
    RawBlock& b = blocks.back();
    if (line.rfind("BASES ", 0) == 0) {
      if (!b.bases.empty() && b.r != 0)
        detail::parse_fail(lineno, "BASES line cannot follow basis lines");
      b.bases = bases_from_revlex(b.n, b.r, line.substr(6), lineno);
      continue;
    }
    if (b.r == 0) detail::parse_fail(lineno, "rank-0 block carries no basis lines");
    mask_t basis = detail::parse_basis_csv(line, lineno);
    if (popcount(basis) != b.r)
      detail::parse_fail(lineno, "basis has " + std::to_string(popcount(basis)) + " elements, rank is " +
                                     std::to_string(b.r));
    b.bases.push_back(basis);
  }
  return blocks;
}

inline std::vector<RawBlock> read_raw_shard_strings(std::istream& in) {
  std::vector<RawBlock> blocks;
  std::string line;
  int lineno = 0;
  int n = -1, r = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (n < 0 || line.find(' ') != std::string::npos) {
      std::size_t pos = 0;
      if (!detail::parse_int(line, pos, n)) detail::parse_fail(lineno, "expected 'n r' header");
      if (pos >= line.size() || line[pos] != ' ') detail::parse_fail(lineno, "expected 'n r' header");
      ++pos;
      if (!detail::parse_int(line, pos, r) || pos != line.size())
        detail::parse_fail(lineno, "expected 'n r' header");
      if (n > kMaxGroundSet || r > n)
        detail::parse_fail(lineno, "header out of range: n=" + std::to_string(n) + " r=" + std::to_string(r));
      continue;
    }
    blocks.push_back({n, r, bases_from_revlex(n, r, line, lineno), lineno});
  }
  return blocks;
}

// Auto-detects the format from the first non-blank line.
inline std::vector<RawBlock> read_raw(std::istream& in) {
  std::ostringstream buffered;
  buffered << in.rdbuf();
  std::string text = buffered.str();
  std::size_t pos = 0;
  while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) ++pos;
  std::istringstream replay(text);
  if (text.compare(pos, 8, "MATROID ") == 0) return read_raw_blocks(replay);
  return read_raw_shard_strings(replay);
}

inline Matroid validate_block(const RawBlock& b, int block_index) {
  try {
    return Matroid::validate(b.n, b.r, b.bases);
  } catch (const Error& e) {
    Error err(e.code, "matroid block " + std::to_string(block_index) + " (line " +
                          std::to_string(b.header_line) + "): " + e.what());
    err.block = block_index;
    err.line = b.header_line;
    err.basis_a = e.basis_a;
    err.basis_b = e.basis_b;
    err.element = e.element;
    throw err;
  }
}

inline std::vector<Matroid> read_matroids(std::istream& in) {
  std::vector<Matroid> out;
  int idx = 0;
  for (const RawBlock& b : read_raw(in)) out.push_back(validate_block(b, idx++));
  return out;
}

inline void write_matroid(std::ostream& out, const Matroid& m, bool compact = false) {
  out << "MATROID n=" << m.n() << " r=" << m.rank() << "\n";
  if (compact) {
    out << "BASES " << revlex_string(m) << "\n";
    return;
  }
  if (m.rank() == 0) return;  // the empty basis is implicit
  for (mask_t b : m.bases()) out << ElementSet(b, m.n()).csv() << "\n";
}

inline void write_matroids(std::ostream& out, const std::vector<Matroid>& ms, bool compact = false) {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out << "\n";
    write_matroid(out, ms[i], compact);
  }
}

inline std::string matroid_to_text(const Matroid& m, bool compact = false) {
  std::ostringstream out;
  write_matroid(out, m, compact);
  return out.str();
}

inline std::vector<Matroid> read_matroid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  return read_matroids(in);
}

}  // namespace splitmat

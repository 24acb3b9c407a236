#pragma once

// Two-level design matrices. A design is N runs by m factors with entries in
// {-1,+1}; each run is bit-packed into a 32-bit mask (bit j set <=> factor j
// at +1). m is capped at 30 so tables indexed by factor subsets (2^m entries)
// stay within desk-scale memory.

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wordcount/errors.hpp"

namespace wordcount {

inline constexpr int kMaxFactors = 30;

// A subset of the m factors, as a bit mask. Order s = |g| is the word length
// a subset contributes to.
struct FactorSubset {
  std::uint32_t mask = 0;

  int order() const { return std::popcount(mask); }
  bool contains(int j) const { return (mask >> j & 1u) != 0; }
};

enum class DesignFormat {
  pm1,       // tokens -1 / 1
  zero_one,  // tokens 0 / 1, 0 maps to -1
};

class Design {
 public:
  // Rows are given as bit masks; validates 1 <= m <= 30, N >= 1, masks < 2^m.
  Design(int m, std::vector<std::uint32_t> rows);

  int factor_count() const { return m_; }
  int run_count() const { return static_cast<int>(rows_.size()); }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << m_) - 1; }

  std::span<const std::uint32_t> rows() const { return rows_; }
  std::uint32_t row_mask(int h) const { return rows_[static_cast<std::size_t>(h)]; }

  // Entry as +1/-1.
  int level(int h, int j) const {
    return (rows_[static_cast<std::size_t>(h)] >> j & 1u) ? +1 : -1;
  }

 private:
  int m_;
  std::vector<std::uint32_t> rows_;
};

// Parses one run per line; tokens split on whitespace and commas, '#' starts
// a comment, blank lines are skipped. Throws ParseError on bad tokens or
// ragged rows, DimensionError when m > 30 or the input holds no runs.
Design load_design(std::istream& in, DesignFormat format = DesignFormat::pm1);
Design load_design(const std::string& text, DesignFormat format = DesignFormat::pm1);
Design load_design_file(const std::string& path, DesignFormat format = DesignFormat::pm1);

// Canonical text form: one run per line, space-separated -1/1 tokens.
std::string save_design(const Design& d);

bool has_distinct_rows(const Design& d);

// All transforms return new values; Design is immutable after construction.
Design negate_column(const Design& d, int j);
Design flip_coordinate(const Design& d, int h, int j);

// new(h, j) = old(row_perm[h], col_perm[j]); both arguments must be
// permutations of their index ranges.
Design permute(const Design& d, std::span<const int> row_perm,
               std::span<const int> col_perm);

}  // namespace wordcount

#include "wordcount/design.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string_view>

namespace wordcount {
namespace {

void check_indices(const Design& d, int h, int j) {
  if (h < 0 || h >= d.run_count())
    throw DimensionError("run index " + std::to_string(h) + " out of range [0, " +
                         std::to_string(d.run_count()) + ")");
  if (j < 0 || j >= d.factor_count())
    throw DimensionError("factor index " + std::to_string(j) + " out of range [0, " +
                         std::to_string(d.factor_count()) + ")");
}

int parse_token(std::string_view tok, DesignFormat format, int line_no) {
  if (format == DesignFormat::pm1) {
    if (tok == "1" || tok == "+1") return +1;
    if (tok == "-1") return -1;
  } else {
    if (tok == "1") return +1;
    if (tok == "0") return -1;
  }
  throw ParseError("line " + std::to_string(line_no) + ": invalid token '" +
                   std::string(tok) + "'");
}

}  // namespace

Design::Design(int m, std::vector<std::uint32_t> rows)
    : m_(m), rows_(std::move(rows)) {
  if (m_ < 1 || m_ > kMaxFactors)
    throw DimensionError("factor count must be in [1, " +
                         std::to_string(kMaxFactors) + "], got " + std::to_string(m_));
  if (rows_.empty()) throw DimensionError("design must have at least one run");
  const std::uint32_t full = full_mask();
  for (const auto r : rows_)
    if (r > full) throw DimensionError("row mask exceeds 2^m");
}

Design load_design(std::istream& in, DesignFormat format) {
  std::vector<std::uint32_t> rows;
  int m = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string tok;
    std::uint32_t mask = 0;
    int count = 0;
    while (fields >> tok) {
      if (count >= kMaxFactors + 1)
        throw DimensionError("line " + std::to_string(line_no) + ": more than " +
                             std::to_string(kMaxFactors) + " factors");
      if (parse_token(tok, format, line_no) > 0) mask |= std::uint32_t{1} << count;
      ++count;
    }
    if (count == 0) continue;  // blank or comment-only line
    if (count > kMaxFactors)
      throw DimensionError("line " + std::to_string(line_no) + ": more than " +
                           std::to_string(kMaxFactors) + " factors");
    if (m < 0) m = count;
    if (count != m)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(m) + " tokens, got " + std::to_string(count));
    rows.push_back(mask);
  }
  if (m < 0) throw DimensionError("empty design input");
  return Design(m, std::move(rows));
}

Design load_design(const std::string& text, DesignFormat format) {
  std::istringstream in(text);
  return load_design(in, format);
}

Design load_design_file(const std::string& path, DesignFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open design file '" + path + "'");
  return load_design(in, format);
}

std::string save_design(const Design& d) {
  std::string out;
  for (int h = 0; h < d.run_count(); ++h) {
    for (int j = 0; j < d.factor_count(); ++j) {
      if (j > 0) out.push_back(' ');
      out += d.level(h, j) > 0 ? "1" : "-1";
    }
    out.push_back('\n');
  }
  return out;
}

bool has_distinct_rows(const Design& d) {
  std::vector<std::uint32_t> sorted(d.rows().begin(), d.rows().end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Design negate_column(const Design& d, int j) {
  check_indices(d, 0, j);
  std::vector<std::uint32_t> rows(d.rows().begin(), d.rows().end());
  for (auto& r : rows) r ^= std::uint32_t{1} << j;
  return Design(d.factor_count(), std::move(rows));
}

Design flip_coordinate(const Design& d, int h, int j) {
  check_indices(d, h, j);
  std::vector<std::uint32_t> rows(d.rows().begin(), d.rows().end());
  rows[static_cast<std::size_t>(h)] ^= std::uint32_t{1} << j;
  return Design(d.factor_count(), std::move(rows));
}

namespace {

void check_permutation(std::span<const int> perm, int size, const char* what) {
  if (static_cast<int>(perm.size()) != size)
    throw DimensionError(std::string(what) + " permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  for (const int p : perm) {
    if (p < 0 || p >= size || seen[static_cast<std::size_t>(p)])
      throw DimensionError(std::string(what) + " argument is not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

Design permute(const Design& d, std::span<const int> row_perm,
               std::span<const int> col_perm) {
  check_permutation(row_perm, d.run_count(), "row");
  check_permutation(col_perm, d.factor_count(), "column");
  std::vector<std::uint32_t> rows;
  rows.reserve(static_cast<std::size_t>(d.run_count()));
  for (int h = 0; h < d.run_count(); ++h) {
    const std::uint32_t src = d.row_mask(row_perm[static_cast<std::size_t>(h)]);
    std::uint32_t mask = 0;
    for (int j = 0; j < d.factor_count(); ++j)
      if (src >> col_perm[static_cast<std::size_t>(j)] & 1u)
        mask |= std::uint32_t{1} << j;
    rows.push_back(mask);
  }
  return Design(d.factor_count(), std::move(rows));
}

}  // namespace wordcount

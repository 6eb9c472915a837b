#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lop {

// Square weight matrix of a linear ordering instance, row-major. The
// diagonal is stored as read but never contributes to the objective.
struct LopInstance {
  std::string name;
  int n = 0;
  std::vector<std::int64_t> weights;  // n*n entries

  std::int64_t weight(int i, int j) const {
    return weights[static_cast<std::size_t>(i) * n + j];
  }
  std::int64_t& weight(int i, int j) {
    return weights[static_cast<std::size_t>(i) * n + j];
  }

  friend bool operator==(const LopInstance&, const LopInstance&) = default;
};

struct GeneratorSpec {
  int n = 0;
  std::int64_t weight_low = 0;
  std::int64_t weight_high = 0;
  std::uint64_t seed = 0;
};

// Reads the LOLIB text convention: an optional name line (a first line whose
// first non-space character is neither a digit nor '-'), the dimension n,
// then exactly n*n integers in row-major order across arbitrary line breaks.
// `fallback_name` is used when the file carries no name line.
//
// Throws ParseError on a non-integer token, n <= 0, a token count other than
// n*n, or an entry outside the signed 64-bit range.
LopInstance parse_instance(std::istream& in, std::string_view fallback_name = "");
LopInstance parse_instance(std::string_view text, std::string_view fallback_name = "");

// Loads from a file; the fallback name is the filename stem.
LopInstance load_instance(const std::filesystem::path& path);

// Emits a name line (when the name is non-empty), the n line, then n rows of
// n integers. parse_instance(write_instance(x)) reproduces x field for field
// as long as the name does not start with a digit or '-'.
void write_instance(const LopInstance& inst, std::ostream& out);
std::string write_instance(const LopInstance& inst);
void save_instance(const LopInstance& inst, const std::filesystem::path& path);

// Uniform off-diagonal weights in [weight_low, weight_high], zero diagonal.
// Deterministic: the same GeneratorSpec always yields the same matrix.
LopInstance generate_instance(const GeneratorSpec& spec);

// Content digest over n and the weight entries (name excluded); used to
// align report rows that must refer to the same matrix.
std::uint64_t instance_digest(const LopInstance& inst);

}  // namespace lop

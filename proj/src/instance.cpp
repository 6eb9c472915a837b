#include "lop/instance.hpp"

#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lop/errors.hpp"
#include "lop/rng.hpp"

namespace lop {

namespace {

// Keeps a hostile n from requesting an absurd allocation before the token
// count check can fire. Far above every published LOLIB size.
constexpr int kMaxDimension = 32768;

const char* skip_space(const char* p, const char* end) {
  while (p != end && std::isspace(static_cast<unsigned char>(*p))) ++p;
  return p;
}

const char* token_end(const char* p, const char* end) {
  while (p != end && !std::isspace(static_cast<unsigned char>(*p))) ++p;
  return p;
}

std::int64_t parse_int_token(const char*& p, const char* end,
                             const char* what) {
  p = skip_space(p, end);
  if (p == end) throw ParseError(std::string("missing ") + what);
  const char* te = token_end(p, end);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(p, te, value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string(what) + " '" + std::string(p, te) +
                     "' outside signed 64-bit range");
  if (ec != std::errc() || ptr != te)
    throw ParseError(std::string("malformed ") + what + " '" +
                     std::string(p, te) + "' (integers only)");
  p = te;
  return value;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

LopInstance parse_instance(std::string_view text, std::string_view fallback_name) {
  // First line is a name when its first non-space character cannot start an
  // integer; otherwise the matrix data begins immediately.
  std::size_t eol = text.find('\n');
  std::string_view first_line = text.substr(0, eol == std::string_view::npos ? text.size() : eol);
  std::string name;
  std::string_view body = text;
  std::size_t lead = first_line.find_first_not_of(" \t\r");
  bool has_name_line =
      lead == std::string_view::npos ||
      (!std::isdigit(static_cast<unsigned char>(first_line[lead])) &&
       first_line[lead] != '-');
  if (has_name_line) {
    name = trim(first_line);
    body = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
  }
  if (name.empty()) name = std::string(fallback_name);

  const char* p = body.data();
  const char* end = body.data() + body.size();

  std::int64_t n64 = parse_int_token(p, end, "dimension");
  if (n64 <= 0) throw ParseError("dimension must be positive, got " + std::to_string(n64));
  if (n64 > kMaxDimension)
    throw ParseError("dimension " + std::to_string(n64) + " exceeds the parser cap");
  int n = static_cast<int>(n64);

  LopInstance inst;
  inst.name = std::move(name);
  inst.n = n;
  inst.weights.resize(static_cast<std::size_t>(n) * n);
  std::size_t want = inst.weights.size();
  for (std::size_t k = 0; k < want; ++k) {
    p = skip_space(p, end);
    if (p == end)
      throw ParseError("matrix token count mismatch: expected " +
                       std::to_string(want) + " entries, got " + std::to_string(k));
    inst.weights[k] = parse_int_token(p, end, "matrix entry");
  }
  p = skip_space(p, end);
  if (p != end)
    throw ParseError("matrix token count mismatch: trailing data after " +
                     std::to_string(want) + " entries");
  return inst;
}

LopInstance parse_instance(std::istream& in, std::string_view fallback_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(std::string_view(buf.view()), fallback_name);
}

LopInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file '" + path.string() + "'");
  return parse_instance(in, path.stem().string());
}

void write_instance(const LopInstance& inst, std::ostream& out) {
  if (!inst.name.empty()) out << inst.name << '\n';
  out << inst.n << '\n';
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (j) out << ' ';
      out << inst.weight(i, j);
    }
    out << '\n';
  }
}

std::string write_instance(const LopInstance& inst) {
  std::ostringstream out;
  write_instance(inst, out);
  return out.str();
}

void save_instance(const LopInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_instance(inst, out);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

LopInstance generate_instance(const GeneratorSpec& spec) {
  if (spec.n <= 0) throw ConfigError("generator dimension must be positive");
  if (spec.weight_low > spec.weight_high)
    throw ConfigError("generator bounds invalid: low " +
                      std::to_string(spec.weight_low) + " > high " +
                      std::to_string(spec.weight_high));
  LopInstance inst;
  inst.name = "gen-n" + std::to_string(spec.n) + "-s" + std::to_string(spec.seed);
  inst.n = spec.n;
  inst.weights.assign(static_cast<std::size_t>(spec.n) * spec.n, 0);
  Rng rng(spec.seed);
  std::uniform_int_distribution<std::int64_t> dist(spec.weight_low, spec.weight_high);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      if (i != j) inst.weight(i, j) = dist(rng);
  return inst;
}

std::uint64_t instance_digest(const LopInstance& inst) {
  std::uint64_t h = fnv1a64(std::string_view("lop-instance"));
  auto mix_int = [&h](std::int64_t v) {
    char bytes[8];
    std::memcpy(bytes, &v, 8);
    h = fnv1a64(std::string_view(bytes, 8), h);
  };
  mix_int(inst.n);
  for (std::int64_t w : inst.weights) mix_int(w);
  return h;
}

}  // namespace lop

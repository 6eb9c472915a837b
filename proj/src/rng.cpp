#include "lop/rng.hpp"

namespace lop {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view instance_name,
                          std::uint64_t run_index) {
  std::uint64_t h = fnv1a64(instance_name);
  h = mix64(h ^ mix64(base));
  h = mix64(h ^ mix64(run_index));
  return h;
}

}  // namespace lop

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lop {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 14695981039346656037ull);

// Stable per-run seed for (base seed, instance name, run index). Pure
// arithmetic, so campaign seeds reproduce across platforms and builds.
std::uint64_t derive_seed(std::uint64_t base, std::string_view instance_name,
                          std::uint64_t run_index);

}  // namespace lop

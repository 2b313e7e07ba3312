#pragma once

#include <cstdint>
#include <random>

namespace l1cp {

/// Disjoint counter namespaces for substreams derived from one root seed.
enum class Stream : std::uint64_t {
    ClassicalBootstrap = 1,
    EtaBootstrap = 2,
    ScenarioData = 3,
    ExperimentBootstrap = 4,
    FarOperator = 5,
};

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for substream (root, stream, index). Depends only on its arguments, so
/// results do not depend on the order in which substreams are consumed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                                                  std::uint64_t index) noexcept {
    return splitmix64(splitmix64(root ^ splitmix64(static_cast<std::uint64_t>(stream))) + index);
}

[[nodiscard]] inline std::mt19937_64 make_engine(std::uint64_t root, Stream stream, std::uint64_t index) {
    return std::mt19937_64(derive_seed(root, stream, index));
}

}  // namespace l1cp

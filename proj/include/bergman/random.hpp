#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace bergman {

/// Engine seeded from a user seed plus call-specific tags, so that independent
/// streams (per chunk, per group sample, ...) never depend on scheduling.
inline std::mt19937_64 derived_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (tags.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto t : tags) push(t);
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

// stream tags
inline constexpr std::uint64_t tag_measure = 0x6d656173;   // "meas"
inline constexpr std::uint64_t tag_haar = 0x68616172;      // "haar"
inline constexpr std::uint64_t tag_sphere = 0x73706872;    // "sphr"
inline constexpr std::uint64_t tag_probe = 0x70726f62;     // "prob"

} // namespace bergman

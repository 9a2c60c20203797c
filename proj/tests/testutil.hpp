#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "mcg/word.hpp"

namespace testutil {

// deterministic xorshift generator for the property suites
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

inline mcg::Word random_word(Rng& rng, int rank, int len) {
    std::vector<int> raw;
    for (int i = 0; i < len; ++i) {
        int g = rng.range(1, rank);
        raw.push_back(rng.range(0, 1) ? g : -g);
    }
    return mcg::Word::reduce(raw);
}

inline std::string data_dir() {
    if (const char* env = std::getenv("FIBERTOOL_DATA")) return env;
    return "data";
}

}  // namespace testutil

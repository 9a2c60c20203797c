#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcg/word.hpp"

namespace mcg {

// chi(X) = 4(g-1)(h-1) + k
long long euler_char(int g, int h, long long k);

// c1^2 = 3 sigma + 2 chi, c2 = chi
std::pair<long long, long long> chern_numbers(long long chi, long long sigma);

struct SigmaInterval {
    long long lo = 0, hi = 0;
    bool lower_applicable = false;
    bool upper_applicable = false;
    long long strengthened_hi = 0;  // floor(k - 2s - 2n/(2g+1)); reported only
    std::vector<std::string> notes;
};
SigmaInterval sigma_interval(int g, int h, long long n, long long s);

// 4 | sigma + chi
bool constraint_c2(long long sigma, long long chi);

// s <= 6(3g-1)(h-1) + 5n
bool constraint_c3(int g, int h, long long n, long long s);

struct Congruence {
    bool applicable = false;
    bool pass = true;
    std::string note;
};
// torus base: genus-2 fibrations need n + 2s = 0 (mod 10); genus 1 needs
// n = 0 (mod 12); trivial for g >= 3
Congruence abelianization_congruence(int g, long long n, long long s);

struct ConstraintVerdict {
    std::string id;
    bool applicable = false;
    bool pass = true;
    std::string witness;
};

struct TupleVerdict {
    long long n = 0, s = 0, sigma = 0;
    bool sigma_listed = true;  // false when sigma is unbounded below (g = 1)
    std::vector<ConstraintVerdict> verdicts;
    bool survives = false;
};

struct FeasibilityReport {
    int g = 0, h = 0;
    long long k = 0;
    std::vector<TupleVerdict> tuples;
    std::vector<std::array<long long, 3>> survivors;  // (n, s, sigma)
};
FeasibilityReport feasible_tuples(int g, int h, long long k);

std::optional<long long> min_feasible_k(int g, int h, long long k_max = 100);

struct BoundsRow {
    int g = 0;
    long long lo = 0, hi = 0;
    std::string lo_provenance, hi_provenance;
};
std::vector<BoundsRow> n_bounds_table(int g_max);

struct PullbackScale {
    long long chi = 0, k = 0, n = 0, s = 0;
    long long sigma_lo = 0, sigma_hi = 0;
    bool sigma_bounds_applicable = false;
    long long b1_cap = 0;
};
PullbackScale pullback_scale(int g, int h, long long n, long long s, long long m);

}  // namespace mcg

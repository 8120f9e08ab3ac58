#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t310/error.hpp"

namespace t310 {

// Long-term key: wiring functions P(1..27) and D(1..9) plus an id label.
// D(i) = 0 means the S1 key bit is wired in place of a state bit.
struct LzsKey {
    std::string id;
    std::array<int, 27> P{};   // values in 1..36
    std::array<int, 9> D{};    // values in 0..36

    int p(int j) const { return P[j - 1]; }   // 1-based accessors
    int d(int i) const { return D[i - 1]; }
};

// `<id>: P=<27 ints> D=<9 ints>`, free whitespace/line wraps, '#' comments.
LzsKey parse_lzs(std::string_view text);
std::vector<LzsKey> parse_lzs_file(std::string_view text);
std::string format_lzs(const LzsKey& key);

struct Kt1Switches {
    bool require_p6_eq_d8 = true;
    bool require_p13_eq_d7 = true;
};

struct Validation {
    int tier = 0;                          // highest tier attained: 0, 1, 2
    std::vector<std::string> violations;   // all failures above the attained tier
    bool at_least(int t) const { return tier >= t; }
};

// tier0: ranges only. tier1 ("regular"): P and D injective, every D(i) a
// multiple of 4 (0 permitted). tier2 ("KT1 fragment"): tier1 + D(1)=0 +
// P(6)=D(8) + P(13)=D(7) + single 9-cycle condition.
Validation validate(const LzsKey& key, const Kt1Switches& sw = {});

struct Kt1CycleResult {
    bool pass = false;
    std::vector<int> cycle;    // canonical rotation starting at 1
    std::string reason;        // failure explanation
};

// Replace D(1) by P(20), divide by 4; pass iff the map is a permutation of
// {1..9} with exactly one 9-cycle.
Kt1CycleResult kt1_cycle_check(const LzsKey& key);

struct SubsetConstraint {
    std::vector<int> values;          // each must land in one of the slots
    std::vector<std::string> slots;   // e.g. "P21", "D3"
};

struct KeygenConstraints {
    int tier = 0;
    std::map<std::string, int> fixed;               // slot -> value
    std::vector<SubsetConstraint> subset_of;
    std::map<std::string, std::vector<int>> forbid; // slot -> excluded values
    Kt1Switches switches;
};

// Randomized backtracking fill honoring constraints and the requested tier.
// Deterministic for a fixed seed. Returns fewer than `count` keys only after
// exhausting `budget` backtrack nodes.
std::vector<LzsKey> keygen(const KeygenConstraints& c, int count, std::uint64_t seed,
                           std::uint64_t budget = 1000000);

KeygenConstraints parse_constraints_json(std::string_view text);

}  // namespace t310

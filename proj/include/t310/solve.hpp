#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "t310/fe.hpp"
#include "t310/gf2.hpp"

namespace t310 {

struct SolveOptions {
    std::optional<int> degree_cap;          // force Zk with popcount(k) > cap to 0
    std::vector<int> forced_zero_coeffs;    // additional Zk forced to 0
    std::uint64_t enumerate_cap = std::uint64_t{1} << 24;
    bool exclude_constant_zero = false;     // the Z != 0 side condition
};

struct ZSolution {
    BooleanFunc z;
    std::vector<std::pair<VarId, int>> extra;   // template symbol values
};

struct SolutionSet {
    enum class Kind { Affine, Explicit, Unsat, Partial };
    Kind kind = Kind::Unsat;

    // Unknown order: Z00..Z63 then any template symbols, as bit vectors.
    std::vector<VarId> unknowns;
    gf2::BitVec particular;            // Affine: lexicographically smallest member
    std::vector<gf2::BitVec> basis;    // Affine: homogeneous space basis
    std::vector<ZSolution> members;    // Explicit: all solutions, canonical order
    bool excludes_zero = false;        // all-zero coefficient vector removed
    std::string note;

    bool count_exact = true;           // false: count is a lower bound (Partial)
    double count_log2 = 0;             // for Affine counts beyond 2^63
    std::uint64_t count = 0;

    int dimension() const { return static_cast<int>(basis.size()); }
    bool contains(const BooleanFunc& z, const std::vector<std::pair<VarId, int>>& extra = {}) const;
};

// Linear elimination, substitution into the nonlinear residue, then bounded
// exhaustive search over the remaining free variables.
SolutionSet fe_solve(const FeSystem& sys, const SolveOptions& opts = {});

// True iff every constraint vanishes at z's ANF coefficients (and the given
// template symbol values).
bool check_solution(const FeSystem& sys, const BooleanFunc& z,
                    const std::vector<std::pair<VarId, int>>& extra = {});

struct DimacsOptions {
    bool exclude_constant_zero = false;
};

// CNF over variables 1..64 = Z00..Z63 (then template symbols, then Tseitin
// auxiliaries); satisfying assignments project exactly onto system solutions.
std::string dimacs_export(const FeSystem& sys, const DimacsOptions& opts = {});

}  // namespace t310

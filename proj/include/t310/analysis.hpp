#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "t310/fe.hpp"
#include "t310/round.hpp"

namespace t310 {

// Values of a polynomial over all assignments of its support (<= 30 vars),
// bit-packed; assignment index bit j corresponds to support()[j].
class TruthMap {
public:
    explicit TruthMap(const Polynomial& p, int max_support = 30);

    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    const std::vector<VarId>& support() const { return support_; }
    bool at(std::uint64_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1; }
    std::uint64_t count_of(bool value) const;
    std::optional<int> position_of(VarId v) const;

private:
    int n_ = 0;
    std::vector<VarId> support_;
    std::vector<std::uint64_t> bits_;
};

struct EventFix {
    VarId var;
    int bit;
};

// Number of support assignments with inv = 0.
std::int64_t zero_count(const Polynomial& inv);

// Number of support assignments extending `event` with inv = cond.
std::int64_t event_count(const Polynomial& inv, const std::vector<EventFix>& event, int cond);

struct BiasWitness {
    std::vector<VarId> vars;
    std::vector<int> pattern;
    std::int64_t count = 0;
    double expected = 0;
};

struct BiasReport {
    int support_size = 0;
    std::int64_t zeros = 0;
    int min_biased_n = -1;                 // -1: balanced up to max_n
    int searched_max_n = 0;
    std::optional<BiasWitness> witness;
};

// Smallest N <= max_n such that some N-subset of the support has a
// non-uniform joint distribution conditioned on inv = 0 (subsets and patterns
// scanned in lexicographic order; first witness reported).
BiasReport min_biased_n(const Polynomial& inv, int max_n = 6);

struct FactorReport {
    std::vector<Polynomial> factors;   // affine l != 1 with l*inv = inv
    bool irreducible = false;          // no such factor exists
};

// Functional affine factors: all affine l with l = 1 on {inv = 1}. Detects
// exactly affine factors, a weaker notion than ring irreducibility.
FactorReport linear_factors(const Polynomial& inv);

struct LinearScanResult {
    CaseSpec c;
    std::vector<Polynomial> basis;   // linear forms invariant with probability 1
};

// Exact scan over all 2^36 linear forms via rank <= 36 elimination.
LinearScanResult linear_invariant_scan(const LzsKey& key, const BooleanFunc& z, const CaseSpec& c);

// Optional fixed (F, S1, S2) streams; each is cycled, empty = draw from RNG.
struct Schedule {
    std::vector<std::array<int, 2>> s_bits;   // (S1, S2) per round
    std::vector<int> f_bits;
};

// Random states through `rounds` rounds; counts steps where inv changes value.
// Per-sample bit streams are derived from (seed, sample index), so the result
// is independent of the worker count.
std::uint64_t empirical_verify(const LzsKey& key, const BooleanFunc& z, const Polynomial& inv,
                               int rounds, int samples, std::uint64_t seed,
                               const Schedule* schedule = nullptr, int workers = 1);

struct ProbePoint {
    int round;
    std::uint64_t count;
    double frequency;
};

// Frequency of probe = 1 per round over states sampled from {inv = cond}.
std::vector<ProbePoint> bias_propagation(const LzsKey& key, const BooleanFunc& z,
                                         const Polynomial& inv, const Polynomial& probe, int cond,
                                         int rounds, int samples, std::uint64_t seed,
                                         const Schedule* schedule = nullptr);

}  // namespace t310

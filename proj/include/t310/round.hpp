#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "t310/lzs.hpp"
#include "t310/poly.hpp"

namespace t310 {

// 36-bit cipher state, positions 1..36.
struct State {
    std::uint64_t bits = 0;   // bit i = x_i, i in 1..36

    int get(int i) const { return static_cast<int>((bits >> i) & 1); }
    void set(int i, int b) {
        bits = (bits & ~(std::uint64_t{1} << i)) | (static_cast<std::uint64_t>(b & 1) << i);
    }
};

struct RoundBits {
    int f = 0;    // public, IV-derived
    int s1 = 0;   // key bit, alias K
    int s2 = 0;   // key bit, alias L
};

State parse_state(std::string_view text);          // 36-char bit string or 9 hex digits
std::string format_state(const State& s);          // bit string, position 1 leftmost
std::string format_state_hex(const State& s);      // 9 nibbles, x1 is the MSB of digit 0
RoundBits parse_round_bits(std::string_view text); // "F,S1,S2"

enum class ZMode { Opaque, Concrete };

struct RoundOptions {
    // Replace the additive taps x_P(6), x_P(13), x_P(20) by the placeholder
    // symbols P6, P13, P20 (wiring left generic). Instance inputs stay concrete.
    bool placeholder_taps = false;
};

// The four round-function instances and their 6 input variables:
// Z1 = Z(L, xP(1..5)), Z2 = Z(xP(7..12)), Z3 = Z(xP(14..19)), Z4 = Z(xP(21..26)).
std::array<std::array<VarId, 6>, 4> instance_inputs(const LzsKey& key);

// ANF of each output bit y_1..y_36 over {x1..x36, F, K, L} plus, in opaque
// mode, the instance symbols Z, Y, X, W. x_D(i) reads as K when D(i) = 0.
// Returned array index i-1 holds y_i.
std::array<Polynomial, 36> round_anf(const LzsKey& key, ZMode mode,
                                     const BooleanFunc* z = nullptr,
                                     const RoundOptions& opts = {});

// The nine cumulative XOR chains feeding y33, y29, ..., y1 (everything in
// each equation except the trailing x_D(i) term). Debug/experiment surface.
std::array<Polynomial, 9> round_chains(const LzsKey& key, ZMode mode,
                                       const BooleanFunc* z = nullptr,
                                       const RoundOptions& opts = {});

// Fast bit-level evaluation of one round.
State round_eval(const LzsKey& key, const BooleanFunc& z, const State& s, const RoundBits& rb);

// Diagnostic, not a correctness gate: maps `samples` random states through one
// round and counts output collisions.
int sampled_injectivity(const LzsKey& key, const BooleanFunc& z, const RoundBits& rb,
                        int samples, std::uint64_t seed);

}  // namespace t310

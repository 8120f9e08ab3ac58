#include "t310/round.hpp"

#include <random>
#include <unordered_set>

namespace t310 {

State parse_state(std::string_view text) {
    State s;
    if (text.size() == 36) {
        for (int i = 0; i < 36; ++i) {
            if (text[i] != '0' && text[i] != '1') throw ParseError("state bits must be 0/1");
            s.set(i + 1, text[i] - '0');
        }
        return s;
    }
    if (text.size() == 9) {
        for (int n = 0; n < 9; ++n) {
            char c = text[n];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw ParseError("bad hex digit in state");
            for (int b = 0; b < 4; ++b) s.set(4 * n + 1 + b, (d >> (3 - b)) & 1);
        }
        return s;
    }
    throw ParseError("state must be 36 bits or 9 hex digits");
}

std::string format_state(const State& s) {
    std::string out(36, '0');
    for (int i = 1; i <= 36; ++i) out[i - 1] = static_cast<char>('0' + s.get(i));
    return out;
}

std::string format_state_hex(const State& s) {
    static const char* digits = "0123456789abcdef";
    std::string out(9, '0');
    for (int n = 0; n < 9; ++n) {
        int d = 0;
        for (int b = 0; b < 4; ++b) d |= s.get(4 * n + 1 + b) << (3 - b);
        out[n] = digits[d];
    }
    return out;
}

RoundBits parse_round_bits(std::string_view text) {
    if (text.size() != 5 || text[1] != ',' || text[3] != ',')
        throw ParseError("round bits must look like \"F,S1,S2\", e.g. \"0,1,0\"");
    auto bit = [&](char c) {
        if (c != '0' && c != '1') throw ParseError("round bits must be 0/1");
        return c - '0';
    };
    return RoundBits{bit(text[0]), bit(text[2]), bit(text[4])};
}

namespace {

// Range-only (tier 0) gate; evaluation is well-defined for any injective or
// even non-injective wiring as long as the values are in range.
void require_tier0(const LzsKey& key) {
    for (int j = 1; j <= 27; ++j)
        if (key.p(j) < 1 || key.p(j) > 36)
            throw Error("key " + key.id + ": P(" + std::to_string(j) + ") out of range");
    for (int i = 1; i <= 9; ++i)
        if (key.d(i) < 0 || key.d(i) > 36)
            throw Error("key " + key.id + ": D(" + std::to_string(i) + ") out of range");
}

}  // namespace

std::array<std::array<VarId, 6>, 4> instance_inputs(const LzsKey& key) {
    require_tier0(key);
    std::array<std::array<VarId, 6>, 4> in{};
    in[0][0] = kVarL;
    for (int i = 0; i < 5; ++i) in[0][i + 1] = state_var(key.p(1 + i));
    for (int i = 0; i < 6; ++i) in[1][i] = state_var(key.p(7 + i));
    for (int i = 0; i < 6; ++i) in[2][i] = state_var(key.p(14 + i));
    for (int i = 0; i < 6; ++i) in[3][i] = state_var(key.p(21 + i));
    return in;
}

namespace {

// ANF of one instance: opaque symbol, or the concrete function's ANF with
// formal inputs e1..e6 substituted by the instance's wires.
Polynomial instance_poly(int inst, const std::array<VarId, 6>& wires, ZMode mode,
                         const BooleanFunc* z) {
    if (mode == ZMode::Opaque)
        return Polynomial::var(static_cast<VarId>(kVarZ1 + inst));
    if (!z) throw Error("concrete round form requires a Boolean function");
    std::uint64_t coeffs = moebius64(z->tt);
    std::vector<Monomial> terms;
    for (unsigned k = 0; k < 64; ++k) {
        if (!((coeffs >> k) & 1)) continue;
        Monomial m;
        for (int b = 0; b < 6; ++b)
            if ((k >> b) & 1) m = m.with(wires[b]);
        terms.push_back(m);
    }
    return Polynomial::from_terms(std::move(terms));
}

Polynomial d_tap(const LzsKey& key, int i) {
    int v = key.d(i);
    return v == 0 ? Polynomial::var(kVarK) : Polynomial::var(state_var(v));
}

}  // namespace

std::array<Polynomial, 9> round_chains(const LzsKey& key, ZMode mode, const BooleanFunc* z,
                                       const RoundOptions& opts) {
    auto wires = instance_inputs(key);
    auto tap = [&](int j, VarId placeholder) {
        return opts.placeholder_taps ? Polynomial::var(placeholder)
                                     : Polynomial::var(state_var(key.p(j)));
    };
    std::array<Polynomial, 9> c;
    c[0] = Polynomial::var(kVarF);
    c[1] = c[0] + instance_poly(0, wires[0], mode, z);
    c[2] = c[1] + tap(6, kVarP6);
    c[3] = c[2] + instance_poly(1, wires[1], mode, z);
    c[4] = c[3] + tap(13, kVarP13);
    c[5] = c[4] + Polynomial::var(kVarL) + instance_poly(2, wires[2], mode, z);
    c[6] = c[5] + tap(20, kVarP20);
    c[7] = c[6] + instance_poly(3, wires[3], mode, z);
    c[8] = c[7] + Polynomial::var(state_var(key.p(27)));
    return c;
}

std::array<Polynomial, 36> round_anf(const LzsKey& key, ZMode mode, const BooleanFunc* z,
                                     const RoundOptions& opts) {
    auto chains = round_chains(key, mode, z, opts);
    std::array<Polynomial, 36> out;
    // Shifts: y_{i+1} = x_i for i not a multiple of 4.
    for (int i = 1; i <= 35; ++i)
        if (i % 4 != 0) out[i] = Polynomial::var(state_var(i));   // index i holds y_{i+1}
    // Fresh bits y_{4k+1}: chain 9-k plus the D tap.
    for (int k = 0; k <= 8; ++k) out[4 * k] = chains[8 - k] + d_tap(key, k + 1);
    return out;
}

State round_eval(const LzsKey& key, const BooleanFunc& z, const State& s, const RoundBits& rb) {
    require_tier0(key);
    auto xb = [&](int i) { return i == 0 ? rb.s1 : s.get(i); };
    int z1 = z.eval(rb.s2, xb(key.p(1)), xb(key.p(2)), xb(key.p(3)), xb(key.p(4)), xb(key.p(5)));
    int z2 = z.eval(xb(key.p(7)), xb(key.p(8)), xb(key.p(9)), xb(key.p(10)), xb(key.p(11)),
                    xb(key.p(12)));
    int z3 = z.eval(xb(key.p(14)), xb(key.p(15)), xb(key.p(16)), xb(key.p(17)), xb(key.p(18)),
                    xb(key.p(19)));
    int z4 = z.eval(xb(key.p(21)), xb(key.p(22)), xb(key.p(23)), xb(key.p(24)), xb(key.p(25)),
                    xb(key.p(26)));
    int c[9];
    c[0] = rb.f;
    c[1] = c[0] ^ z1;
    c[2] = c[1] ^ xb(key.p(6));
    c[3] = c[2] ^ z2;
    c[4] = c[3] ^ xb(key.p(13));
    c[5] = c[4] ^ rb.s2 ^ z3;
    c[6] = c[5] ^ xb(key.p(20));
    c[7] = c[6] ^ z4;
    c[8] = c[7] ^ xb(key.p(27));

    State out;
    for (int i = 1; i <= 35; ++i)
        if (i % 4 != 0) out.set(i + 1, s.get(i));
    for (int k = 0; k <= 8; ++k) out.set(4 * k + 1, c[8 - k] ^ xb(key.d(k + 1)));
    return out;
}

int sampled_injectivity(const LzsKey& key, const BooleanFunc& z, const RoundBits& rb,
                        int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> in, out;
    int collisions = 0;
    for (int n = 0; n < samples; ++n) {
        State s{rng() & ((std::uint64_t{1} << 37) - 2)};
        if (!in.insert(s.bits).second) continue;
        State y = round_eval(key, z, s, rb);
        if (!out.insert(y.bits).second) ++collisions;
    }
    return collisions;
}

}  // namespace t310

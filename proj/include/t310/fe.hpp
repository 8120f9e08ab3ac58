#pragma once

#include <optional>
#include <vector>

#include "t310/round.hpp"

namespace t310 {

// Candidate invariant: a fixed polynomial over state variables, optionally
// extended by template basis polynomials weighted by unknown user symbols.
struct InvariantCandidate {
    Polynomial poly;
    std::vector<std::pair<VarId, Polynomial>> templ;   // (coefficient symbol, basis)

    InvariantCandidate() = default;
    explicit InvariantCandidate(Polynomial p) : poly(std::move(p)) {}

    Polynomial combined() const;   // poly + sum coeff*basis
    void check_support() const;    // state vars (+ user symbols) only
};

enum class FeMode { Opaque, Expanded, Concrete };

// One of the up to 8 (F, K, L) evaluation cases; unset components stay
// symbolic (partial case).
struct CaseSpec {
    std::optional<int> f, k, l;

    static CaseSpec full(int f, int k, int l) { return {f, k, l}; }
    bool is_full() const { return f && k && l; }
    std::string str() const;
};

std::vector<CaseSpec> all_cases();                       // the 8 full cases
CaseSpec parse_case(std::string_view text);              // "F=0,K=1,L=0", parts optional
std::vector<CaseSpec> parse_cases(std::string_view text);// ';'-separated, "all" = all 8

// P(inputs) + P(outputs) after one round. Opaque keeps the instance symbols
// Z,Y,X,W; Expanded replaces each instance by its ANF in the shared
// coefficient variables Z00..Z63 over that instance's wires; Concrete plugs
// a truth table. The invariant holds for a case iff the specialized FE is 0.
Polynomial fe_build(const LzsKey& key, const InvariantCandidate& inv, FeMode mode,
                    const BooleanFunc* z = nullptr, const RoundOptions& opts = {},
                    const Limits& lim = default_limits());

// Fix F/K/L to constants (partial cases allowed).
Polynomial fe_specialize(const Polynomial& fe, const CaseSpec& c);

// Constraint system on the Z-coefficient variables: the expanded FE is
// specialized per case and grouped by state monomial; each group's
// coefficient polynomial (over Z00..Z63 and template symbols, plus any F/K/L
// left symbolic by a partial case) must vanish.
struct FeSystem {
    std::vector<CaseSpec> cases;
    std::vector<std::pair<Monomial, Polynomial>> constraints;   // sorted, deduplicated

    bool fe_zero() const { return constraints.empty(); }
    std::string text_report(const SymbolTable* syms = nullptr) const;
};

FeSystem fe_extract_system(const LzsKey& key, const InvariantCandidate& inv,
                           const std::vector<CaseSpec>& cases,
                           const RoundOptions& opts = {},
                           const Limits& lim = default_limits());

// Per-case one-round symbolic proof: true iff the concrete FE specializes to
// the zero polynomial.
std::vector<std::pair<CaseSpec, bool>> fe_check(const LzsKey& key, const InvariantCandidate& inv,
                                                const BooleanFunc& z,
                                                const std::vector<CaseSpec>& cases,
                                                const Limits& lim = default_limits());

bool fe_check_all(const LzsKey& key, const InvariantCandidate& inv, const BooleanFunc& z,
                  const std::vector<CaseSpec>& cases, const Limits& lim = default_limits());

// ANF of one instance in the shared coefficient variables over given wires.
Polynomial instance_expansion(const std::array<VarId, 6>& wires);

}  // namespace t310

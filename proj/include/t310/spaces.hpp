#pragma once

#include <functional>
#include <vector>

#include "t310/lzs.hpp"
#include "t310/poly.hpp"

namespace t310 {

// A GF(2) span of polynomials, kept as a reduced (row-echelon) basis over the
// dictionary of monomials that appear.
class PolySpace {
public:
    PolySpace() = default;
    explicit PolySpace(std::vector<Polynomial> gens);

    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<Polynomial>& basis() const { return basis_; }
    bool contains(const Polynomial& p) const;
    bool same_span(const PolySpace& o) const;

private:
    std::vector<Polynomial> basis_;
};

// Subspace of linear combinations in which no monomial contains `s`.
// Dimension drops by the rank of the s-containing coordinate block.
PolySpace eliminate_symbol(const PolySpace& space, VarId s);

struct EliminationReport {
    int block_rank = 0;
    std::vector<Monomial> pivot_monomials;   // one per rank, s-containing
    PolySpace space;
};

EliminationReport eliminate_symbol_report(const PolySpace& space, VarId s);

// Rank of the block of coordinates whose monomials contain `s` (diagnostic).
int symbol_block_rank(const PolySpace& space, VarId s);

// All 2^dim - 1 nonzero combinations passing `filter`; dimension capped at 20.
std::vector<Polynomial> combo_scan(const PolySpace& space,
                                   const std::function<bool(const Polynomial&)>& filter);

// Necessary condition for an opaque FE candidate to admit a Boolean function:
// every variable multiplied with an instance symbol must be connectable as an
// input of one such instance under an injective P() (Z1 has 5 state slots
// plus the hardwired L, the others 6); products of two instances and products
// with F/K/P-placeholders can never be realized.
bool solvability_filter(const Polynomial& fe);

struct OrbitEdge {
    Monomial from, to;
};

struct OrbitReport {
    std::vector<Monomial> nodes;
    std::vector<OrbitEdge> edges;
    std::vector<std::vector<Monomial>> cycles;     // directed cycles (SCCs with an edge)
    std::vector<std::vector<Monomial>> clusters;   // weakly connected components
    std::vector<Monomial> pruned;                  // successors beyond the degree cap
};

// Closure of `seeds` under one-round substitution of monomials, deleting
// successor terms that contain an ignored symbol.
OrbitReport monomial_orbit(const LzsKey& key, const std::vector<Monomial>& seeds, int degree_cap,
                           const std::vector<VarId>& ignore, const Limits& lim = default_limits());

}  // namespace t310

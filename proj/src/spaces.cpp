#include "t310/spaces.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "t310/gf2.hpp"
#include "t310/round.hpp"

namespace t310 {

namespace {

// Shared monomial dictionary for a set of polynomials.
struct Dict {
    std::vector<Monomial> monos;
    std::map<Monomial, std::size_t> index;

    explicit Dict(const std::vector<Polynomial>& polys) {
        std::set<Monomial> all;
        for (const auto& p : polys)
            for (const auto& m : p.terms()) all.insert(m);
        for (const auto& m : all) {
            index[m] = monos.size();
            monos.push_back(m);
        }
    }
    gf2::BitVec row(const Polynomial& p) const {
        gf2::BitVec v(monos.size());
        for (const auto& m : p.terms()) v.set(index.at(m));
        return v;
    }
    Polynomial poly(const gf2::BitVec& v) const {
        std::vector<Monomial> terms;
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (v.get(i)) terms.push_back(monos[i]);
        return Polynomial::from_terms(std::move(terms));
    }
};

}  // namespace

PolySpace::PolySpace(std::vector<Polynomial> gens) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Polynomial& p) { return p.is_zero(); }),
               gens.end());
    if (gens.empty()) return;
    Dict dict(gens);
    std::vector<gf2::BitVec> rows;
    for (const auto& p : gens) rows.push_back(dict.row(p));
    gf2::Rref r = gf2::rref(std::move(rows), dict.monos.size());
    for (const auto& row : r.rows) basis_.push_back(dict.poly(row));
}

bool PolySpace::contains(const Polynomial& p) const {
    if (p.is_zero()) return true;
    if (basis_.empty()) return false;
    std::vector<Polynomial> all = basis_;
    all.push_back(p);
    Dict dict(all);
    std::vector<gf2::BitVec> rows;
    for (const auto& b : basis_) rows.push_back(dict.row(b));
    gf2::Rref r = gf2::rref(std::move(rows), dict.monos.size());
    return r.in_span(dict.row(p));
}

bool PolySpace::same_span(const PolySpace& o) const {
    if (dimension() != o.dimension()) return false;
    for (const auto& p : o.basis_)
        if (!contains(p)) return false;
    return true;
}

int symbol_block_rank(const PolySpace& space, VarId s) {
    if (space.dimension() == 0) return 0;
    Dict dict(space.basis());
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < dict.monos.size(); ++i)
        if (dict.monos[i].contains(s)) cols.push_back(i);
    std::vector<gf2::BitVec> rows;
    for (const auto& b : space.basis()) {
        gf2::BitVec full = dict.row(b);
        gf2::BitVec v(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) v.set(j, full.get(cols[j]));
        rows.push_back(std::move(v));
    }
    return gf2::rref(std::move(rows), cols.size()).rank();
}

EliminationReport eliminate_symbol_report(const PolySpace& space, VarId s) {
    EliminationReport rep;
    if (space.dimension() == 0) {
        rep.space = space;
        return rep;
    }
    Dict dict(space.basis());
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < dict.monos.size(); ++i)
        if (dict.monos[i].contains(s)) cols.push_back(i);
    if (cols.empty()) {
        rep.space = space;
        return rep;
    }
    // Combinations of basis rows vanishing on the s-block.
    std::vector<gf2::BitVec> block;
    for (const auto& b : space.basis()) {
        gf2::BitVec full = dict.row(b);
        gf2::BitVec v(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) v.set(j, full.get(cols[j]));
        block.push_back(std::move(v));
    }
    gf2::Rref block_rref = gf2::rref(block, cols.size());
    rep.block_rank = block_rref.rank();
    for (auto p : block_rref.pivot) rep.pivot_monomials.push_back(dict.monos[cols[p]]);

    std::vector<gf2::BitVec> combos = gf2::left_nullspace(block, cols.size());
    std::vector<Polynomial> out;
    for (const auto& c : combos) {
        Polynomial p;
        for (std::size_t i = 0; i < space.basis().size(); ++i)
            if (c.get(i)) p = p + space.basis()[i];
        out.push_back(std::move(p));
    }
    rep.space = PolySpace(std::move(out));
    return rep;
}

PolySpace eliminate_symbol(const PolySpace& space, VarId s) {
    return eliminate_symbol_report(space, s).space;
}

std::vector<Polynomial> combo_scan(const PolySpace& space,
                                   const std::function<bool(const Polynomial&)>& filter) {
    int dim = space.dimension();
    if (dim > 20) throw CapacityError("combo_scan dimension too large (" + std::to_string(dim) + ")");
    std::vector<Polynomial> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << dim); ++bits) {
        Polynomial p;
        for (int i = 0; i < dim; ++i)
            if ((bits >> i) & 1) p = p + space.basis()[i];
        if (!p.is_zero() && filter(p)) out.push_back(std::move(p));
    }
    return out;
}

bool solvability_filter(const Polynomial& fe) {
    // Which instances does each companion variable co-occur with?
    std::map<VarId, unsigned> homes;   // state var -> bitmask of instances
    for (const auto& m : fe.terms()) {
        Monomial inst = m.intersect(Monomial::opaque_mask());
        if (inst.is_one()) continue;                  // no instance in this term
        if (inst.degree() > 1) return false;          // product of two instances
        int j = inst.vars()[0] - kVarZ1;
        for (VarId v : m.erase(Monomial::opaque_mask()).vars()) {
            if (v == kVarL && j == 0) continue;       // L is Z1's hardwired input
            if (!is_state(v)) return false;           // F, K, L (elsewhere), P6/P13/P20
            homes[v] |= 1u << j;
        }
    }
    // Bipartite feasibility: each variable needs one input slot among the
    // instances it co-occurs with; Z1 offers 5 state slots, the others 6.
    const int cap[4] = {5, 6, 6, 6};
    std::vector<unsigned> need;
    for (const auto& [v, mask] : homes) need.push_back(mask);
    // Augmenting-path matching with capacities.
    std::vector<std::vector<int>> assigned(4);
    std::function<bool(std::size_t, std::vector<bool>&)> try_place =
        [&](std::size_t vi, std::vector<bool>& visited) {
            for (int j = 0; j < 4; ++j) {
                if (!((need[vi] >> j) & 1) || visited[j]) continue;
                visited[j] = true;
                if (static_cast<int>(assigned[j].size()) < cap[j]) {
                    assigned[j].push_back(static_cast<int>(vi));
                    return true;
                }
                for (std::size_t slot = 0; slot < assigned[j].size(); ++slot) {
                    int other = assigned[j][slot];
                    if (try_place(static_cast<std::size_t>(other), visited)) {
                        assigned[j][slot] = static_cast<int>(vi);
                        return true;
                    }
                }
            }
            return false;
        };
    for (std::size_t vi = 0; vi < need.size(); ++vi) {
        std::vector<bool> visited(4, false);
        if (!try_place(vi, visited)) return false;
    }
    return true;
}

OrbitReport monomial_orbit(const LzsKey& key, const std::vector<Monomial>& seeds, int degree_cap,
                           const std::vector<VarId>& ignore, const Limits& lim) {
    Monomial ignore_mask;
    for (VarId v : ignore) ignore_mask = ignore_mask.with(v);

    auto anf = round_anf(key, ZMode::Opaque);
    Substitution sigma;
    for (int i = 1; i <= 36; ++i) sigma.set(state_var(i), anf[i - 1]);

    OrbitReport rep;
    std::map<Monomial, std::size_t> node_index;
    std::vector<Monomial> frontier;
    auto add_node = [&](const Monomial& m) {
        if (node_index.count(m)) return false;
        if (rep.nodes.size() >= lim.max_terms) throw CapacityError("orbit node guard exceeded");
        node_index[m] = rep.nodes.size();
        rep.nodes.push_back(m);
        frontier.push_back(m);
        return true;
    };
    for (const auto& s : seeds)
        if (!s.contains_any(ignore_mask)) add_node(s);

    std::set<Monomial> pruned;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        Monomial m = frontier[head];
        Polynomial img = substitute(Polynomial::from_monomial(m), sigma, lim);
        for (const auto& t : img.terms()) {
            if (t.contains_any(ignore_mask)) continue;   // deleted box
            if (t.degree() > degree_cap) {
                pruned.insert(t);
                continue;
            }
            add_node(t);
            rep.edges.push_back({m, t});
        }
    }
    rep.pruned.assign(pruned.begin(), pruned.end());

    // Cycles: strongly connected components with at least one internal edge.
    std::size_t n = rep.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : rep.edges) adj[node_index[e.from]].push_back(node_index[e.to]);
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
    std::vector<std::size_t> stk;
    std::vector<bool> on_stack(n, false);
    int counter = 0, ncomp = 0;
    std::function<void(std::size_t)> tarjan = [&](std::size_t u) {
        num[u] = low[u] = counter++;
        stk.push_back(u);
        on_stack[u] = true;
        for (std::size_t v : adj[u]) {
            if (num[v] < 0) {
                tarjan(v);
                low[u] = std::min(low[u], low[v]);
            } else if (on_stack[v]) {
                low[u] = std::min(low[u], num[v]);
            }
        }
        if (low[u] == num[u]) {
            for (;;) {
                std::size_t v = stk.back();
                stk.pop_back();
                on_stack[v] = false;
                comp[v] = ncomp;
                if (v == u) break;
            }
            ++ncomp;
        }
    };
    for (std::size_t u = 0; u < n; ++u)
        if (num[u] < 0) tarjan(u);
    std::vector<std::vector<Monomial>> scc(ncomp);
    for (std::size_t u = 0; u < n; ++u) scc[comp[u]].push_back(rep.nodes[u]);
    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    for (const auto& e : rep.edges) edge_set.insert({node_index[e.from], node_index[e.to]});
    for (int c = 0; c < ncomp; ++c) {
        bool cyclic = scc[c].size() > 1;
        if (!cyclic && scc[c].size() == 1) {
            std::size_t u = node_index[scc[c][0]];
            cyclic = edge_set.count({u, u}) > 0;
        }
        if (cyclic) rep.cycles.push_back(scc[c]);
    }

    // Clusters: weakly connected components.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : rep.edges) {
        std::size_t a = find(node_index[e.from]), b = find(node_index[e.to]);
        if (a != b) parent[a] = b;
    }
    std::map<std::size_t, std::vector<Monomial>> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(rep.nodes[i]);
    for (auto& [root, mons] : clusters) rep.clusters.push_back(std::move(mons));
    return rep;
}

}  // namespace t310

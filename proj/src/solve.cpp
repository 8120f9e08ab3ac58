#include "t310/solve.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace t310 {

namespace {

std::vector<VarId> collect_unknowns(const FeSystem& sys) {
    // All 64 coefficient variables are always unknowns (unconstrained ones are
    // free); template symbols join if they appear.
    std::vector<VarId> unk;
    for (int k = 0; k < 64; ++k) unk.push_back(coeff_var(k));
    Monomial users;
    for (const auto& [mono, poly] : sys.constraints) {
        Monomial sup = poly.support();
        if (!sup.subset_of(Monomial::coeff_mask().unite(Monomial::user_mask())))
            throw Error("system has non-coefficient variables (extract with full cases first)");
        users = users.unite(sup.intersect(Monomial::user_mask()));
    }
    for (VarId v : users.vars()) unk.push_back(v);
    return unk;
}

bool is_affine(const Polynomial& p) {
    for (const auto& m : p.terms())
        if (m.degree() > 1) return false;
    return true;
}

}  // namespace

bool SolutionSet::contains(const BooleanFunc& z,
                           const std::vector<std::pair<VarId, int>>& extra) const {
    gf2::BitVec v(unknowns.size());
    std::uint64_t coeffs = moebius64(z.tt);
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        if (is_coeff(unknowns[i])) {
            int k = unknowns[i] - kCoeffBase;
            v.set(i, (coeffs >> k) & 1);
        } else {
            for (const auto& [sym, bit] : extra)
                if (sym == unknowns[i]) v.set(i, bit);
        }
    }
    switch (kind) {
        case Kind::Unsat:
            return false;
        case Kind::Explicit: {
            for (const auto& m : members) {
                if (m.z.tt != z.tt) continue;
                if (m.extra == extra || m.extra.empty()) return true;
            }
            return false;
        }
        case Kind::Affine:
        case Kind::Partial: {
            if (kind == Kind::Partial) return false;
            gf2::BitVec diff = v;
            diff ^= particular;
            std::vector<gf2::BitVec> rows = basis;
            gf2::Rref r = gf2::rref(std::move(rows), unknowns.size());
            bool in = r.in_span(diff);
            if (in && excludes_zero) {
                gf2::BitVec zero(unknowns.size());
                if (v == zero) return false;
            }
            return in;
        }
    }
    return false;
}

SolutionSet fe_solve(const FeSystem& sys, const SolveOptions& opts) {
    SolutionSet out;
    out.unknowns = collect_unknowns(sys);
    const std::size_t n = out.unknowns.size();
    std::map<VarId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[out.unknowns[i]] = i;

    std::vector<Polynomial> work;
    for (const auto& [mono, poly] : sys.constraints) work.push_back(poly);
    // Degree restriction and forced coefficients become unit constraints.
    if (opts.degree_cap)
        for (int k = 0; k < 64; ++k)
            if (std::popcount(static_cast<unsigned>(k)) > *opts.degree_cap)
                work.push_back(Polynomial::var(coeff_var(k)));
    for (int k : opts.forced_zero_coeffs) work.push_back(Polynomial::var(coeff_var(k)));

    // Alternate GF(2) elimination of the affine constraints with substitution
    // into the nonlinear residue until nothing changes.
    gf2::Rref reduced;
    std::vector<Polynomial> nonlinear;
    for (int pass = 0;; ++pass) {
        std::vector<gf2::BitVec> rows;
        nonlinear.clear();
        for (const auto& p : work) {
            if (p.is_zero()) continue;
            if (!is_affine(p)) {
                nonlinear.push_back(p);
                continue;
            }
            gf2::BitVec row(n + 1);
            for (const auto& m : p.terms()) {
                if (m.is_one()) row.set(n, !row.get(n));
                else row.set(index.at(m.vars()[0]));
            }
            rows.push_back(std::move(row));
        }
        reduced = gf2::rref(std::move(rows), n + 1);
        for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
            if (reduced.pivot[i] == n) {   // 1 = 0
                out.kind = SolutionSet::Kind::Unsat;
                out.note = "inconsistent linear constraints";
                return out;
            }
        }
        if (nonlinear.empty()) break;
        // Pivot variables in terms of free variables.
        Substitution sigma;
        for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
            std::vector<Monomial> terms;
            for (std::size_t j = 0; j < n; ++j)
                if (j != reduced.pivot[i] && reduced.rows[i].get(j))
                    terms.push_back(Monomial::var(out.unknowns[j]));
            if (reduced.rows[i].get(n)) terms.push_back(Monomial::one());
            sigma.set(out.unknowns[reduced.pivot[i]], Polynomial::from_terms(std::move(terms)));
        }
        std::vector<Polynomial> next;
        for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
            std::vector<Monomial> terms;
            for (std::size_t j = 0; j <= n; ++j)
                if (reduced.rows[i].get(j))
                    terms.push_back(j == n ? Monomial::one() : Monomial::var(out.unknowns[j]));
            next.push_back(Polynomial::from_terms(std::move(terms)));
        }
        bool gained_linear = false;
        for (const auto& p : nonlinear) {
            Polynomial q = substitute(p, sigma);
            if (is_affine(q) && !q.is_zero()) gained_linear = true;
            if (!q.is_zero()) next.push_back(std::move(q));
        }
        bool shrank = next.size() < work.size();
        work = std::move(next);
        if (!gained_linear && !shrank && pass > 0) break;
        if (pass > 200) break;   // safety; systems here are small
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < reduced.rows.size(); ++i) is_pivot[reduced.pivot[i]] = true;
    std::vector<std::size_t> frees;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) frees.push_back(j);

    auto assemble = [&](std::uint64_t free_bits) {
        gf2::BitVec v(n);
        for (std::size_t t = 0; t < frees.size(); ++t)
            if ((free_bits >> t) & 1) v.set(frees[t]);
        for (std::size_t i = 0; i < reduced.rows.size(); ++i) {
            bool bit = reduced.rows[i].get(n);
            for (std::size_t t = 0; t < frees.size(); ++t)
                if (reduced.rows[i].get(frees[t]) && v.get(frees[t])) bit = !bit;
            v.set(reduced.pivot[i], bit);
        }
        return v;
    };
    auto to_solution = [&](const gf2::BitVec& v) {
        ZSolution s;
        std::uint64_t coeffs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!v.get(i)) continue;
            if (is_coeff(out.unknowns[i])) coeffs |= std::uint64_t{1} << (out.unknowns[i] - kCoeffBase);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!is_coeff(out.unknowns[i]))
                s.extra.emplace_back(out.unknowns[i], v.get(i) ? 1 : 0);
        s.z.tt = moebius64(coeffs);
        return s;
    };
    auto zero_coeff_vector = [&](const gf2::BitVec& v) {
        for (std::size_t i = 0; i < n; ++i)
            if (is_coeff(out.unknowns[i]) && v.get(i)) return false;
        return true;
    };
    auto satisfies_all = [&](const gf2::BitVec& v) {
        Assignment a;
        for (std::size_t i = 0; i < n; ++i) a.set(out.unknowns[i], v.get(i) ? 1 : 0);
        for (const auto& [mono, poly] : sys.constraints)
            if (evaluate(poly, a)) return false;
        if (opts.degree_cap || !opts.forced_zero_coeffs.empty()) {
            for (int k = 0; k < 64; ++k) {
                bool forced = opts.degree_cap &&
                              std::popcount(static_cast<unsigned>(k)) > *opts.degree_cap;
                forced = forced || std::find(opts.forced_zero_coeffs.begin(),
                                             opts.forced_zero_coeffs.end(),
                                             k) != opts.forced_zero_coeffs.end();
                if (forced && v.get(index.at(coeff_var(k)))) return false;
            }
        }
        return true;
    };

    if (nonlinear.empty()) {
        // Affine space: particular + nullspace of the reduced system.
        out.basis = gf2::nullspace(reduced);
        // nullspace() works over n+1 columns; drop the constant coordinate.
        std::vector<gf2::BitVec> basis;
        for (auto& b : out.basis) {
            if (b.get(n)) continue;   // direction flipping the constant: not homogeneous
            gf2::BitVec v(n);
            for (std::size_t j = 0; j < n; ++j) v.set(j, b.get(j));
            if (v.any()) basis.push_back(std::move(v));
        }
        out.basis = std::move(basis);
        gf2::BitVec part = assemble(0);
        // Lexicographically smallest member of the coset (position 0 most
        // significant): reduce by basis vectors in leading-position order.
        std::vector<gf2::BitVec> sorted = out.basis;
        std::sort(sorted.begin(), sorted.end(),
                  [](const gf2::BitVec& a, const gf2::BitVec& b) { return a.lowest() < b.lowest(); });
        for (const auto& b : sorted)
            if (part.get(b.lowest())) part ^= b;
        out.particular = part;
        std::size_t dim = out.basis.size();
        gf2::BitVec zero(n);
        bool zero_in = (part == zero);
        bool exclude = opts.exclude_constant_zero && zero_in;
        if (exclude && dim <= 24 && (std::uint64_t{1} << dim) <= opts.enumerate_cap) {
            out.kind = SolutionSet::Kind::Explicit;
            std::vector<gf2::BitVec> all;
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << dim); ++bits) {
                gf2::BitVec v = part;
                for (std::size_t t = 0; t < dim; ++t)
                    if ((bits >> t) & 1) v ^= out.basis[t];
                if (zero_coeff_vector(v)) continue;
                if (!satisfies_all(v)) throw Error("internal: affine member failed re-verification");
                all.push_back(std::move(v));
            }
            std::sort(all.begin(), all.end());
            for (const auto& v : all) out.members.push_back(to_solution(v));
            out.excludes_zero = true;
            out.count = out.members.size();
            out.count_log2 = dim;   // informational
            if (out.members.empty()) {
                out.kind = SolutionSet::Kind::Unsat;
                out.note = "only the excluded all-zero function satisfies the system";
            }
            return out;
        }
        out.kind = SolutionSet::Kind::Affine;
        out.count_log2 = static_cast<double>(dim);
        out.count = dim < 64 ? (std::uint64_t{1} << dim) : 0;
        if (exclude) {
            out.excludes_zero = true;
            if (out.count) out.count -= 1;
            // Smallest nonzero member: the basis vector with the most leading zeros.
            if (!out.basis.empty()) {
                const gf2::BitVec* best = &out.basis[0];
                for (const auto& b : out.basis)
                    if (b.lowest() > best->lowest()) best = &b;
                out.particular = *best;
            } else {
                out.kind = SolutionSet::Kind::Unsat;
                out.note = "only the excluded all-zero function satisfies the system";
                out.count = 0;
            }
        }
        if (!satisfies_all(out.particular) && out.kind != SolutionSet::Kind::Unsat)
            throw Error("internal: particular solution failed re-verification");
        return out;
    }

    // Nonlinear residue: bounded exhaustive search over the free variables.
    if (frees.size() >= 63 || (std::uint64_t{1} << frees.size()) > opts.enumerate_cap) {
        out.kind = SolutionSet::Kind::Partial;
        out.count_exact = false;
        out.note = "free space 2^" + std::to_string(frees.size()) +
                   " exceeds enumerate_cap with nonlinear constraints left; export CNF instead";
        return out;
    }
    std::vector<gf2::BitVec> found;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << frees.size()); ++bits) {
        gf2::BitVec v = assemble(bits);
        bool ok = true;
        Assignment a;
        for (std::size_t i = 0; i < n; ++i) a.set(out.unknowns[i], v.get(i) ? 1 : 0);
        for (const auto& p : nonlinear)
            if (evaluate(p, a)) { ok = false; break; }
        if (!ok) continue;
        if (opts.exclude_constant_zero && zero_coeff_vector(v)) continue;
        if (!satisfies_all(v)) continue;   // re-verify against the original system
        found.push_back(std::move(v));
    }
    std::sort(found.begin(), found.end());
    out.kind = SolutionSet::Kind::Explicit;
    out.excludes_zero = opts.exclude_constant_zero;
    for (const auto& v : found) out.members.push_back(to_solution(v));
    out.count = out.members.size();
    if (out.members.empty()) {
        out.kind = SolutionSet::Kind::Unsat;
        out.note = "exhausted free space, no solutions";
    }
    return out;
}

bool check_solution(const FeSystem& sys, const BooleanFunc& z,
                    const std::vector<std::pair<VarId, int>>& extra) {
    Assignment a;
    std::uint64_t coeffs = moebius64(z.tt);
    for (int k = 0; k < 64; ++k) a.set(coeff_var(k), (coeffs >> k) & 1);
    for (const auto& [sym, bit] : extra) a.set(sym, bit);
    for (const auto& [mono, poly] : sys.constraints)
        if (evaluate(poly, a)) return false;
    return true;
}

// ------------------------------------------------------------------ DIMACS

std::string dimacs_export(const FeSystem& sys, const DimacsOptions& opts) {
    std::vector<VarId> unknowns = collect_unknowns(sys);
    std::map<VarId, int> var_of;
    for (std::size_t i = 0; i < unknowns.size(); ++i)
        var_of[unknowns[i]] = static_cast<int>(i) + 1;
    int next_var = static_cast<int>(unknowns.size());

    std::vector<std::vector<int>> clauses;
    std::map<Monomial, int> and_aux;
    std::ostringstream comments;

    auto lit_of_monomial = [&](const Monomial& m) {
        if (m.degree() == 1) return var_of.at(m.vars()[0]);
        auto it = and_aux.find(m);
        if (it != and_aux.end()) return it->second;
        int t = ++next_var;
        and_aux.emplace(m, t);
        std::vector<int> big{t};
        for (VarId v : m.vars()) {
            clauses.push_back({-t, var_of.at(v)});
            big.push_back(-var_of.at(v));
        }
        clauses.push_back(std::move(big));
        comments << "c aux " << t << " = " << format_monomial(m) << "\n";
        return t;
    };
    auto emit_xor = [&](std::vector<int> lits, bool target) {
        if (lits.empty()) {
            if (target) {   // constant contradiction
                clauses.push_back({1});
                clauses.push_back({-1});
            }
            return;
        }
        if (lits.size() == 1) {
            clauses.push_back({target ? lits[0] : -lits[0]});
            return;
        }
        int acc = lits[0];
        for (std::size_t i = 1; i + 1 < lits.size(); ++i) {
            int c = ++next_var;
            int b = lits[i];
            clauses.push_back({-c, acc, b});
            clauses.push_back({-c, -acc, -b});
            clauses.push_back({c, -acc, b});
            clauses.push_back({c, acc, -b});
            acc = c;
        }
        int last = lits.back();
        // acc xor last = target
        if (target) {
            clauses.push_back({acc, last});
            clauses.push_back({-acc, -last});
        } else {
            clauses.push_back({-acc, last});
            clauses.push_back({acc, -last});
        }
    };

    for (const auto& [mono, poly] : sys.constraints) {
        bool target = false;   // sum of literals must equal target
        std::vector<int> lits;
        for (const auto& m : poly.terms()) {
            if (m.is_one()) target = !target;
            else lits.push_back(lit_of_monomial(m));
        }
        emit_xor(std::move(lits), target);
    }
    if (opts.exclude_constant_zero) {
        std::vector<int> any;
        for (int k = 0; k < 64; ++k) any.push_back(var_of.at(coeff_var(k)));
        clauses.push_back(std::move(any));
    }

    std::ostringstream os;
    os << "c t310 FE constraint system, " << sys.constraints.size() << " constraints\n";
    os << "c vars 1..64 = Z00..Z63";
    if (unknowns.size() > 64) os << ", 65.." << unknowns.size() << " = template symbols";
    os << "\n";
    os << comments.str();
    os << "p cnf " << next_var << " " << clauses.size() << "\n";
    for (const auto& cl : clauses) {
        for (int lit : cl) os << lit << " ";
        os << "0\n";
    }
    return os.str();
}

}  // namespace t310

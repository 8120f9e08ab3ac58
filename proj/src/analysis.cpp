#include "t310/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <thread>

#include "t310/gf2.hpp"

namespace t310 {

TruthMap::TruthMap(const Polynomial& p, int max_support) {
    support_ = p.support_vars();
    n_ = static_cast<int>(support_.size());
    if (n_ > max_support)
        throw CapacityError("support too large: " + std::to_string(n_) + " > " +
                            std::to_string(max_support) + " variables");
    std::uint64_t words = std::max<std::uint64_t>(1, (std::uint64_t{1} << n_) >> 6);
    bits_.assign(words, 0);
    // Seed with ANF coefficients, then Moebius-transform to values.
    for (const auto& m : p.terms()) {
        std::uint64_t idx = 0;
        for (int j = 0; j < n_; ++j)
            if (m.contains(support_[j])) idx |= std::uint64_t{1} << j;
        bits_[idx >> 6] ^= std::uint64_t{1} << (idx & 63);
    }
    static constexpr std::uint64_t kLow[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
        0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
    };
    for (int d = 0; d < n_; ++d) {
        if (d < 6) {
            for (auto& w : bits_) w ^= (w & kLow[d]) << (1 << d);
        } else {
            std::uint64_t stride = std::uint64_t{1} << (d - 6);
            for (std::uint64_t base = 0; base < bits_.size(); base += 2 * stride)
                for (std::uint64_t j = 0; j < stride; ++j)
                    bits_[base + stride + j] ^= bits_[base + j];
        }
    }
}

std::uint64_t TruthMap::count_of(bool value) const {
    std::uint64_t ones = 0;
    for (auto w : bits_) ones += static_cast<std::uint64_t>(std::popcount(w));
    if (n_ < 6) {   // only the low 2^n bits are meaningful
        ones = 0;
        for (std::uint64_t i = 0; i < size(); ++i) ones += at(i);
    }
    return value ? ones : size() - ones;
}

std::optional<int> TruthMap::position_of(VarId v) const {
    for (int j = 0; j < n_; ++j)
        if (support_[j] == v) return j;
    return std::nullopt;
}

std::int64_t zero_count(const Polynomial& inv) {
    TruthMap map(inv);
    return static_cast<std::int64_t>(map.count_of(false));
}

std::int64_t event_count(const Polynomial& inv, const std::vector<EventFix>& event, int cond) {
    TruthMap map(inv);
    std::uint64_t fixed_mask = 0, fixed_vals = 0;
    for (const auto& e : event) {
        auto pos = map.position_of(e.var);
        if (!pos) throw Error("event variable " + builtin_name(e.var) + " outside the support");
        fixed_mask |= std::uint64_t{1} << *pos;
        if (e.bit) fixed_vals |= std::uint64_t{1} << *pos;
    }
    std::uint64_t free_mask = (map.size() - 1) & ~fixed_mask;
    std::int64_t count = 0;
    // Enumerate the subspace extending the event.
    std::uint64_t sub = free_mask;
    for (;;) {
        std::uint64_t idx = fixed_vals | sub;
        count += map.at(idx) == (cond != 0);
        if (sub == 0) break;
        sub = (sub - 1) & free_mask;
    }
    return count;
}

BiasReport min_biased_n(const Polynomial& inv, int max_n) {
    TruthMap map(inv);
    BiasReport rep;
    rep.support_size = map.n();
    rep.zeros = static_cast<std::int64_t>(map.count_of(false));
    rep.searched_max_n = max_n;

    int n = map.n();
    std::vector<int> comb;
    std::vector<std::int64_t> counts;
    for (int N = 1; N <= std::min(max_n, n); ++N) {
        // First N-subset in lexicographic order.
        comb.assign(N, 0);
        for (int i = 0; i < N; ++i) comb[i] = i;
        for (;;) {
            counts.assign(std::size_t{1} << N, 0);
            for (std::uint64_t idx = 0; idx < map.size(); ++idx) {
                if (map.at(idx)) continue;   // condition on inv = 0
                std::uint64_t pat = 0;
                for (int i = 0; i < N; ++i) pat |= ((idx >> comb[i]) & 1) << i;
                ++counts[pat];
            }
            double expected = static_cast<double>(rep.zeros) / static_cast<double>(1ull << N);
            for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << N); ++pat) {
                if (static_cast<double>(counts[pat]) != expected) {
                    rep.min_biased_n = N;
                    BiasWitness w;
                    for (int i = 0; i < N; ++i) {
                        w.vars.push_back(map.support()[comb[i]]);
                        w.pattern.push_back(static_cast<int>((pat >> i) & 1));
                    }
                    w.count = counts[pat];
                    w.expected = expected;
                    rep.witness = w;
                    return rep;
                }
            }
            // Next combination.
            int i = N - 1;
            while (i >= 0 && comb[i] == n - N + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < N; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return rep;
}

FactorReport linear_factors(const Polynomial& inv) {
    TruthMap map(inv);
    std::uint64_t ones = map.count_of(true);
    if (ones == 0) throw Error("zero polynomial: every affine form is a functional factor");
    int n = map.n();
    // Solve c0 + sum c_j v_j = 1 over all assignments v with inv(v) = 1.
    std::size_t cols = static_cast<std::size_t>(n) + 2;   // c0..cn | rhs
    std::vector<gf2::BitVec> rows;
    for (std::uint64_t idx = 0; idx < map.size(); ++idx) {
        if (!map.at(idx)) continue;
        gf2::BitVec row(cols);
        row.set(0);   // c0
        for (int j = 0; j < n; ++j)
            if ((idx >> j) & 1) row.set(1 + j);
        row.set(cols - 1);   // = 1
        rows.push_back(std::move(row));
        if (rows.size() > static_cast<std::size_t>(n) + 1) {
            // Keep the system small: reduce incrementally once overdetermined.
            gf2::Rref r = gf2::rref(std::move(rows), cols);
            rows = std::move(r.rows);
        }
    }
    gf2::Rref r = gf2::rref(std::move(rows), cols);
    FactorReport rep;
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        if (r.pivot[i] == cols - 1) { rep.irreducible = true; return rep; }   // 1 = 0: none

    // Affine solution set over (c0..cn).
    std::vector<bool> is_pivot(cols, false);
    for (auto p : r.pivot) is_pivot[p] = true;
    std::vector<std::size_t> frees;
    for (std::size_t j = 0; j + 1 < cols; ++j)
        if (!is_pivot[j]) frees.push_back(j);
    if (frees.size() > 16) throw CapacityError("factor space too large to enumerate");

    auto build = [&](std::uint64_t bits) {
        gf2::BitVec v(cols);
        for (std::size_t t = 0; t < frees.size(); ++t)
            if ((bits >> t) & 1) v.set(frees[t]);
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            bool b = r.rows[i].get(cols - 1);
            for (std::size_t t = 0; t < frees.size(); ++t)
                if (r.rows[i].get(frees[t]) && v.get(frees[t])) b = !b;
            v.set(r.pivot[i], b);
        }
        return v;
    };
    std::vector<Polynomial> factors;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << frees.size()); ++bits) {
        gf2::BitVec v = build(bits);
        std::vector<Monomial> terms;
        if (v.get(0)) terms.push_back(Monomial::one());
        for (int j = 0; j < n; ++j)
            if (v.get(1 + j)) terms.push_back(Monomial::var(map.support()[j]));
        Polynomial ell = Polynomial::from_terms(std::move(terms));
        if (!ell.is_one()) factors.push_back(std::move(ell));
    }
    std::sort(factors.begin(), factors.end(), [](const Polynomial& a, const Polynomial& b) {
        return format_poly(a) < format_poly(b);
    });
    rep.factors = std::move(factors);
    rep.irreducible = rep.factors.empty();
    return rep;
}

LinearScanResult linear_invariant_scan(const LzsKey& key, const BooleanFunc& z,
                                       const CaseSpec& c) {
    if (!c.is_full()) throw Error("linear scan needs a fully specified case");
    auto anf = round_anf(key, ZMode::Concrete, &z);
    // Q_i = x_i + y_i with the case folded in; a linear form sum c_i x_i is
    // invariant iff sum c_i Q_i = 0 identically.
    std::vector<Polynomial> q(36);
    for (int i = 1; i <= 36; ++i)
        q[i - 1] = Polynomial::var(state_var(i)) + fe_specialize(anf[i - 1], c);

    // Dictionary over all monomials of the Q_i.
    std::vector<Monomial> monos;
    {
        std::vector<Monomial> tmp;
        for (const auto& p : q)
            for (const auto& m : p.terms()) tmp.push_back(m);
        std::sort(tmp.begin(), tmp.end());
        tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
        monos = std::move(tmp);
    }
    auto index_of = [&](const Monomial& m) {
        return static_cast<std::size_t>(
            std::lower_bound(monos.begin(), monos.end(), m) - monos.begin());
    };
    std::vector<gf2::BitVec> rows;
    for (const auto& p : q) {
        gf2::BitVec row(monos.size());
        for (const auto& m : p.terms()) row.set(index_of(m));
        rows.push_back(std::move(row));
    }
    LinearScanResult res;
    res.c = c;
    for (const auto& combo : gf2::left_nullspace(rows, monos.size())) {
        std::vector<Monomial> terms;
        for (int i = 0; i < 36; ++i)
            if (combo.get(i)) terms.push_back(Monomial::var(state_var(i + 1)));
        res.basis.push_back(Polynomial::from_terms(std::move(terms)));
    }
    return res;
}

namespace {

// Per-round bit source honoring an optional fixed schedule.
struct BitStream {
    const Schedule* schedule;
    std::mt19937_64 rng;
    int round = 0;

    RoundBits next() {
        RoundBits rb;
        std::uint64_t r = rng();
        rb.f = static_cast<int>(r & 1);
        rb.s1 = static_cast<int>((r >> 1) & 1);
        rb.s2 = static_cast<int>((r >> 2) & 1);
        if (schedule) {
            if (!schedule->f_bits.empty())
                rb.f = schedule->f_bits[round % schedule->f_bits.size()];
            if (!schedule->s_bits.empty()) {
                const auto& s = schedule->s_bits[round % schedule->s_bits.size()];
                rb.s1 = s[0];
                rb.s2 = s[1];
            }
        }
        ++round;
        return rb;
    }
};

std::uint64_t block_seed(std::uint64_t master, std::uint64_t block) {
    std::uint64_t x = master ^ (0x9e3779b97f4a7c15ull * (block + 1));
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

int eval_on_state(const TruthMap& map, const std::vector<int>& state_pos, const State& s) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < state_pos.size(); ++j)
        idx |= static_cast<std::uint64_t>(s.get(state_pos[j])) << j;
    return map.at(idx) ? 1 : 0;
}

std::vector<int> support_positions(const TruthMap& map) {
    std::vector<int> pos;
    for (VarId v : map.support()) {
        if (!is_state(v)) throw Error("simulation polynomials must be over state variables");
        pos.push_back(v);
    }
    return pos;
}

}  // namespace

std::uint64_t empirical_verify(const LzsKey& key, const BooleanFunc& z, const Polynomial& inv,
                               int rounds, int samples, std::uint64_t seed,
                               const Schedule* schedule, int workers) {
    TruthMap map(inv);
    std::vector<int> pos = support_positions(map);
    auto run_sample = [&](int n) {
        BitStream bits{schedule, std::mt19937_64(block_seed(seed, n)), 0};
        std::mt19937_64 srng(block_seed(seed ^ 0x5a5a5a5a5a5a5a5aull, n));
        State s{srng() & ((std::uint64_t{1} << 37) - 2)};
        std::uint64_t failures = 0;
        int val = eval_on_state(map, pos, s);
        for (int r = 0; r < rounds; ++r) {
            s = round_eval(key, z, s, bits.next());
            int nv = eval_on_state(map, pos, s);
            failures += nv != val;
            val = nv;
        }
        return failures;
    };
    workers = std::max(1, std::min(workers, samples));
    if (workers == 1) {
        std::uint64_t failures = 0;
        for (int n = 0; n < samples; ++n) failures += run_sample(n);
        return failures;
    }
    std::atomic<int> next{0};
    std::atomic<std::uint64_t> failures{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            std::uint64_t local = 0;
            for (int n = next.fetch_add(1); n < samples; n = next.fetch_add(1))
                local += run_sample(n);
            failures += local;
        });
    for (auto& t : pool) t.join();
    return failures.load();
}

std::vector<ProbePoint> bias_propagation(const LzsKey& key, const BooleanFunc& z,
                                         const Polynomial& inv, const Polynomial& probe, int cond,
                                         int rounds, int samples, std::uint64_t seed,
                                         const Schedule* schedule) {
    TruthMap imap(inv);
    TruthMap pmap(probe);
    std::vector<int> ipos = support_positions(imap);
    std::vector<int> ppos = support_positions(pmap);
    if (imap.count_of(cond != 0) == 0)
        throw Error("the set {inv = cond} is empty; nothing to sample");

    // Rejection-sample initial states from {inv = cond}.
    std::vector<State> states;
    std::mt19937_64 srng(block_seed(seed, 0x100000));
    std::uint64_t attempts = 0;
    while (static_cast<int>(states.size()) < samples) {
        if (++attempts > std::uint64_t{50000000})
            throw CapacityError("rejection sampling budget exhausted");
        State s{srng() & ((std::uint64_t{1} << 37) - 2)};
        if (eval_on_state(imap, ipos, s) == cond) states.push_back(s);
    }

    // One shared (F, S1, S2) stream across samples, like a single keystream.
    BitStream bits{schedule, std::mt19937_64(block_seed(seed, 0x200000)), 0};
    std::vector<ProbePoint> series;
    for (int r = 0; r <= rounds; ++r) {
        std::uint64_t cnt = 0;
        for (const auto& s : states) cnt += eval_on_state(pmap, ppos, s);
        series.push_back({r, cnt, static_cast<double>(cnt) / states.size()});
        if (r == rounds) break;
        RoundBits rb = bits.next();
        for (auto& s : states) s = round_eval(key, z, s, rb);
    }
    return series;
}

}  // namespace t310

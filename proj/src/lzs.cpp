#include "t310/lzs.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace t310 {

namespace {

struct Tokenizer {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size()) {
            if (s[pos] == '#') {   // comment to end of line
                while (pos < s.size() && s[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return s[pos];
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "' in key listing");
        ++pos;
    }
    std::string word() {   // up to ws/':'/'='/','
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
               s[pos] != ':' && s[pos] != '=' && s[pos] != ',' && s[pos] != '#')
            ++pos;
        if (pos == start) throw ParseError("unexpected end of key listing");
        return std::string(s.substr(start, pos - start));
    }
    int integer() {
        std::string w = word();
        for (char c : w)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("expected integer, got '" + w + "'");
        return std::stoi(w);
    }
};

LzsKey parse_entry(Tokenizer& tk) {
    LzsKey key;
    key.id = tk.word();
    tk.expect(':');
    if (tk.word() != "P") throw ParseError("expected 'P=' in key " + key.id);
    tk.expect('=');
    for (int j = 0; j < 27; ++j) {
        if (j) tk.expect(',');
        key.P[j] = tk.integer();
        if (key.P[j] < 1 || key.P[j] > 36)
            throw ParseError("P(" + std::to_string(j + 1) + ") out of range in key " + key.id);
    }
    if (tk.word() != "D") throw ParseError("expected 'D=' in key " + key.id);
    tk.expect('=');
    for (int i = 0; i < 9; ++i) {
        if (i) tk.expect(',');
        key.D[i] = tk.integer();
        if (key.D[i] < 0 || key.D[i] > 36)
            throw ParseError("D(" + std::to_string(i + 1) + ") out of range in key " + key.id);
    }
    return key;
}

}  // namespace

LzsKey parse_lzs(std::string_view text) {
    Tokenizer tk{text};
    LzsKey key = parse_entry(tk);
    if (!tk.eof()) throw ParseError("trailing content after key " + key.id);
    return key;
}

std::vector<LzsKey> parse_lzs_file(std::string_view text) {
    Tokenizer tk{text};
    std::vector<LzsKey> keys;
    while (!tk.eof()) keys.push_back(parse_entry(tk));
    return keys;
}

std::string format_lzs(const LzsKey& key) {
    std::ostringstream os;
    os << key.id << ": P=";
    for (int j = 0; j < 27; ++j) os << (j ? "," : "") << key.P[j];
    os << " D=";
    for (int i = 0; i < 9; ++i) os << (i ? "," : "") << key.D[i];
    return os.str();
}

Kt1CycleResult kt1_cycle_check(const LzsKey& key) {
    Kt1CycleResult res;
    std::array<int, 9> dd = key.D;
    dd[0] = key.p(20);
    std::array<int, 9> perm{};
    for (int i = 0; i < 9; ++i) {
        if (dd[i] == 0 || dd[i] % 4 != 0) {
            res.reason = (i == 0 ? "P(20)" : "D(" + std::to_string(i + 1) + ")") +
                         std::string(" = ") + std::to_string(dd[i]) +
                         " is not a nonzero multiple of 4";
            return res;
        }
        perm[i] = dd[i] / 4;
    }
    std::array<bool, 10> seen{};
    for (int v : perm) {
        if (seen[v]) {
            res.reason = "values/4 are not a permutation of 1..9";
            return res;
        }
        seen[v] = true;
    }
    // Walk the cycle from 1.
    res.cycle.push_back(1);
    int cur = perm[0];
    while (cur != 1) {
        res.cycle.push_back(cur);
        cur = perm[cur - 1];
    }
    if (res.cycle.size() != 9) {
        res.reason = "permutation splits into more than one cycle (cycle through 1 has length " +
                     std::to_string(res.cycle.size()) + ")";
        res.cycle.clear();
        return res;
    }
    res.pass = true;
    return res;
}

Validation validate(const LzsKey& key, const Kt1Switches& sw) {
    Validation v;
    // tier0: ranges.
    bool t0 = true;
    for (int j = 1; j <= 27; ++j)
        if (key.p(j) < 1 || key.p(j) > 36) {
            v.violations.push_back("P(" + std::to_string(j) + ") out of range");
            t0 = false;
        }
    for (int i = 1; i <= 9; ++i)
        if (key.d(i) < 0 || key.d(i) > 36) {
            v.violations.push_back("D(" + std::to_string(i) + ") out of range");
            t0 = false;
        }
    if (!t0) { v.tier = -1; return v; }

    bool t1 = true;
    std::array<int, 37> pcount{};
    for (int j = 1; j <= 27; ++j)
        if (++pcount[key.p(j)] == 2) {
            v.violations.push_back("P not injective at value " + std::to_string(key.p(j)));
            t1 = false;
        }
    std::array<int, 37> dcount{};
    for (int i = 1; i <= 9; ++i)
        if (++dcount[key.d(i)] == 2) {
            v.violations.push_back("D not injective at value " + std::to_string(key.d(i)));
            t1 = false;
        }
    for (int i = 1; i <= 9; ++i)
        if (key.d(i) % 4 != 0) {
            v.violations.push_back("D(" + std::to_string(i) + ") = " + std::to_string(key.d(i)) +
                                   " is not a multiple of 4");
            t1 = false;
        }

    bool t2 = t1;
    if (key.d(1) != 0) {
        v.violations.push_back("D(1) != 0");
        t2 = false;
    }
    if (sw.require_p6_eq_d8 && key.p(6) != key.d(8)) {
        v.violations.push_back("P(6) != D(8)");
        t2 = false;
    }
    if (sw.require_p13_eq_d7 && key.p(13) != key.d(7)) {
        v.violations.push_back("P(13) != D(7)");
        t2 = false;
    }
    auto cyc = kt1_cycle_check(key);
    if (!cyc.pass) {
        v.violations.push_back("cycle condition: " + cyc.reason);
        t2 = false;
    }
    v.tier = t2 ? 2 : (t1 ? 1 : 0);
    return v;
}

// ----------------------------------------------------------------- keygen

namespace {

struct Slot {
    bool is_p;   // else D
    int idx;     // 1-based
};

Slot parse_slot(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'P' && name[0] != 'D'))
        throw ParseError("bad slot name '" + name + "'");
    int idx = std::stoi(name.substr(1));
    bool is_p = name[0] == 'P';
    if (is_p ? (idx < 1 || idx > 27) : (idx < 1 || idx > 9))
        throw ParseError("slot index out of range in '" + name + "'");
    return {is_p, idx};
}

struct Search {
    const KeygenConstraints& c;
    std::uint64_t budget;
    std::mt19937_64 rng;
    std::uint64_t nodes = 0;
    int want = 0;
    std::vector<LzsKey> found;

    std::array<int, 27> P{};
    std::array<int, 9> D{};
    std::array<bool, 27> p_assigned{};
    std::array<bool, 9> d_assigned{};
    std::array<bool, 37> p_used{};
    std::array<bool, 37> d_used{};

    // Slot assignment order: D first (cycle structure), then P(20), P(6),
    // P(13), then the rest of P.
    std::vector<Slot> order;

    explicit Search(const KeygenConstraints& cons, std::uint64_t seed, std::uint64_t bud)
        : c(cons), budget(bud), rng(seed) {
        for (int i = 1; i <= 9; ++i) order.push_back({false, i});
        order.push_back({true, 20});
        order.push_back({true, 6});
        order.push_back({true, 13});
        for (int j = 1; j <= 27; ++j)
            if (j != 20 && j != 6 && j != 13) order.push_back({true, j});
    }

    int& slot_ref(Slot s) { return s.is_p ? P[s.idx - 1] : D[s.idx - 1]; }

    bool forbidden(const Slot& s, int val) const {
        std::string name = (s.is_p ? "P" : "D") + std::to_string(s.idx);
        auto it = c.forbid.find(name);
        if (it == c.forbid.end()) return false;
        return std::find(it->second.begin(), it->second.end(), val) != it->second.end();
    }

    std::optional<int> fixed_value(const Slot& s) const {
        std::string name = (s.is_p ? "P" : "D") + std::to_string(s.idx);
        auto it = c.fixed.find(name);
        if (it != c.fixed.end()) return it->second;
        return std::nullopt;
    }

    bool slot_assigned(const Slot& s) const {
        return s.is_p ? p_assigned[s.idx - 1] : d_assigned[s.idx - 1];
    }

    // Subset rules: every required value must still be placeable in an open
    // slot of the rule, and under injectivity a value consumed elsewhere is
    // lost for good.
    bool subsets_feasible() const {
        for (const auto& rule : c.subset_of) {
            int pending = 0, open = 0;
            for (const auto& sn : rule.slots)
                if (!slot_assigned(parse_slot(sn))) ++open;
            for (int val : rule.values) {
                bool placed = false, placeable = false;
                for (const auto& sn : rule.slots) {
                    Slot sl = parse_slot(sn);
                    if (slot_assigned(sl)) {
                        if ((sl.is_p ? P[sl.idx - 1] : D[sl.idx - 1]) == val) {
                            placed = true;
                            break;
                        }
                    } else if (c.tier < 1 ||
                               !(sl.is_p ? p_used[std::max(val, 0)] : d_used[std::max(val, 0)])) {
                        placeable = true;
                    }
                }
                if (placed) continue;
                ++pending;
                if (!placeable) return false;
            }
            if (c.tier >= 1 && pending > open) return false;
        }
        return true;
    }

    std::vector<int> domain(const Slot& s) {
        std::vector<int> vals;
        if (auto f = fixed_value(s)) {
            vals.push_back(*f);
        } else if (s.is_p && s.idx == 6 && c.tier >= 2 && c.switches.require_p6_eq_d8) {
            vals.push_back(D[7]);
        } else if (s.is_p && s.idx == 13 && c.tier >= 2 && c.switches.require_p13_eq_d7) {
            vals.push_back(D[6]);
        } else if (!s.is_p && s.idx == 1 && c.tier >= 2) {
            vals.push_back(0);
        } else if (!s.is_p) {
            if (c.tier >= 1) {
                for (int v = 0; v <= 36; v += 4) vals.push_back(v);
            } else {
                for (int v = 0; v <= 36; ++v) vals.push_back(v);
            }
        } else {
            for (int v = 1; v <= 36; ++v) vals.push_back(v);
        }
        std::shuffle(vals.begin(), vals.end(), rng);
        return vals;
    }

    bool value_ok(const Slot& s, int val) {
        if (s.is_p && (val < 1 || val > 36)) return false;
        if (!s.is_p && (val < 0 || val > 36)) return false;
        if (forbidden(s, val)) return false;
        if (c.tier >= 1) {
            if (s.is_p && p_used[val]) return false;
            if (!s.is_p && d_used[val]) return false;
            if (!s.is_p && val % 4 != 0) return false;
        }
        return true;
    }

    bool dfs(std::size_t next) {
        if (static_cast<int>(found.size()) >= want) return true;
        if (nodes >= budget) return false;
        if (next == order.size()) {
            LzsKey key;
            key.id = "gen" + std::to_string(found.size() + 1);
            key.P = P;
            key.D = D;
            Validation v = validate(key, c.switches);
            if (v.tier >= c.tier && check_subsets_final(key)) found.push_back(key);
            return static_cast<int>(found.size()) >= want;
        }
        Slot s = order[next];
        for (int val : domain(s)) {
            if (!value_ok(s, val)) continue;
            ++nodes;
            if (nodes >= budget) return false;
            slot_ref(s) = val;
            if (s.is_p) { p_assigned[s.idx - 1] = true; p_used[val] = true; }
            else { d_assigned[s.idx - 1] = true; d_used[val] = true; }
            bool prune = false;
            // Cycle condition gate once D and P(20) are known.
            if (c.tier >= 2 && s.is_p && s.idx == 20) {
                LzsKey probe;
                probe.P = P;
                probe.D = D;
                if (!kt1_cycle_check(probe).pass) prune = true;
            }
            if (!prune && !subsets_feasible()) prune = true;
            if (!prune && dfs(next + 1)) return true;
            slot_ref(s) = 0;
            if (s.is_p) { p_assigned[s.idx - 1] = false; p_used[val] = false; }
            else { d_assigned[s.idx - 1] = false; d_used[val] = false; }
            if (nodes >= budget) return false;
        }
        return false;
    }

    bool check_subsets_final(const LzsKey& key) const {
        for (const auto& rule : c.subset_of)
            for (int val : rule.values) {
                bool ok = false;
                for (const auto& sn : rule.slots) {
                    Slot sl = parse_slot(sn);
                    if ((sl.is_p ? key.p(sl.idx) : key.d(sl.idx)) == val) { ok = true; break; }
                }
                if (!ok) return false;
            }
        return true;
    }
};

}  // namespace

std::vector<LzsKey> keygen(const KeygenConstraints& c, int count, std::uint64_t seed,
                           std::uint64_t budget) {
    // Detect plainly contradictory fixed values up front.
    for (const auto& [name, val] : c.fixed) {
        Slot s = parse_slot(name);
        if (s.is_p ? (val < 1 || val > 36) : (val < 0 || val > 36))
            throw Error("fixed value out of range for " + name);
        auto it = c.forbid.find(name);
        if (it != c.forbid.end() &&
            std::find(it->second.begin(), it->second.end(), val) != it->second.end())
            throw Error("constraint conflict: " + name + " fixed to a forbidden value");
    }
    if (c.tier >= 2) {
        auto d1 = c.fixed.find("D1");
        if (d1 != c.fixed.end() && d1->second != 0)
            throw Error("constraint conflict: tier 2 requires D(1)=0 but D1 is fixed to " +
                        std::to_string(d1->second));
    }

    Search search(c, seed, budget * static_cast<std::uint64_t>(std::max(count, 1)));
    search.want = count;
    search.dfs(0);
    return search.found;
}

KeygenConstraints parse_constraints_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text);
    KeygenConstraints c;
    c.tier = j.value("tier", 0);
    if (j.contains("fixed"))
        for (auto& [k, v] : j["fixed"].items()) c.fixed[k] = v.get<int>();
    if (j.contains("subset_of"))
        for (auto& rule : j["subset_of"]) {
            SubsetConstraint sc;
            for (auto& v : rule["values"]) sc.values.push_back(v.get<int>());
            for (auto& s : rule["slots"]) sc.slots.push_back(s.get<std::string>());
            c.subset_of.push_back(std::move(sc));
        }
    if (j.contains("forbid"))
        for (auto& [k, v] : j["forbid"].items())
            for (auto& x : v) c.forbid[k].push_back(x.get<int>());
    if (j.contains("switches")) {
        c.switches.require_p6_eq_d8 = j["switches"].value("p6_eq_d8", true);
        c.switches.require_p13_eq_d7 = j["switches"].value("p13_eq_d7", true);
    }
    return c;
}

}  // namespace t310

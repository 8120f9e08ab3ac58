#include "t310/poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace t310 {

namespace {

// Display rank: F K L Z Y X W P6 P13 P20, Z00..Z63, user symbols, a..z M..V.
// Monomial masks are indexed by rank so mask order == print order.
constexpr int rank_of_id(VarId v) {
    if (v >= kVarF && v <= kVarP20) return v - kVarF;            // 0..9
    if (v >= kCoeffBase && v < kCoeffBase + 64) return 10 + (v - kCoeffBase);
    if (v >= kUserBase) return 74 + (v - kUserBase);
    if (v >= 1 && v <= 36) return 91 + (36 - v);                 // a..z, M..V
    return 127;
}

struct RankTables {
    std::array<int, 128> rank{};
    std::array<VarId, 128> id{};
    RankTables() {
        id.fill(kInvalidVar);
        for (int v = 1; v < 128; ++v) {
            rank[v] = rank_of_id(static_cast<VarId>(v));
            if (rank[v] < 127) id[rank[v]] = static_cast<VarId>(v);
        }
    }
};

const RankTables& tables() {
    static const RankTables t;
    return t;
}

inline int rank_of(VarId v) { return tables().rank[v]; }
inline VarId id_of_rank(int r) { return tables().id[r]; }

}  // namespace

VarId var_from_letter(char c) {
    if (c >= 'a' && c <= 'z') return static_cast<VarId>(36 - (c - 'a'));
    if (c >= 'M' && c <= 'V') return static_cast<VarId>(10 - (c - 'M'));
    switch (c) {
        case 'F': return kVarF;
        case 'K': return kVarK;
        case 'L': return kVarL;
        case 'Z': return kVarZ1;
        case 'Y': return kVarZ2;
        case 'X': return kVarZ3;
        case 'W': return kVarZ4;
        default: return kInvalidVar;
    }
}

std::string builtin_name(VarId v) {
    if (v >= 1 && v <= 10) return std::string(1, static_cast<char>('M' + (10 - v)));
    if (v >= 11 && v <= 36) return std::string(1, static_cast<char>('a' + (36 - v)));
    switch (v) {
        case kVarF: return "F";
        case kVarK: return "K";
        case kVarL: return "L";
        case kVarZ1: return "Z";
        case kVarZ2: return "Y";
        case kVarZ3: return "X";
        case kVarZ4: return "W";
        case kVarP6: return "P6";
        case kVarP13: return "P13";
        case kVarP20: return "P20";
        default: break;
    }
    if (is_coeff(v)) {
        int k = v - kCoeffBase;
        std::string s = "Z";
        s += static_cast<char>('0' + k / 10);
        s += static_cast<char>('0' + k % 10);
        return s;
    }
    return {};
}

VarId SymbolTable::declare(const std::string& name) {
    if (auto v = find(name)) return *v;
    if (static_cast<int>(names_.size()) >= kUserSlots)
        throw CapacityError("symbol table full (17 user symbols)");
    names_.push_back(name);
    return user_var(static_cast<int>(names_.size()) - 1);
}

std::optional<VarId> SymbolTable::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return user_var(static_cast<int>(i));
    return std::nullopt;
}

const std::string& SymbolTable::name(VarId v) const {
    return names_.at(v - kUserBase);
}

const Limits& default_limits() {
    static const Limits lim;
    return lim;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(VarId v) {
    Monomial m;
    int r = rank_of(v);
    m.w_[r >> 6] |= std::uint64_t{1} << (r & 63);
    return m;
}

int Monomial::degree() const {
    return std::popcount(w_[0]) + std::popcount(w_[1]);
}

bool Monomial::contains(VarId v) const {
    int r = rank_of(v);
    return (w_[r >> 6] >> (r & 63)) & 1;
}

bool Monomial::contains_any(const Monomial& set) const {
    return (w_[0] & set.w_[0]) | (w_[1] & set.w_[1]);
}

bool Monomial::subset_of(const Monomial& set) const {
    return (w_[0] & ~set.w_[0]) == 0 && (w_[1] & ~set.w_[1]) == 0;
}

Monomial Monomial::intersect(const Monomial& set) const {
    Monomial m;
    m.w_[0] = w_[0] & set.w_[0];
    m.w_[1] = w_[1] & set.w_[1];
    return m;
}

Monomial Monomial::erase(const Monomial& set) const {
    Monomial m;
    m.w_[0] = w_[0] & ~set.w_[0];
    m.w_[1] = w_[1] & ~set.w_[1];
    return m;
}

Monomial Monomial::with(VarId v) const {
    Monomial m = *this;
    int r = rank_of(v);
    m.w_[r >> 6] |= std::uint64_t{1} << (r & 63);
    return m;
}

Monomial Monomial::unite(const Monomial& o) const {
    Monomial m;
    m.w_[0] = w_[0] | o.w_[0];
    m.w_[1] = w_[1] | o.w_[1];
    return m;
}

std::vector<VarId> Monomial::vars() const {
    std::vector<VarId> out;
    for (int i = 0; i < 2; ++i) {
        std::uint64_t w = w_[i];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(id_of_rank(i * 64 + b));
            w &= w - 1;
        }
    }
    return out;
}

int Monomial::cmp(const Monomial& o) const {
    std::uint64_t d0 = w_[0] ^ o.w_[0];
    std::uint64_t d1 = w_[1] ^ o.w_[1];
    if (!(d0 | d1)) return 0;
    // Lowest differing rank d. The side owning d has the smaller element at
    // that point; the other side is either a proper prefix (smaller) or has a
    // larger element there.
    int word = d0 ? 0 : 1;
    int bit = std::countr_zero(word ? d1 : d0);
    bool in_this = (w_[word] >> bit) & 1;
    const Monomial& other = in_this ? o : *this;
    // Does `other` have anything above rank d?
    std::uint64_t hi = 0;
    if (word == 0) {
        hi = (bit == 63 ? 0 : other.w_[0] >> (bit + 1)) | other.w_[1];
    } else {
        hi = (bit == 63 ? 0 : other.w_[1] >> (bit + 1));
    }
    if (in_this) return hi ? -1 : 1;   // other prefix of this -> other first
    return hi ? 1 : -1;
}

const Monomial& Monomial::state_mask() {
    static const Monomial m = [] {
        Monomial s;
        for (int i = 1; i <= 36; ++i) s = s.with(state_var(i));
        return s;
    }();
    return m;
}

const Monomial& Monomial::coeff_mask() {
    static const Monomial m = [] {
        Monomial s;
        for (int k = 0; k < 64; ++k) s = s.with(coeff_var(k));
        return s;
    }();
    return m;
}

const Monomial& Monomial::user_mask() {
    static const Monomial m = [] {
        Monomial s;
        for (int j = 0; j < kUserSlots; ++j) s = s.with(user_var(j));
        return s;
    }();
    return m;
}

const Monomial& Monomial::fkl_mask() {
    static const Monomial m = mask_of({kVarF, kVarK, kVarL});
    return m;
}

const Monomial& Monomial::opaque_mask() {
    static const Monomial m = mask_of({kVarZ1, kVarZ2, kVarZ3, kVarZ4});
    return m;
}

Monomial Monomial::mask_of(std::initializer_list<VarId> vs) {
    Monomial m;
    for (VarId v : vs) m = m.with(v);
    return m;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::one() { return from_monomial(Monomial::one()); }

Polynomial Polynomial::var(VarId v) { return from_monomial(Monomial::var(v)); }

Polynomial Polynomial::from_monomial(const Monomial& m) {
    Polynomial p;
    p.terms_.push_back(m);
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end());
    Polynomial p;
    p.terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1) p.terms_.push_back(terms[i]);
        i = j;
    }
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.degree());
    return d;
}

Monomial Polynomial::support() const {
    Monomial s;
    for (const auto& m : terms_) s = s.unite(m);
    return s;
}

std::vector<VarId> Polynomial::support_vars() const { return support().vars(); }

Polynomial add(const Polynomial& a, const Polynomial& b) {
    std::vector<Monomial> out;
    out.reserve(a.term_count() + b.term_count());
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() && j < tb.size()) {
        int c = ta[i].cmp(tb[j]);
        if (c < 0) out.push_back(ta[i++]);
        else if (c > 0) out.push_back(tb[j++]);
        else { ++i; ++j; }   // XOR cancellation
    }
    out.insert(out.end(), ta.begin() + i, ta.end());
    out.insert(out.end(), tb.begin() + j, tb.end());
    return Polynomial::from_terms(std::move(out));
}

Polynomial mul(const Polynomial& a, const Polynomial& b, const Limits& lim) {
    if (a.is_zero() || b.is_zero()) return {};
    std::size_t prod = a.term_count() * b.term_count();
    if (prod > lim.max_terms)
        throw CapacityError("polynomial product exceeds term guard (" +
                            std::to_string(lim.max_terms) + " terms)");
    std::vector<Monomial> out;
    out.reserve(prod);
    for (const auto& ma : a.terms())
        for (const auto& mb : b.terms()) out.push_back(ma.unite(mb));
    return Polynomial::from_terms(std::move(out));
}

void Substitution::set(VarId v, Polynomial p) { map_[v] = std::move(p); }

const Polynomial* Substitution::find(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

Polynomial substitute(const Polynomial& p, const Substitution& sigma, const Limits& lim) {
    std::vector<Monomial> out;
    for (const auto& term : p.terms()) {
        Polynomial acc = Polynomial::one();
        Monomial passthrough;   // variables mapping to themselves
        for (VarId v : term.vars()) {
            if (const Polynomial* img = sigma.find(v)) {
                acc = mul(acc, *img, lim);
            } else {
                passthrough = passthrough.with(v);
            }
        }
        for (const auto& m : acc.terms()) {
            out.push_back(m.unite(passthrough));
            if (out.size() > lim.max_terms)
                throw CapacityError("substitution exceeds term guard");
        }
    }
    return Polynomial::from_terms(std::move(out));
}

void Assignment::set(VarId v, int bit) {
    domain_ = domain_.with(v);
    if (bit) ones_ = ones_.with(v);
    else ones_ = ones_.erase(Monomial::var(v));
}

bool Assignment::assigned(VarId v) const { return domain_.contains(v); }

int Assignment::get(VarId v) const {
    if (!assigned(v)) throw EvalError("variable not assigned: " + builtin_name(v));
    return ones_.contains(v) ? 1 : 0;
}

int evaluate(const Polynomial& p, const Assignment& a) {
    int acc = 0;
    for (const auto& m : p.terms()) {
        if (!m.subset_of(a.domain()))
            throw EvalError("unassigned variable in term " + format_monomial(m));
        acc ^= a.all_ones(m) ? 1 : 0;
    }
    return acc;
}

Polynomial rename_vars(const Polynomial& p, const std::map<VarId, VarId>& pi) {
    // Injectivity on the support.
    Monomial seen;
    Monomial support = p.support();
    for (const auto& [from, to] : pi) {
        if (!support.contains(from)) continue;
        if (seen.contains(to))
            throw Error("rename collision on " + builtin_name(to));
        seen = seen.with(to);
    }
    for (VarId v : support.vars()) {
        if (pi.find(v) == pi.end() && seen.contains(v))
            throw Error("rename collision on " + builtin_name(v));
    }
    std::vector<Monomial> out;
    out.reserve(p.term_count());
    for (const auto& term : p.terms()) {
        Monomial m;
        for (VarId v : term.vars()) {
            auto it = pi.find(v);
            m = m.with(it == pi.end() ? v : it->second);
        }
        out.push_back(m);
    }
    return Polynomial::from_terms(std::move(out));
}

}  // namespace t310

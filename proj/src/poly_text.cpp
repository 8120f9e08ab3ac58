#include <cctype>

#include "t310/poly.hpp"

namespace t310 {

namespace {

bool all_digits(std::string_view s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return !s.empty();
}

// A maximal alphanumeric run is either exactly one multi-character token
// (P6, P13, P20, Zdd, declared user symbol) or a juxtaposition of
// single-letter variables. Anything else is ambiguous.
std::vector<VarId> classify_run(std::string_view run, const SymbolTable* syms) {
    if (run.size() == 1) {
        VarId v = var_from_letter(run[0]);
        if (v == kInvalidVar) throw ParseError("unknown token '" + std::string(run) + "'");
        return {v};
    }
    if (run == "P6") return {kVarP6};
    if (run == "P13") return {kVarP13};
    if (run == "P20") return {kVarP20};
    if (run.size() == 3 && run[0] == 'Z' && all_digits(run.substr(1))) {
        int k = (run[1] - '0') * 10 + (run[2] - '0');
        if (k > 63) throw ParseError("coefficient index out of range in '" + std::string(run) + "'");
        return {coeff_var(k)};
    }
    if (syms) {
        if (auto v = syms->find(run)) return {*v};
    }
    // Juxtaposed single letters.
    std::vector<VarId> vs;
    for (char c : run) {
        VarId v = var_from_letter(c);
        if (v == kInvalidVar)
            throw ParseError("ambiguous or unknown token '" + std::string(run) +
                             "' (multi-character tokens must be '*'-separated)");
        vs.push_back(v);
    }
    return vs;
}

}  // namespace

Polynomial parse_poly(std::string_view text, const SymbolTable* syms) {
    // Strip whitespace up front; it carries no meaning anywhere.
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty polynomial");
    if (s == "0") return Polynomial::zero();

    std::vector<Monomial> terms;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t plus = s.find('+', pos);
        std::string_view term(s.data() + pos, (plus == std::string::npos ? s.size() : plus) - pos);
        if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
        if (term == "1") {
            terms.push_back(Monomial::one());
        } else {
            Monomial m;
            std::size_t i = 0;
            bool first = true;
            while (i < term.size()) {
                if (term[i] == '*') {
                    if (first || i + 1 == term.size()) throw ParseError("misplaced '*'");
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < term.size() && std::isalnum(static_cast<unsigned char>(term[j]))) ++j;
                if (j == i) throw ParseError(std::string("unexpected character '") + term[i] + "'");
                for (VarId v : classify_run(term.substr(i, j - i), syms)) {
                    // x*x = x: set semantics absorbs repeats.
                    m = m.with(v);
                }
                i = j;
                first = false;
            }
            terms.push_back(m);
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return Polynomial::from_terms(std::move(terms));
}

std::string format_monomial(const Monomial& m, const SymbolTable* syms) {
    if (m.is_one()) return "1";
    std::string out;
    bool prev_multi = false;
    bool first = true;
    for (VarId v : m.vars()) {
        std::string name = builtin_name(v);
        if (name.empty()) name = syms ? syms->name(v) : "u" + std::to_string(v - kUserBase);
        bool multi = name.size() > 1;
        if (!first && (multi || prev_multi)) out += '*';
        out += name;
        prev_multi = multi;
        first = false;
    }
    return out;
}

std::string format_poly(const Polynomial& p, const SymbolTable* syms) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.terms().size(); ++i) {
        if (i) out += '+';
        out += format_monomial(p.terms()[i], syms);
    }
    return out;
}

// -------------------------------------------------------------- truth table

std::uint64_t moebius64(std::uint64_t bits) {
    static constexpr std::uint64_t kLow[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
        0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
    };
    for (int d = 0; d < 6; ++d) bits ^= (bits & kLow[d]) << (1 << d);
    return bits;
}

std::array<VarId, 6> formal_inputs() {
    return {state_var(36), state_var(35), state_var(34),
            state_var(33), state_var(32), state_var(31)};
}

BooleanFunc BooleanFunc::from_hex(std::string_view hex16) {
    if (hex16.size() != 16) throw ParseError("truth table must be 16 hex digits");
    std::uint64_t t = 0;
    for (char c : hex16) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw ParseError("bad hex digit in truth table");
        t = (t << 4) | static_cast<std::uint64_t>(d);
    }
    return BooleanFunc{t};
}

std::string BooleanFunc::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 0; i < 16; ++i) s[i] = digits[(tt >> (60 - 4 * i)) & 0xf];
    return s;
}

BooleanFunc BooleanFunc::from_anf(const Polynomial& p) {
    auto formal = formal_inputs();
    Monomial allowed;
    for (VarId v : formal) allowed = allowed.with(v);
    std::uint64_t coeffs = 0;
    for (const auto& m : p.terms()) {
        if (!m.subset_of(allowed))
            throw ParseError("ANF of a Boolean function must use formal inputs a..f only");
        unsigned k = 0;
        for (int i = 0; i < 6; ++i)
            if (m.contains(formal[i])) k |= 1u << i;
        coeffs |= std::uint64_t{1} << k;
    }
    return BooleanFunc{moebius64(coeffs)};
}

Polynomial BooleanFunc::anf() const {
    std::uint64_t coeffs = moebius64(tt);
    auto formal = formal_inputs();
    std::vector<Monomial> terms;
    for (unsigned k = 0; k < 64; ++k) {
        if (!((coeffs >> k) & 1)) continue;
        Monomial m;
        for (int i = 0; i < 6; ++i)
            if ((k >> i) & 1) m = m.with(formal[i]);
        terms.push_back(m);
    }
    return Polynomial::from_terms(std::move(terms));
}

int BooleanFunc::eval(int e1, int e2, int e3, int e4, int e5, int e6) const {
    unsigned idx = static_cast<unsigned>((e1 & 1) | (e2 & 1) << 1 | (e3 & 1) << 2 |
                                         (e4 & 1) << 3 | (e5 & 1) << 4 | (e6 & 1) << 5);
    return eval_index(idx);
}

}  // namespace t310

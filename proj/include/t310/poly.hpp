#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "t310/error.hpp"

namespace t310 {

// Variable universe, 128 ids with a fixed layout:
//   1..36    state bits x1..x36 (letters: a..z = x36..x11, M..V = x10..x1)
//   37..39   F, K (=S1), L (=S2)
//   40..43   opaque round-function instances Z1..Z4, printed Z, Y, X, W
//   44..46   wiring placeholders P6, P13, P20
//   47..110  Z-coefficient variables Z00..Z63
//   111..127 user-declared symbols
using VarId = std::uint8_t;

inline constexpr VarId kInvalidVar = 0;
inline constexpr VarId kVarF = 37;
inline constexpr VarId kVarK = 38;
inline constexpr VarId kVarL = 39;
inline constexpr VarId kVarZ1 = 40;
inline constexpr VarId kVarZ2 = 41;
inline constexpr VarId kVarZ3 = 42;
inline constexpr VarId kVarZ4 = 43;
inline constexpr VarId kVarP6 = 44;
inline constexpr VarId kVarP13 = 45;
inline constexpr VarId kVarP20 = 46;
inline constexpr VarId kCoeffBase = 47;   // Z00
inline constexpr VarId kUserBase = 111;
inline constexpr int kUserSlots = 17;

constexpr VarId state_var(int i) { return static_cast<VarId>(i); }  // i in 1..36
constexpr VarId coeff_var(int k) { return static_cast<VarId>(kCoeffBase + k); }  // k in 0..63
constexpr VarId user_var(int j) { return static_cast<VarId>(kUserBase + j); }

constexpr bool is_state(VarId v) { return v >= 1 && v <= 36; }
constexpr bool is_coeff(VarId v) { return v >= kCoeffBase && v < kCoeffBase + 64; }
constexpr bool is_opaque(VarId v) { return v >= kVarZ1 && v <= kVarZ4; }
constexpr bool is_user(VarId v) { return v >= kUserBase; }

// Letter names: a..z = x36..x11, M..V = x10..x1.
VarId var_from_letter(char c);           // kInvalidVar if not a single-letter name
std::string builtin_name(VarId v);       // empty for user symbols

// Registry for user-declared symbols (template coefficients etc).
class SymbolTable {
public:
    VarId declare(const std::string& name);
    std::optional<VarId> find(std::string_view name) const;
    const std::string& name(VarId v) const;
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
};

struct Limits {
    std::size_t max_terms = std::size_t{1} << 22;
};
const Limits& default_limits();

// A multilinear monomial: a set of variables, empty set = constant 1.
// Stored as a 128-bit mask over display-rank positions so that mask order
// is also the canonical print order.
class Monomial {
public:
    Monomial() : w_{0, 0} {}
    static Monomial one() { return Monomial(); }
    static Monomial var(VarId v);

    bool is_one() const { return (w_[0] | w_[1]) == 0; }
    int degree() const;
    bool contains(VarId v) const;
    bool contains_any(const Monomial& set) const;   // set used as a var mask
    bool subset_of(const Monomial& set) const;
    Monomial intersect(const Monomial& set) const;
    Monomial erase(const Monomial& set) const;
    Monomial with(VarId v) const;
    Monomial unite(const Monomial& o) const;        // monomial product

    std::vector<VarId> vars() const;                // in canonical print order

    // Lexicographic order on the ascending rank sequence; a proper prefix
    // sorts first. This is the term order used everywhere.
    int cmp(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return w_[0] == o.w_[0] && w_[1] == o.w_[1]; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const { return cmp(o) < 0; }

    std::uint64_t word(int i) const { return w_[i]; }

    static const Monomial& state_mask();    // all 36 state vars
    static const Monomial& coeff_mask();    // Z00..Z63
    static const Monomial& user_mask();
    static const Monomial& fkl_mask();      // F, K, L
    static const Monomial& opaque_mask();   // Z, Y, X, W
    static Monomial mask_of(std::initializer_list<VarId> vs);

private:
    std::uint64_t w_[2];
};

// Sparse multilinear polynomial over GF(2): an XOR of distinct monomials,
// kept sorted in canonical order. Empty = 0, {1} = constant one.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial zero() { return {}; }
    static Polynomial one();
    static Polynomial var(VarId v);
    static Polynomial from_monomial(const Monomial& m);
    // Terms need not be sorted or distinct; duplicates cancel mod 2.
    static Polynomial from_terms(std::vector<Monomial> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Monomial>& terms() const { return terms_; }
    int degree() const;
    Monomial support() const;                        // union of all term vars
    std::vector<VarId> support_vars() const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    std::vector<Monomial> terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b, const Limits& lim = default_limits());
inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b); }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }

// Simultaneous substitution; unlisted variables map to themselves.
class Substitution {
public:
    void set(VarId v, Polynomial p);
    const Polynomial* find(VarId v) const;

private:
    std::map<VarId, Polynomial> map_;
};

Polynomial substitute(const Polynomial& p, const Substitution& sigma,
                      const Limits& lim = default_limits());

// Total assignment over a declared variable subset.
class Assignment {
public:
    void set(VarId v, int bit);
    bool assigned(VarId v) const;
    int get(VarId v) const;
    const Monomial& domain() const { return domain_; }
    bool all_ones(const Monomial& m) const { return m.subset_of(ones_); }

private:
    Monomial domain_;
    Monomial ones_;
};

int evaluate(const Polynomial& p, const Assignment& a);

// Term-by-term renaming; pi must be injective on p's support.
Polynomial rename_vars(const Polynomial& p, const std::map<VarId, VarId>& pi);

// Text form. Grammar: poly := term ('+' term)* | '0'; term := '1' | factors;
// single-letter variables may be juxtaposed, multi-character tokens
// (P6, P13, P20, Zdd, user symbols) must be '*'-separated.
Polynomial parse_poly(std::string_view text, const SymbolTable* syms = nullptr);
std::string format_poly(const Polynomial& p, const SymbolTable* syms = nullptr);
std::string format_monomial(const Monomial& m, const SymbolTable* syms = nullptr);

// 6-input Boolean function as a 64-bit truth table. Bit i of tt = value at
// input integer i, formal input e1 = least significant index bit. ANF duality
// uses the formal letters a..f (= e1..e6), i.e. state ids x36..x31.
struct BooleanFunc {
    std::uint64_t tt = 0;

    static BooleanFunc from_tt(std::uint64_t t) { return BooleanFunc{t}; }
    static BooleanFunc from_hex(std::string_view hex16);
    static BooleanFunc from_anf(const Polynomial& p);
    std::string hex() const;
    Polynomial anf() const;
    int eval_index(unsigned idx) const { return static_cast<int>((tt >> (idx & 63)) & 1); }
    int eval(int e1, int e2, int e3, int e4, int e5, int e6) const;
    bool operator==(const BooleanFunc& o) const { return tt == o.tt; }
};

// Moebius transform (self-inverse) between truth table and ANF coefficient
// vector, both packed as 64-bit words indexed by the input integer.
std::uint64_t moebius64(std::uint64_t bits);

// Formal input letters a..f as variable ids (a = e1).
std::array<VarId, 6> formal_inputs();

}  // namespace t310

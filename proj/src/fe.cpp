#include "t310/fe.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace t310 {

Polynomial InvariantCandidate::combined() const {
    Polynomial p = poly;
    for (const auto& [sym, basis] : templ)
        p = p + mul(Polynomial::var(sym), basis);
    return p;
}

void InvariantCandidate::check_support() const {
    Monomial allowed = Monomial::state_mask().unite(Monomial::user_mask());
    if (!combined().support().subset_of(allowed))
        throw Error("invariant candidate may use state variables and template symbols only");
    for (const auto& [sym, basis] : templ) {
        if (!is_user(sym)) throw Error("template coefficients must be user symbols");
        if (!basis.support().subset_of(Monomial::state_mask()))
            throw Error("template basis polynomials must be over state variables");
    }
}

std::string CaseSpec::str() const {
    std::string s;
    auto app = [&](const char* name, const std::optional<int>& v) {
        if (!v) return;
        if (!s.empty()) s += ',';
        s += name;
        s += '=';
        s += static_cast<char>('0' + *v);
    };
    app("F", f);
    app("K", k);
    app("L", l);
    return s.empty() ? "unrestricted" : s;
}

std::vector<CaseSpec> all_cases() {
    std::vector<CaseSpec> cs;
    for (int f = 0; f < 2; ++f)
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) cs.push_back(CaseSpec::full(f, k, l));
    return cs;
}

CaseSpec parse_case(std::string_view text) {
    CaseSpec c;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view part = text.substr(pos, (comma == std::string_view::npos ? text.size() : comma) - pos);
        if (part.size() < 3 || part[part.size() - 2] != '=' ||
            (part.back() != '0' && part.back() != '1'))
            throw ParseError("bad case component '" + std::string(part) + "' (want e.g. F=0)");
        int bit = part.back() - '0';
        std::string_view name = part.substr(0, part.size() - 2);
        if (name == "F") c.f = bit;
        else if (name == "K" || name == "S1") c.k = bit;
        else if (name == "L" || name == "S2") c.l = bit;
        else throw ParseError("bad case variable '" + std::string(name) + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return c;
}

std::vector<CaseSpec> parse_cases(std::string_view text) {
    if (text == "all" || text.empty()) return all_cases();
    std::vector<CaseSpec> cs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        cs.push_back(parse_case(text.substr(pos, (semi == std::string_view::npos ? text.size() : semi) - pos)));
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    return cs;
}

Polynomial instance_expansion(const std::array<VarId, 6>& wires) {
    std::vector<Monomial> terms;
    terms.reserve(64);
    for (unsigned kk = 0; kk < 64; ++kk) {
        Monomial m = Monomial::var(coeff_var(static_cast<int>(kk)));
        for (int b = 0; b < 6; ++b)
            if ((kk >> b) & 1) m = m.with(wires[b]);
        terms.push_back(m);
    }
    return Polynomial::from_terms(std::move(terms));
}

Polynomial fe_build(const LzsKey& key, const InvariantCandidate& inv, FeMode mode,
                    const BooleanFunc* z, const RoundOptions& opts, const Limits& lim) {
    inv.check_support();
    Polynomial p = inv.combined();

    // Opaque FE first: substitution images stay tiny, and the instance
    // symbols can be expanded afterwards on the (usually much smaller) result.
    auto anf = round_anf(key, ZMode::Opaque, nullptr, opts);
    Substitution sigma;
    for (int i = 1; i <= 36; ++i) sigma.set(state_var(i), anf[i - 1]);
    Polynomial fe = p + substitute(p, sigma, lim);
    if (mode == FeMode::Opaque) return fe;

    auto wires = instance_inputs(key);
    Substitution inst;
    if (mode == FeMode::Expanded) {
        for (int j = 0; j < 4; ++j)
            inst.set(static_cast<VarId>(kVarZ1 + j), instance_expansion(wires[j]));
    } else {
        if (!z) throw Error("concrete FE requires a Boolean function");
        for (int j = 0; j < 4; ++j) {
            std::uint64_t coeffs = moebius64(z->tt);
            std::vector<Monomial> terms;
            for (unsigned kk = 0; kk < 64; ++kk) {
                if (!((coeffs >> kk) & 1)) continue;
                Monomial m;
                for (int b = 0; b < 6; ++b)
                    if ((kk >> b) & 1) m = m.with(wires[j][b]);
                terms.push_back(m);
            }
            inst.set(static_cast<VarId>(kVarZ1 + j), Polynomial::from_terms(std::move(terms)));
        }
    }
    return substitute(fe, inst, lim);
}

Polynomial fe_specialize(const Polynomial& fe, const CaseSpec& c) {
    Substitution sigma;
    auto put = [&](VarId v, const std::optional<int>& bit) {
        if (bit) sigma.set(v, *bit ? Polynomial::one() : Polynomial::zero());
    };
    put(kVarF, c.f);
    put(kVarK, c.k);
    put(kVarL, c.l);
    return substitute(fe, sigma);
}

FeSystem fe_extract_system(const LzsKey& key, const InvariantCandidate& inv,
                           const std::vector<CaseSpec>& cases, const RoundOptions& opts,
                           const Limits& lim) {
    Polynomial fe = fe_build(key, inv, FeMode::Expanded, nullptr, opts, lim);
    FeSystem sys;
    sys.cases = cases;
    std::map<Monomial, std::vector<Polynomial>> grouped;
    Monomial state = Monomial::state_mask();
    for (const auto& c : cases) {
        Polynomial spec = fe_specialize(fe, c);
        // Group terms by their state-variable part; the rest (coefficient
        // variables, template symbols, unspecialized F/K/L) forms the
        // constraint polynomial.
        std::map<Monomial, std::vector<Monomial>> buckets;
        for (const auto& term : spec.terms())
            buckets[term.intersect(state)].push_back(term.erase(state));
        for (auto& [mono, rest] : buckets) {
            Polynomial constraint = Polynomial::from_terms(std::move(rest));
            if (constraint.is_zero()) continue;
            auto& seen = grouped[mono];
            if (std::find(seen.begin(), seen.end(), constraint) == seen.end())
                seen.push_back(std::move(constraint));
        }
    }
    for (auto& [mono, polys] : grouped)
        for (auto& q : polys) sys.constraints.emplace_back(mono, std::move(q));
    // std::map iteration is already sorted by monomial; keep insertion order
    // within a monomial stable across runs by sorting on the formatted form.
    std::stable_sort(sys.constraints.begin(), sys.constraints.end(),
                     [](const auto& a, const auto& b) {
                         int c = a.first.cmp(b.first);
                         if (c != 0) return c < 0;
                         return format_poly(a.second) < format_poly(b.second);
                     });
    return sys;
}

std::string FeSystem::text_report(const SymbolTable* syms) const {
    std::ostringstream os;
    for (const auto& [mono, poly] : constraints)
        os << format_monomial(mono, syms) << " : " << format_poly(poly, syms) << "\n";
    return os.str();
}

std::vector<std::pair<CaseSpec, bool>> fe_check(const LzsKey& key, const InvariantCandidate& inv,
                                                const BooleanFunc& z,
                                                const std::vector<CaseSpec>& cases,
                                                const Limits& lim) {
    Polynomial fe = fe_build(key, inv, FeMode::Concrete, &z, {}, lim);
    std::vector<std::pair<CaseSpec, bool>> out;
    out.reserve(cases.size());
    for (const auto& c : cases) out.emplace_back(c, fe_specialize(fe, c).is_zero());
    return out;
}

bool fe_check_all(const LzsKey& key, const InvariantCandidate& inv, const BooleanFunc& z,
                  const std::vector<CaseSpec>& cases, const Limits& lim) {
    for (const auto& [c, ok] : fe_check(key, inv, z, cases, lim))
        if (!ok) return false;
    return true;
}

}  // namespace t310

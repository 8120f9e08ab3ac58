#pragma once

// Shared key/polynomial fixtures used across the suites.

#include <fstream>
#include <sstream>
#include <string>

#include "t310/fe.hpp"
#include "t310/lzs.hpp"
#include "t310/poly.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string keys_path() { return std::string(T310_FIXTURE_DIR) + "/keys.txt"; }

inline t310::LzsKey key(const std::string& id) {
    for (const auto& k : t310::parse_lzs_file(read_file(keys_path())))
        if (k.id == id) return k;
    throw t310::Error("fixture key not found: " + id);
}

inline t310::Polynomial P(const std::string& text) { return t310::parse_poly(text); }

// Candidate invariants.
inline t310::Polynomial inv317() { return P("efg+efh+egh+fgh+fg"); }
inline t310::Polynomial inv317_f1() { return P("ef+fg+eh+gh"); }
inline t310::Polynomial inv827() { return P("a+b+c+ac+d+bd+e+ce+f+df+g+ag+eg+h+bh+fh"); }
inline t310::Polynomial inv847() { return P("yM+zN+MO+NP+yQ+OQ+zR+PR+y+z+M+N+O+P+Q+R"); }
inline t310::Polynomial inv714() {
    return P("bc+cd+dy+yz+zM+MN+eN+ef+fg+gh+hO+OP+PQ+QR+aR+ab+bg+ch+"
             "dO+yP+zQ+MR+aN+be+cf+dg+hy+zO+MP+NQ+eR+af");
}
inline t310::Polynomial inv124() {
    return P("bl+cO+dP+mQ+nR+ao+bp+cy+dz+mM+nN+eo+"
             "fp+gy+hz+iM+jN+ek+fl+gO+hP+iQ+jR+ak");
}
inline t310::Polynomial inv991() { return P("an+gn+u+v+w+x+O+P+Q+R"); }
inline t310::Polynomial inv551() { return P("eg+fh+eo+fp+gm+hn+mo+np"); }
inline t310::Polynomial factor881_a() { return P("n+b+p+r+t+v+x+z+N+P+R+T+V"); }
inline t310::Polynomial factor881_b() { return P("a+m+o+q+s+u+w+y+M+O+Q+S+U"); }
inline t310::Polynomial inv881() { return t310::mul(factor881_a(), factor881_b()); }

// Printed solutions (ANF over the formal letters a..f).
inline t310::BooleanFunc z317() { return t310::BooleanFunc::from_anf(P("a+d+ad+cd+f+af")); }
inline t310::BooleanFunc z827() {
    return t310::BooleanFunc::from_anf(P("e+be+ce+bce+bf+bcf+bef+bcef"));
}
inline t310::BooleanFunc z847() {
    return t310::BooleanFunc::from_anf(P("d+cd+bd+bcd+cf+bcf+cdf+bcdf"));
}
inline t310::BooleanFunc z714() {
    return t310::BooleanFunc::from_anf(P("1+dc+cb+fb+b+c+de+df+db+e+f+d+eb"));
}
inline t310::BooleanFunc z124() {
    return t310::BooleanFunc::from_anf(
        P("1+dfe+ba+fa+dbe+fae+db+f+b+df+ad+ae+d+de+fad+fe+e+a+eb+bad+bae"));
}
inline t310::BooleanFunc z991() { return t310::BooleanFunc::from_anf(P("a+ae+ce+bf+df")); }
inline t310::BooleanFunc z551() { return t310::BooleanFunc::from_anf(P("1+d+e+f+de+cde+def")); }

// The 8 pre-FE polynomials of the Z1/Z4 construction, as printed (factored
// form rebuilt with ring operations).
inline std::vector<t310::Polynomial> prefe_z1z4() {
    using t310::mul;
    auto chain = P("F+Z+L+Y+X+P6+P13+P20");   // F + Z1 + P6 + Z2 + P13 + L + Z3 + P20
    auto chain_nof = P("Z+L+Y+X+P6+P13+P20");
    auto tail = P("L+Y+X+P6+P13+P20");
    std::vector<t310::Polynomial> rows;
    rows.push_back(P("Wb+Fd") + mul(P("b+f+N+R"), chain) + mul(P("h"), P("F+Z")) + P("Fz") +
                   mul(P("P"), P("F+Z")) + P("WR"));
    rows.push_back(mul(tail, P("c+g+M+Q")) + mul(P("c"), P("Z+W")) + P("ZM+WQ"));
    rows.push_back(P("Fb+FN") + mul(P("W"), P("d+P")) + mul(P("F+Z"), P("f+R")) +
                   mul(chain, P("d+h+z+P")));
    rows.push_back(mul(P("F"), P("Z+W+a+e+y+O")) + P("We+Zy") + mul(chain_nof, P("W+a+e+1")));
    rows.push_back(mul(P("Z"), P("d+z")) + mul(P("W"), P("f+N")) + mul(P("F"), P("d+h+z+P")) +
                   mul(chain, P("b+f+N+R")));
    rows.push_back(mul(P("W"), P("g+M")) + mul(P("Z"), P("g+Q")) + mul(tail, P("c+g+M+Q")));
    rows.push_back(mul(P("Z"), P("b+N")) + mul(P("W"), P("h+z")) + mul(P("F"), P("b+f+N+R")) +
                   mul(chain, P("d+h+z+P")));
    rows.push_back(P("ZW") + mul(P("Z"), P("a+e")) + mul(P("W"), P("y+O")));
    return rows;
}

// The dimension-3 space printed after eliminating F and P6 monomials.
inline std::vector<t310::Polynomial> reduced3_z1z4() {
    return {P("Zc+Wc+ZM+WQ+Zg+Wg+WM+ZQ"),
            P("WR+Wf+WN+Zh+Zz+ZP+Zd+Wb"),
            P("ZW+Za+Ze+Wy+WO")};
}

inline std::vector<t310::CaseSpec> cases_k0() {
    using t310::CaseSpec;
    return {CaseSpec::full(0, 0, 0), CaseSpec::full(0, 0, 1), CaseSpec::full(1, 0, 0),
            CaseSpec::full(1, 0, 1)};
}

}  // namespace fixtures

#include "ffdyn/dsl.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "ffdyn/valuation.hpp"

namespace ffdyn {

SyntaxError::SyntaxError(std::size_t pos, const std::string& expected)
    : Error("syntax error at position " + std::to_string(pos) + ": " + expected),
      position(pos) {}

namespace {

constexpr const char kVarLetters[] = {'x', 'y', 'z', 'w'};
constexpr int kMaxDimension = 3;
constexpr long kMaxExponent = 10000;

// ---- expression values -----------------------------------------------------

// A polynomial in the projective variables with coefficients in Q(t).
// Points use zero variables, so a value is then a single coefficient.
struct Value {
    std::map<XMono, RationalFunction> terms; // empty means zero
};

Value value_const(int nvars, const RationalFunction& c) {
    Value v;
    if (!c.is_zero()) v.terms[XMono(static_cast<std::size_t>(nvars), 0)] = c;
    return v;
}

Value value_var(int nvars, int index) {
    Value v;
    XMono m(static_cast<std::size_t>(nvars), 0);
    m[static_cast<std::size_t>(index)] = 1;
    v.terms[std::move(m)] = RationalFunction::constant(Rational(1));
    return v;
}

Value value_add(const Value& a, const Value& b) {
    Value out = a;
    for (const auto& [mono, c] : b.terms) {
        auto it = out.terms.find(mono);
        if (it == out.terms.end()) {
            out.terms.emplace(mono, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.terms.erase(it);
        }
    }
    return out;
}

Value value_neg(const Value& a) {
    Value out;
    for (const auto& [mono, c] : a.terms) out.terms.emplace(mono, -c);
    return out;
}

Value value_mul(const Value& a, const Value& b) {
    Value out;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            XMono m(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
            RationalFunction c = ca * cb;
            auto it = out.terms.find(m);
            if (it == out.terms.end()) {
                out.terms.emplace(std::move(m), c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
    }
    return out;
}

bool value_is_coefficient(const Value& a) {
    for (const auto& [mono, c] : a.terms) {
        (void)c;
        for (int e : mono)
            if (e != 0) return false;
    }
    return true;
}

RationalFunction value_as_coefficient(const Value& a) {
    if (a.terms.empty()) return RationalFunction();
    return a.terms.begin()->second;
}

// ---- cursor ----------------------------------------------------------------

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    explicit Cursor(const std::string& s) : text(s) {}

    void skip() {
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!eat(c)) fail(what);
    }

    [[noreturn]] void fail(const std::string& expected) {
        skip();
        throw SyntaxError(pos, expected);
    }

    bool at_end() { return peek() == '\0'; }

    std::string word() {
        skip();
        std::string w;
        while (pos < text.size() &&
               std::isalpha(static_cast<unsigned char>(text[pos])))
            w.push_back(text[pos++]);
        return w;
    }

    std::string digits() {
        skip();
        std::string d;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            d.push_back(text[pos++]);
        return d;
    }
};

// ---- expression parser -----------------------------------------------------

struct Context {
    int nvars = 0;    // number of projective variables in scope (0 for points)
    bool allow_t = true;
};

Value parse_expr(Cursor& cur, const Context& ctx);

long parse_integer_exponent(Cursor& cur) {
    if (cur.peek() == '(') {
        // evaluate a parenthesized constant so that x^(1/2) is reported as an
        // unsupported extension rather than a syntax error
        std::size_t at = cur.pos;
        cur.eat('(');
        Context constant_ctx;
        constant_ctx.nvars = 0;
        constant_ctx.allow_t = false;
        Value v = parse_expr(cur, constant_ctx);
        cur.expect(')', "expected ')' after the exponent");
        RationalFunction c = value_as_coefficient(v);
        Rational r = c.num().is_zero() ? Rational(0) : c.num().coeff(0);
        if (r.get_den() != 1)
            throw UnsupportedExtensionError(
                "fractional exponents are not supported (position " +
                std::to_string(at) + ")");
        if (r < 0)
            throw UnsupportedExtensionError(
                "negative exponents are not supported (position " +
                std::to_string(at) + ")");
        Integer num = r.get_num();
        if (!num.fits_slong_p() || num.get_si() > kMaxExponent)
            throw ResourceLimitError("exponent exceeds " + std::to_string(kMaxExponent));
        return num.get_si();
    }
    std::string d = cur.digits();
    if (d.empty()) cur.fail("expected a nonnegative integer exponent after '^'");
    if (d.size() > 5) throw ResourceLimitError("exponent exceeds " + std::to_string(kMaxExponent));
    long e = std::stol(d);
    if (e > kMaxExponent)
        throw ResourceLimitError("exponent exceeds " + std::to_string(kMaxExponent));
    return e;
}

Value value_pow(const Value& base, long e, int nvars) {
    if (e == 0) return value_const(nvars, RationalFunction::constant(Rational(1)));
    // binary powering; bases are small polynomial values
    Value acc = base;
    long k = e;
    Value out;
    bool have = false;
    while (k > 0) {
        if (k & 1) {
            out = have ? value_mul(out, acc) : acc;
            have = true;
        }
        k >>= 1;
        if (k > 0) acc = value_mul(acc, acc);
    }
    return out;
}

Value parse_atom(Cursor& cur, const Context& ctx) {
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string d = cur.digits();
        if (cur.pos < cur.text.size() && cur.text[cur.pos] == '.')
            throw UnsupportedExtensionError(
                "decimal literals are not supported; use a fraction p/q (position " +
                std::to_string(cur.pos) + ")");
        return value_const(ctx.nvars, RationalFunction::constant(Rational(Integer(d))));
    }
    if (c == '(') {
        cur.eat('(');
        Value v = parse_expr(cur, ctx);
        cur.expect(')', "expected ')'");
        return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t at = cur.pos;
        std::string w = cur.word();
        if (w == "t") {
            if (!ctx.allow_t)
                throw SyntaxError(at, "exponents must be rational constants");
            return value_const(ctx.nvars,
                               RationalFunction::from_poly(UniPoly::monomial(Rational(1), 1)));
        }
        if (w.size() == 1) {
            for (int i = 0; i < ctx.nvars; ++i) {
                if (w[0] == kVarLetters[i]) return value_var(ctx.nvars, i);
            }
        }
        if (ctx.nvars == 0)
            throw SyntaxError(at, "only t and rational constants may appear here, found '" + w + "'");
        throw SyntaxError(at, "unknown symbol '" + w + "' (variables here: t, " +
                                  [&] {
                                      std::string names;
                                      for (int i = 0; i < ctx.nvars; ++i) {
                                          if (i) names += ", ";
                                          names.push_back(kVarLetters[i]);
                                      }
                                      return names;
                                  }() +
                                  ")");
    }
    cur.fail("expected a number, a variable, or '('");
}

Value parse_factor(Cursor& cur, const Context& ctx) {
    if (cur.eat('-')) return value_neg(parse_factor(cur, ctx));
    if (cur.eat('+')) return parse_factor(cur, ctx);
    Value v = parse_atom(cur, ctx);
    while (cur.peek() == '^') {
        cur.eat('^');
        v = value_pow(v, parse_integer_exponent(cur), ctx.nvars);
    }
    return v;
}

Value parse_term(Cursor& cur, const Context& ctx) {
    Value v = parse_factor(cur, ctx);
    for (;;) {
        if (cur.eat('*')) {
            v = value_mul(v, parse_factor(cur, ctx));
        } else if (cur.eat('/')) {
            std::size_t at = cur.pos;
            Value divisor = parse_factor(cur, ctx);
            if (!value_is_coefficient(divisor))
                throw UnsupportedExtensionError(
                    "division by an expression in the projective variables is not "
                    "supported (position " +
                    std::to_string(at) + ")");
            RationalFunction d = value_as_coefficient(divisor);
            if (d.is_zero()) throw SyntaxError(at, "division by zero");
            RationalFunction inv = RationalFunction::constant(Rational(1)) / d;
            Value scale = value_const(ctx.nvars, inv);
            v = value_mul(v, scale);
        } else {
            break;
        }
    }
    return v;
}

Value parse_expr(Cursor& cur, const Context& ctx) {
    Value v = parse_term(cur, ctx);
    for (;;) {
        if (cur.eat('+')) {
            v = value_add(v, parse_term(cur, ctx));
        } else if (cur.eat('-')) {
            v = value_add(v, value_neg(parse_term(cur, ctx)));
        } else {
            break;
        }
    }
    return v;
}

// ---- statements ------------------------------------------------------------

struct Statement {
    StatementKind kind;
    int n = 0;
    std::vector<Value> coords;
};

Statement parse_statement(const std::string& text) {
    Cursor cur(text);
    Statement st;

    std::size_t at = cur.pos;
    cur.skip();
    at = cur.pos;
    std::string kw = cur.word();
    if (kw == "map") {
        st.kind = StatementKind::Map;
    } else if (kw == "point") {
        st.kind = StatementKind::Point;
    } else {
        throw SyntaxError(at, "expected 'map' or 'point'");
    }

    cur.skip();
    at = cur.pos;
    if (!cur.eat('P')) cur.fail("expected the space marker 'P<dimension>'");
    std::string dim = cur.digits();
    if (dim.empty()) cur.fail("expected a dimension after 'P'");
    long n = std::stol(dim.size() > 3 ? "999" : dim);
    if (n < 1 || n > kMaxDimension)
        throw SyntaxError(at, "dimension must be between 1 and " +
                                  std::to_string(kMaxDimension));
    st.n = static_cast<int>(n);

    cur.expect(':', "expected ':'");
    cur.expect('[', "expected '['");

    Context ctx;
    ctx.nvars = st.kind == StatementKind::Map ? st.n + 1 : 0;
    ctx.allow_t = true;

    st.coords.push_back(parse_expr(cur, ctx));
    while (cur.eat(',')) st.coords.push_back(parse_expr(cur, ctx));
    cur.expect(']', "expected ',' or ']'");
    if (!cur.at_end()) cur.fail("unexpected trailing input");

    const std::size_t want = static_cast<std::size_t>(st.n) + 1;
    if (st.coords.size() != want)
        throw SyntaxError(cur.pos, "P" + std::to_string(st.n) + " needs " +
                                       std::to_string(want) + " coordinates, found " +
                                       std::to_string(st.coords.size()));
    return st;
}

SelfMap map_from_statement(const Statement& st) {
    // homogeneity per coordinate, then equal degrees across coordinates
    std::vector<int> degrees(st.coords.size(), -1);
    for (std::size_t i = 0; i < st.coords.size(); ++i) {
        for (const auto& [mono, c] : st.coords[i].terms) {
            (void)c;
            int total = 0;
            for (int e : mono) total += e;
            if (degrees[i] == -1) {
                degrees[i] = total;
            } else if (degrees[i] != total) {
                throw NotHomogeneousError(
                    "coordinate " + std::to_string(i) + " mixes total degrees " +
                    std::to_string(degrees[i]) + " and " + std::to_string(total));
            }
        }
    }
    int common = -1;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] == -1) continue; // zero coordinate
        if (common == -1) {
            common = degrees[i];
        } else if (degrees[i] != common) {
            throw MixedDegreesError("coordinates have degrees " + std::to_string(common) +
                                    " and " + std::to_string(degrees[i]) +
                                    "; forms must share one degree");
        }
    }
    if (common == -1) throw AllZeroError("all coordinate forms are zero");

    // clear the joint denominator so coefficients become polynomials in t
    UniPoly den_lcm = UniPoly::one();
    for (const Value& v : st.coords)
        for (const auto& [mono, c] : v.terms) {
            (void)mono;
            if (!c.is_polynomial()) den_lcm = lcm_unipoly(den_lcm, c.den());
        }

    std::vector<CoordForm> forms(st.coords.size());
    for (std::size_t i = 0; i < st.coords.size(); ++i) {
        for (const auto& [mono, c] : st.coords[i].terms) {
            UniPoly u = c.num() * den_lcm.exact_div(c.den());
            forms[i][mono] = BinaryForm::from_unipoly(u, u.degree());
        }
    }
    return SelfMap::from_forms(st.n, std::move(forms));
}

Point point_from_statement(const Statement& st) {
    std::vector<RationalFunction> coords;
    coords.reserve(st.coords.size());
    for (const Value& v : st.coords) coords.push_back(value_as_coefficient(v));
    return Point::from_rational_functions(coords);
}

// ---- printing --------------------------------------------------------------

bool is_single_term(const UniPoly& u) {
    int nonzero = 0;
    for (int i = 0; i <= u.degree(); ++i)
        if (u.coeff(i) != 0) ++nonzero;
    return nonzero == 1;
}

std::string print_monomial(const XMono& mono) {
    std::string out;
    for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        if (!out.empty()) out += "*";
        out.push_back(kVarLetters[i]);
        if (mono[i] > 1) out += "^" + std::to_string(mono[i]);
    }
    return out;
}

// may start with '-'; the caller's joiner folds that into " - "
std::string print_term(const UniPoly& coeff, const XMono& mono) {
    std::string m = print_monomial(mono);
    if (m.empty()) return coeff.to_string("t");
    if (coeff == UniPoly::one()) return m;
    if (coeff == UniPoly::constant(Rational(-1))) return "-" + m;
    if (is_single_term(coeff)) return coeff.to_string("t") + "*" + m;
    return "(" + coeff.to_string("t") + ")*" + m;
}

std::string join_signed(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string& term = terms[i];
        if (i == 0) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

std::string print_form(const CoordForm& form, bool negate) {
    std::vector<std::string> terms;
    for (auto it = form.rbegin(); it != form.rend(); ++it) {
        BinaryForm c = negate ? -it->second : it->second;
        terms.push_back(print_term(c.dehomogenize(), it->first));
    }
    return join_signed(terms);
}

// Overall scaling is quotiented away on re-parse, so printing may flip the
// sign of the whole tuple to avoid a leading '-' in the first visible term.
bool leading_sign_is_negative(const BinaryForm& c) {
    UniPoly u = c.dehomogenize();
    return u.coeff(u.degree()) < Rational(0);
}

} // namespace

StatementKind statement_kind(const std::string& text) {
    Cursor cur(text);
    cur.skip();
    std::size_t at = cur.pos;
    std::string kw = cur.word();
    if (kw == "map") return StatementKind::Map;
    if (kw == "point") return StatementKind::Point;
    throw SyntaxError(at, "expected 'map' or 'point'");
}

SelfMap parse_map(const std::string& text) {
    Statement st = parse_statement(text);
    if (st.kind != StatementKind::Map)
        throw SyntaxError(0, "expected a map statement, found a point statement");
    return map_from_statement(st);
}

Point parse_point(const std::string& text) {
    Statement st = parse_statement(text);
    if (st.kind != StatementKind::Point)
        throw SyntaxError(0, "expected a point statement, found a map statement");
    return point_from_statement(st);
}

std::string print_map(const SelfMap& f) {
    if (f.n() > kMaxDimension)
        throw Error("map printing supports P1..P" + std::to_string(kMaxDimension));
    bool negate = false;
    for (int i = 0; i <= f.n(); ++i) {
        const CoordForm& form = f.form(i);
        if (form.empty()) continue;
        negate = leading_sign_is_negative(form.rbegin()->second);
        break;
    }
    std::ostringstream os;
    os << "map P" << f.n() << ": [";
    for (int i = 0; i <= f.n(); ++i) {
        if (i) os << ", ";
        os << print_form(f.form(i), negate);
    }
    os << "]";
    return os.str();
}

std::string print_point(const Point& P) {
    if (P.n() > kMaxDimension)
        throw Error("point printing supports P1..P" + std::to_string(kMaxDimension));
    bool negate = false;
    for (int i = 0; i <= P.n(); ++i) {
        if (P.coord(i).is_zero()) continue;
        negate = leading_sign_is_negative(P.coord(i));
        break;
    }
    std::ostringstream os;
    os << "point P" << P.n() << ": [";
    for (int i = 0; i <= P.n(); ++i) {
        if (i) os << ", ";
        BinaryForm c = negate ? -P.coord(i) : P.coord(i);
        os << (c.is_zero() ? "0" : c.dehomogenize().to_string("t"));
    }
    os << "]";
    return os.str();
}

} // namespace ffdyn

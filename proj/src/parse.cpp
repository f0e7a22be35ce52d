#include "germforge/parse.hpp"

#include <cctype>
#include <sstream>

namespace germforge {

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char get() {
        skip_ws();
        if (pos >= text.size()) throw SyntaxError("unexpected end of input", pos);
        return text[pos++];
    }
    void expect(char c) {
        char g = get();
        if (g != c) throw SyntaxError(std::string("expected '") + c + "'", pos - 1);
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '\''))
            ++pos;
        if (pos == start) throw SyntaxError("expected identifier", pos);
        if (std::isdigit(static_cast<unsigned char>(text[start])))
            throw SyntaxError("identifier cannot start with a digit", start);
        return text.substr(start, pos - start);
    }
    Integer integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected integer literal", pos);
        return Integer(text.substr(start, pos - start));
    }
    bool at_digit() {
        return std::isdigit(static_cast<unsigned char>(peek()));
    }
    bool at_ident() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
};

struct ExprParser {
    Lexer& lx;
    const std::vector<std::string>& vars; // includes "t" at the end when used

    Poly parse_expr() {
        Poly acc = parse_term();
        while (true) {
            char c = lx.peek();
            if (c == '+') {
                lx.get();
                acc = acc + parse_term();
            } else if (c == '-') {
                lx.get();
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (lx.peek() == '*') {
            lx.get();
            acc = acc * parse_factor();
        }
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_base();
        if (lx.peek() == '^') {
            lx.get();
            Integer k = lx.integer();
            if (k < 0 || k > 64) throw SyntaxError("exponent out of range", lx.pos);
            return base.pow(static_cast<int>(k.get_si()));
        }
        return base;
    }

    Poly parse_base() {
        char c = lx.peek();
        if (c == '-') {
            lx.get();
            return -parse_factor();
        }
        if (c == '(') {
            lx.get();
            Poly e = parse_expr();
            lx.expect(')');
            return e;
        }
        if (lx.at_digit()) {
            Integer num = lx.integer();
            if (lx.peek() == '/') {
                lx.get();
                Integer den = lx.integer();
                if (den == 0) throw SyntaxError("zero denominator", lx.pos);
                return Poly::constant(vars, Rational(num, den));
            }
            return Poly::constant(vars, Rational(num));
        }
        if (lx.at_ident()) {
            size_t where = lx.pos;
            std::string name = lx.ident();
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name)
                    return Poly::variable(vars, static_cast<int>(i));
            throw SyntaxError("unknown variable '" + name + "'", where);
        }
        throw SyntaxError("unexpected character", lx.pos);
    }
};

bool uses_symbol(const std::string& text, const std::string& sym) {
    // token-level scan: sym as a standalone identifier
    for (size_t i = 0; i < text.size(); ++i) {
        if (text.compare(i, sym.size(), sym) == 0) {
            bool left_ok = (i == 0) || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) ||
                                         text[i - 1] == '_');
            size_t j = i + sym.size();
            bool right_ok = (j >= text.size()) ||
                            !(std::isalnum(static_cast<unsigned char>(text[j])) ||
                              text[j] == '_' || text[j] == '\'');
            if (left_ok && right_ok) return true;
        }
    }
    return false;
}

} // namespace

ParsedMap::ParsedMap(std::vector<std::string> vars, std::vector<Poly> components, bool uses_param)
    : vars_(std::move(vars)), components_(std::move(components)), uses_param_(uses_param) {}

PolyMap ParsedMap::instantiate(const Rational& t_value) const {
    std::vector<Poly> comps;
    int n = static_cast<int>(vars_.size());
    for (const auto& c : components_) {
        Poly p = c;
        if (uses_param_) {
            p = p.substitute_value(n, t_value); // t is the last variable
            p = p.drop_variable(n);
        }
        if (p.constant_term() != 0)
            throw GermViolation("component '" + p.to_string() + "' has a nonzero constant term");
        comps.push_back(p);
    }
    return PolyMap(n, std::move(comps));
}

ParsedMap parse_map(const std::string& text) {
    Lexer lx(text);
    std::string fname = lx.ident(); // map name, e.g. "f"; kept for echo only
    (void)fname;
    lx.expect('(');
    std::vector<std::string> vars;
    vars.push_back(lx.ident());
    while (lx.accept(',')) vars.push_back(lx.ident());
    lx.expect(')');
    lx.expect('=');
    lx.expect('(');

    for (const auto& v : vars) {
        if (v == "t")
            throw SyntaxError("'t' is reserved for the family parameter", 0);
        if (v == univariate_var())
            throw SyntaxError("'s' is reserved for arc parameters", 0);
    }

    bool param = uses_symbol(text.substr(lx.pos), "t");
    std::vector<std::string> expr_vars = vars;
    if (param) expr_vars.push_back("t");

    ExprParser ep{lx, expr_vars};
    std::vector<Poly> comps;
    comps.push_back(ep.parse_expr());
    while (lx.accept(',')) comps.push_back(ep.parse_expr());
    lx.expect(')');
    lx.skip_ws();
    if (lx.pos != text.size())
        throw SyntaxError("trailing input after map definition", lx.pos);
    return ParsedMap(std::move(vars), std::move(comps), param);
}

PolyMap parse_map_fixed(const std::string& text, const Rational& t_value) {
    return parse_map(text).instantiate(t_value);
}

std::string render(const PolyMap& f) {
    std::ostringstream os;
    os << "f(";
    const auto& vs = f.vars();
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) os << ",";
        os << vs[i];
    }
    os << ") = (";
    for (int i = 0; i < f.codomain_dim(); ++i) {
        if (i) os << ", ";
        os << f.component(i).to_string();
    }
    os << ")";
    return os.str();
}

} // namespace germforge

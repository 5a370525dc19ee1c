#include "mk2/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace mk2 {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// recursive-descent expression parser over Element arithmetic
class ExprParser {
public:
    ExprParser(const Ring& r, const std::string& s,
               const std::map<std::string, Element>& env)
        : ring_(r), s_(s), env_(env) {}

    Element parse() {
        Element e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("trailing input at '" + s_.substr(pos_) + "'");
        return e;
    }

private:
    const Ring& ring_;
    const std::string& s_;
    const std::map<std::string, Element>& env_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    Element expr() {
        Element acc = term();
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    Element term() {
        Element acc = factor();
        for (;;) {
            if (eat('*')) acc = acc * factor();
            else if (eat('/')) acc = acc.div(factor());
            else return acc;
        }
    }

    Element factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        Element base = atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits += s_[pos_++];
            if (digits.empty()) throw ParseError("exponent expected after '^'");
            long e = std::strtol(digits.c_str(), nullptr, 10);
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    Element atom() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError("unexpected end of expression");
        if (eat('(')) {
            Element e = expr();
            if (!eat(')')) throw ParseError("missing ')'");
            return e;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits += s_[pos_++];
            return Element::from_int(ring_, std::strtoll(digits.c_str(), nullptr, 10));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name += s_[pos_++];
            auto it = env_.find(name);
            if (it == env_.end()) throw ParseError("unknown variable '" + name + "'");
            return it->second;
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }
};

std::map<std::string, Element> variable_env(const Ring& r) {
    std::map<std::string, Element> env;
    switch (r->kind) {
        case RingKind::RatFuncLocal: {
            int nv = static_cast<int>(r->vars.size());
            for (int v = 0; v < nv; ++v)
                env.emplace(r->vars[static_cast<std::size_t>(v)],
                            Element::from_fraction(r, Poly::variable(r->p, nv, v),
                                                   Poly::constant(r->p, nv, 1)));
            break;
        }
        case RingKind::TruncLaurent: {
            const Ring& base = r->base;
            // base variables embed as degree-0 coefficients; t is the series
            for (const auto& [name, el] : variable_env(base))
                env.emplace(name, Element::from_laurent(r, 0, {el}));
            env.emplace("t", Element::from_laurent(r, 1, {Element::from_int(base, 1)}));
            break;
        }
        default: break;
    }
    return env;
}

}  // namespace

Ring parse_ring_spec(const std::string& spec0) {
    std::string spec = spec0;
    // trim
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front())))
        spec.erase(spec.begin());
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back())))
        spec.pop_back();
    if (spec == "q" || spec == "Q") return make_rationals();
    if (spec.rfind("zmod:", 0) == 0) {
        return make_zmod(std::strtoull(spec.c_str() + 5, nullptr, 10));
    }
    if (spec.rfind("fp:", 0) == 0) {
        return make_prime_field(std::strtoull(spec.c_str() + 3, nullptr, 10));
    }
    if (spec.rfind("ratfunc:", 0) == 0) {
        std::string rest = spec.substr(8);
        std::string invert;
        std::size_t at = rest.find("@invert(");
        if (at != std::string::npos) {
            if (rest.back() != ')') throw ParseError("ratfunc: missing ')' after invert");
            invert = rest.substr(at + 8, rest.size() - at - 9);
            rest = rest.substr(0, at);
        }
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("ratfunc:<p>:<vars> expected");
        std::uint32_t p =
            static_cast<std::uint32_t>(std::strtoul(rest.substr(0, colon).c_str(), nullptr, 10));
        std::vector<std::string> vars = split(rest.substr(colon + 1), ',');
        for (std::string& v : vars)
            if (v.empty()) throw ParseError("ratfunc: empty variable name");
        Ring plain = make_ratfunc(p, vars, {});
        if (invert.empty()) return plain;
        std::vector<Poly> inv;
        for (const std::string& e : split(invert, ',')) {
            Element el = parse_element(plain, e);
            const FracValue& f = el.fraction();
            if (!(f.den.is_constant() && f.den.constant_term() == 1))
                throw ParseError("inverted parameter must be polynomial: " + e);
            inv.push_back(f.num);
        }
        return make_ratfunc(p, vars, std::move(inv));
    }
    if (spec.rfind("laurent(", 0) == 0 && spec.back() == ')') {
        std::string inner = spec.substr(8, spec.size() - 9);
        std::size_t comma = inner.rfind(",prec=");
        if (comma == std::string::npos) throw ParseError("laurent(<base>,prec=<k>) expected");
        Ring base = parse_ring_spec(inner.substr(0, comma));
        int prec = static_cast<int>(std::strtol(inner.c_str() + comma + 6, nullptr, 10));
        return make_trunc_laurent(base, prec);
    }
    throw ParseError("unrecognised ring spec: " + spec);
}

Element parse_element(const Ring& r, const std::string& expr) {
    return ExprParser(r, expr, variable_env(r)).parse();
}

SymbolExpr parse_symbol_expr(const Ring& r, const std::string& expr) {
    SymbolExpr acc(r);
    std::size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos == expr.size()) break;
        long long sign = 1;
        if (expr[pos] == '+' || expr[pos] == '-') {
            sign = expr[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between symbol terms");
        }
        first = false;
        skip_ws();
        long long coeff = 1;
        if (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) {
            std::string digits;
            while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos])))
                digits += expr[pos++];
            coeff = std::strtoll(digits.c_str(), nullptr, 10);
            skip_ws();
            if (pos < expr.size() && expr[pos] == '*') ++pos;
            skip_ws();
        }
        if (pos == expr.size()) throw ParseError("dangling coefficient");
        char open = expr[pos];
        char close = open == '{' ? '}' : open == '<' ? '>' : '\0';
        if (!close) throw ParseError("expected '{' or '<' to open a symbol term");
        ++pos;
        int depth = 1;
        std::string inner;
        while (pos < expr.size() && depth > 0) {
            char ch = expr[pos];
            if (ch == open) ++depth;
            if (ch == close) {
                --depth;
                if (depth == 0) { ++pos; break; }
            }
            inner += ch;
            ++pos;
        }
        if (depth != 0) throw ParseError("unbalanced symbol braces");
        // split at the top-level comma
        int pd = 0;
        std::size_t cut = std::string::npos;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            char ch = inner[i];
            if (ch == '(' || ch == '{' || ch == '<') ++pd;
            if (ch == ')' || ch == '}' || ch == '>') --pd;
            if (ch == ',' && pd == 0) { cut = i; break; }
        }
        if (cut == std::string::npos) throw ParseError("symbol term needs two arguments");
        Element a = parse_element(r, inner.substr(0, cut));
        Element b = parse_element(r, inner.substr(cut + 1));
        SymbolTerm term = open == '{' ? steinberg_term(a, b) : dennis_stein_term(a, b);
        acc.add_term(term, mpz_class(static_cast<long>(sign * coeff)));
    }
    return acc;
}

}  // namespace mk2

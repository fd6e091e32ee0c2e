#include "bivfactor/io.hpp"

#include <cctype>
#include <sstream>

#include "bivfactor/errors.hpp"
#include "bivfactor/recomb.hpp"

namespace bivfactor {

namespace {

// Comments blanked out so columns stay valid.
std::string strip_comments(const std::string& text) {
    std::string s = text;
    bool in = false;
    for (char& c : s) {
        if (c == '\n') in = false;
        else if (c == '#') in = true;
        if (in) c = ' ';
    }
    return s;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        } else {
            cur += ' ';
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

bool is_integer(const std::string& t) {
    std::size_t k = (t.size() > 1 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
}

int first_column(const std::string& line) {
    for (std::size_t k = 0; k < line.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(line[k]))) return static_cast<int>(k) + 1;
    return 1;
}

struct Header {
    bool present = false;
    u64 modulus = 0;
    int line = 0;  // 0-based index of the header line
};

Header find_header(const std::vector<std::string>& lines) {
    Header h;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        auto t = tokens(lines[k]);
        if (t.empty()) continue;
        if (t[0] != "p") return h;
        if (t.size() != 2 || !is_integer(t[1]) || t[1][0] == '-')
            throw ParseError("header must read 'p <modulus>'", static_cast<int>(k) + 1, first_column(lines[k]));
        h.present = true;
        try {
            h.modulus = std::stoull(t[1]);
        } catch (const std::exception&) {
            throw ParseError("modulus out of range", static_cast<int>(k) + 1, first_column(lines[k]));
        }
        h.line = static_cast<int>(k);
        return h;
    }
    return h;
}

bool looks_like_list(const std::vector<std::string>& lines, std::size_t from) {
    bool any = false;
    for (std::size_t k = from; k < lines.size(); ++k) {
        auto t = tokens(lines[k]);
        if (t.empty()) continue;
        if (t.size() != 3 || !is_integer(t[0]) || !is_integer(t[1]) || !is_integer(t[2])) return false;
        any = true;
    }
    return any;
}

i64 parse_i64(const std::string& t, int line, int col) {
    try {
        return std::stoll(t);
    } catch (const std::exception&) {
        throw ParseError("integer out of range: " + t, line, col);
    }
}

u64 reduce_decimal(const std::string& digits, u64 p) {
    u64 r = 0;
    for (char c : digits) r = fp::add(fp::mul(r, 10 % p, p), static_cast<u64>(c - '0') % p, p);
    return r;
}

BiPoly parse_list(const std::vector<std::string>& lines, std::size_t from, u64 p) {
    std::vector<Term> terms;
    for (std::size_t k = from; k < lines.size(); ++k) {
        auto t = tokens(lines[k]);
        if (t.empty()) continue;
        int ln = static_cast<int>(k) + 1, col = first_column(lines[k]);
        i64 j = parse_i64(t[0], ln, col), i = parse_i64(t[1], ln, col);
        if (i < 0 || j < 0) throw ParseError("negative exponent", ln, col);
        std::string c = t[2];
        bool neg = c[0] == '-';
        if (c[0] == '-' || c[0] == '+') c = c.substr(1);
        u64 v = reduce_decimal(c, p);
        terms.push_back({i, j, neg ? fp::neg(v, p) : v});
    }
    return BiPoly(p, std::move(terms));
}

// expr = [+-] term {(+|-) term}; term = factor {* factor}; factor = atom [^ exponent]
// atom = integer | x | y | ( expr ); exponents on x, y may be parenthesized integer expressions
class ExprParser {
public:
    ExprParser(const std::string& s, u64 p) : s_(s), p_(p) {}

    BiPoly parse() {
        skip();
        if (at_end()) fail("empty polynomial");
        BiPoly r = expr();
        skip();
        if (!at_end()) fail(peek() == ')' ? "unbalanced ')'" : "expected '+', '-' or '*'");
        return r;
    }

private:
    BiPoly expr() {
        BiPoly acc(p_);
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                neg = peek() == '-';
                advance();
            } else if (!first) {
                return acc;
            }
            BiPoly t = term();
            acc += neg ? -t : t;
            first = false;
            skip();
            if (at_end() || (peek() != '+' && peek() != '-')) return acc;
        }
    }

    BiPoly term() {
        BiPoly acc = factor();
        for (;;) {
            skip();
            if (at_end() || peek() != '*') return acc;
            advance();
            acc = acc * factor();
        }
    }

    BiPoly factor() {
        skip();
        if (at_end()) fail("expected a factor");
        char ch = peek();
        if (ch == 'x' || ch == 'y') {
            advance();
            i64 e = 1;
            if (caret()) e = exponent();
            return ch == 'x' ? BiPoly::monomial(p_, 1, 0, e) : BiPoly::monomial(p_, 1, e, 0);
        }
        BiPoly base(p_);
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            base = BiPoly::constant(p_, reduce_decimal(digits(), p_));
        } else if (ch == '(') {
            advance();
            base = expr();
            skip();
            expect(')');
        } else {
            fail(std::string("unexpected character '") + ch + "'");
        }
        if (caret()) {
            std::size_t l = line_, c = col_;
            i64 e = exponent();
            if (e < 0) throw ParseError("negative power of a non-monomial", static_cast<int>(l), static_cast<int>(c));
            base = bi_pow(base, static_cast<u64>(e));
        }
        return base;
    }

    bool caret() {
        skip();
        if (at_end() || peek() != '^') return false;
        advance();
        skip();
        return true;
    }

    // exact integer, literal or parenthesized
    i64 exponent() {
        if (at_end()) fail("expected an exponent");
        if (peek() == '(') {
            advance();
            i64 v = exact_sum();
            skip();
            expect(')');
            return v;
        }
        std::size_t l = line_, c = col_;
        std::string d = digits();
        try {
            return std::stoll(d);
        } catch (const std::exception&) {
            throw ParseError("exponent out of range", static_cast<int>(l), static_cast<int>(c));
        }
    }
    i64 exact_sum() {
        i64 acc = 0;
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                neg = peek() == '-';
                advance();
                skip();
            } else if (!first) {
                return acc;
            }
            i64 t = exact_product();
            if (__builtin_add_overflow(acc, neg ? -t : t, &acc)) fail("exponent overflow");
            first = false;
            skip();
            if (at_end() || (peek() != '+' && peek() != '-')) return acc;
        }
    }
    i64 exact_product() {
        skip();
        i64 acc = exponent();
        for (;;) {
            skip();
            if (at_end() || peek() != '*') return acc;
            advance();
            skip();
            if (__builtin_mul_overflow(acc, exponent(), &acc)) fail("exponent overflow");
        }
    }

    std::string digits() {
        std::string d;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            d += peek();
            advance();
        }
        if (d.empty()) fail("expected a number");
        return d;
    }
    void expect(char c) {
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, static_cast<int>(line_), static_cast<int>(col_));
    }

    const std::string& s_;
    u64 p_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

PolyDocument parse_impl(const std::string& text, std::optional<u64> p) {
    std::string clean = strip_comments(text);
    auto lines = split_lines(clean);
    Header h = find_header(lines);
    PolyDocument doc;
    if (h.present) {
        if (p && *p != h.modulus)
            throw ParseError("header modulus " + std::to_string(h.modulus) + " differs from " + std::to_string(*p),
                             h.line + 1, 1);
        doc.modulus = h.modulus;
    } else if (p) {
        doc.modulus = *p;
    } else {
        throw ParseError("missing 'p <modulus>' header", 1, 1);
    }
    require_prime_modulus(doc.modulus);
    std::size_t from = h.present ? static_cast<std::size_t>(h.line) + 1 : 0;
    if (looks_like_list(lines, from)) {
        doc.format = InputFormat::MonomialList;
        doc.poly = parse_list(lines, from, doc.modulus);
        return doc;
    }
    if (h.present) {
        // blank the header, keep positions
        std::size_t off = 0;
        for (int k = 0; k < h.line; ++k) off += lines[static_cast<std::size_t>(k)].size() + 1;
        for (std::size_t k = off; k < clean.size() && clean[k] != '\n'; ++k) clean[k] = ' ';
    }
    doc.format = InputFormat::Expression;
    doc.poly = ExprParser(clean, doc.modulus).parse();
    return doc;
}

}  // namespace

BiPoly parse_poly(const std::string& text, u64 p) { return parse_impl(text, p).poly; }

PolyDocument parse_document(const std::string& text, std::optional<u64> modulus) { return parse_impl(text, modulus); }

std::string format_poly(const BiPoly& f) { return f.to_string(); }

std::string format_monomial_list(const BiPoly& f) {
    std::ostringstream os;
    os << "p " << f.modulus() << "\n";
    for (const auto& t : f.terms()) os << t.j << " " << t.i << " " << t.c << "\n";
    return os.str();
}

nlohmann::json factors_to_json(u64 p, const std::vector<BiPoly>& factors, const FactorizationResult* res) {
    nlohmann::json j;
    j["modulus"] = p;
    j["factors"] = nlohmann::json::array();
    for (const auto& f : factors) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : f.terms()) terms.push_back({t.j, t.i, t.c});
        j["factors"].push_back({{"terms", terms}});
    }
    if (res) {
        j["trace"] = {{"lambda", res->lambda.to_string()},
                      {"sigma", res->sigma.to_string()},
                      {"s", res->s},
                      {"recursion_depth", res->recursion_depth}};
    }
    return j;
}

std::vector<BiPoly> factors_from_json(const nlohmann::json& j) {
    u64 p = j.at("modulus").get<u64>();
    std::vector<BiPoly> out;
    for (const auto& f : j.at("factors")) {
        std::vector<Term> terms;
        for (const auto& t : f.at("terms")) terms.push_back({t.at(1).get<i64>(), t.at(0).get<i64>(), t.at(2).get<u64>()});
        out.emplace_back(p, std::move(terms));
    }
    return out;
}

}  // namespace bivfactor

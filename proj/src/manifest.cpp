#include "sctk/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace sctk {

namespace {

// ---------------------------------------------------------------- lexer --

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line = 1, col = 1;
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::number: return "rational";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of expression";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) bump();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) {
            cur_.kind = Tok::end;
            cur_.text.clear();
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                num += s_[pos_], bump();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                num += '/';
                bump();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    throw Error("syntax",
                                loc() + ": expected digits after '/' in a rational literal");
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    num += s_[pos_], bump();
            }
            cur_.kind = Tok::number;
            cur_.text = std::move(num);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                id += s_[pos_], bump();
            cur_.kind = Tok::ident;
            cur_.text = std::move(id);
            return;
        }
        switch (c) {
        case '+': cur_.kind = Tok::plus; break;
        case '-': cur_.kind = Tok::minus; break;
        case '*': cur_.kind = Tok::star; break;
        case '^': cur_.kind = Tok::caret; break;
        case '(': cur_.kind = Tok::lparen; break;
        case ')': cur_.kind = Tok::rparen; break;
        default:
            throw Error("syntax", loc() + ": unexpected character '" + std::string(1, c) + "'");
        }
        cur_.text = std::string(1, c);
        bump();
    }

    void bump() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    std::string loc() const { return "line " + std::to_string(line_) + ", col " + std::to_string(col_); }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_;
};

// --------------------------------------------------------------- parser --

class ExprParser {
public:
    ExprParser(const std::string& text, AlgebraPtr alg) : lex_(text), alg_(std::move(alg)) {}

    ExprValue parse() {
        ExprValue v = expr();
        if (lex_.peek().kind != Tok::end) fail("end of expression");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = lex_.peek();
        throw Error("syntax", "line " + std::to_string(t.line) + ", col " +
                                  std::to_string(t.col) + ": expected " + expected + ", found " +
                                  tok_name(t.kind) +
                                  (t.text.empty() ? "" : " '" + t.text + "'"));
    }

    Token expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k) fail(what);
        return lex_.take();
    }

    static ExprValue add(const ExprValue& a, const ExprValue& b, int sign) {
        if (!a.is_form && !b.is_form) {
            ExprValue out;
            out.poly = sign > 0 ? a.poly + b.poly : a.poly - b.poly;
            return out;
        }
        ExprValue out;
        out.is_form = true;
        Form fb = b.as_form();
        out.form = sign > 0 ? a.as_form() + fb : a.as_form() - fb;
        return out;
    }

    static ExprValue multiply(const ExprValue& a, const ExprValue& b) {
        if (!a.is_form && !b.is_form) {
            ExprValue out;
            out.poly = mul(a.poly, b.poly);
            return out;
        }
        ExprValue out;
        out.is_form = true;
        out.form = wedge(a.as_form(), b.as_form());
        return out;
    }

    ExprValue expr() {
        ExprValue v = term();
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            int sign = lex_.take().kind == Tok::plus ? 1 : -1;
            v = add(v, term(), sign);
        }
        return v;
    }

    ExprValue term() {
        ExprValue v = factor();
        while (lex_.peek().kind == Tok::star) {
            lex_.take();
            v = multiply(v, factor());
        }
        return v;
    }

    int integer_literal() {
        int sign = 1;
        while (lex_.peek().kind == Tok::minus) { lex_.take(); sign = -sign; }
        Token t = expect(Tok::number, "an integer exponent");
        if (t.text.find('/') != std::string::npos)
            throw Error("syntax", "line " + std::to_string(t.line) + ", col " +
                                      std::to_string(t.col) + ": exponent must be an integer");
        return sign * std::stoi(t.text);
    }

    ExprValue factor() {
        int sign = 1;
        while (lex_.peek().kind == Tok::minus) { lex_.take(); sign = -sign; }
        ExprValue v = primary();
        if (lex_.peek().kind == Tok::caret) {
            lex_.take();
            int e = integer_literal();
            if (v.is_form) {
                if (e < 0) throw Error("bad-exponent", "negative power of a form");
                v.form = wedge_pow(v.form, e);
            } else if (e < 0) {
                // negative exponents only on single invertible generators
                if (v.poly.terms().size() != 1)
                    throw Error("bad-exponent", "negative exponent on a non-generator");
                const auto& [m, c] = *v.poly.terms().begin();
                if (m.factors.size() != 1 || m.factors[0].second != 1 || c != 1)
                    throw Error("bad-exponent", "negative exponent on a non-generator");
                Poly out(alg_);
                out.add_term({{m.factors[0].first, e}}, 1);
                v.poly = out;
            } else {
                v.poly = v.poly.pow(e);
            }
        }
        if (sign < 0) {
            if (v.is_form) v.form = -v.form;
            else v.poly = -v.poly;
        }
        return v;
    }

    ExprValue primary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Tok::number: {
            Token n = lex_.take();
            ExprValue v;
            v.poly = Poly::constant(alg_, parse_rational(n.text));
            return v;
        }
        case Tok::ident: {
            Token id = lex_.take();
            if (id.text == "D" && lex_.peek().kind == Tok::lparen) {
                lex_.take();
                Token var = expect(Tok::ident, "a generator name inside D(...)");
                expect(Tok::rparen, "')'");
                if (!alg_->has(var.text))
                    throw Error("unknown-generator", "line " + std::to_string(var.line) +
                                                         ", col " + std::to_string(var.col) +
                                                         ": unknown generator '" + var.text + "'");
                int vid = alg_->id_of(var.text);
                ExprValue v;
                v.is_form = true;
                v.form = Form(alg_, 1, alg_->degree(vid));
                v.form.add_term(Poly::constant(alg_, 1), {vid});
                return v;
            }
            if (!alg_->has(id.text))
                throw Error("unknown-generator", "line " + std::to_string(id.line) + ", col " +
                                                     std::to_string(id.col) +
                                                     ": unknown generator '" + id.text + "'");
            ExprValue v;
            v.poly = Poly::generator(alg_, id.text);
            return v;
        }
        case Tok::lparen: {
            lex_.take();
            ExprValue v = expr();
            expect(Tok::rparen, "')'");
            return v;
        }
        default: fail("a rational, a generator, 'D(...)' or '('");
        }
    }

    Lexer lex_;
    AlgebraPtr alg_;
};

// ------------------------------------------------------ manifest parsing --

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& value, int line) {
    std::string v = trim(value);
    if (v.empty() || v.front() != '[' || v.back() != ']')
        throw Error("syntax",
                    "line " + std::to_string(line) + ": expected a bracketed list [ ... ]");
    std::string inner = v.substr(1, v.size() - 2);
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else cur += c;
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error("syntax", "line " + std::to_string(line) + ": bad integer for " + what +
                                  ": '" + s + "'");
    }
}

bool parse_bool(const std::string& s, int line, const std::string& what) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw Error("syntax", "line " + std::to_string(line) + ": bad boolean for " + what);
}

} // namespace

Rat parse_rational(const std::string& text) {
    std::string s = trim(text);
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
    size_t slash = s.find('/', i);
    auto digits = [&](const std::string& part) {
        if (part.empty()) throw Error("syntax", "bad rational literal '" + text + "'");
        for (char c : part)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error("syntax", "bad rational literal '" + text + "'");
    };
    if (slash == std::string::npos) {
        std::string num = s.substr(i);
        digits(num);
        boost::multiprecision::cpp_int n(num);
        Rat r(n);
        return neg ? Rat(-r) : r;
    }
    std::string num = s.substr(i, slash - i), den = s.substr(slash + 1);
    digits(num);
    digits(den);
    boost::multiprecision::cpp_int n(num), d(den);
    if (d == 0) throw Error("syntax", "rational literal with zero denominator");
    Rat r(n, d);
    return neg ? Rat(-r) : r;
}

ExprValue parse_expression(const std::string& text, const AlgebraPtr& alg) {
    return ExprParser(text, alg).parse();
}

Poly parse_poly(const std::string& text, const AlgebraPtr& alg) {
    ExprValue v = parse_expression(text, alg);
    if (v.is_form) throw Error("syntax", "expected an algebra element, found a form");
    return v.poly;
}

Form parse_form(const std::string& text, const AlgebraPtr& alg) {
    return parse_expression(text, alg).as_form();
}

const Point* Manifest::point(const std::string& name) const {
    for (const auto& [n, p] : points)
        if (n == name) return &p;
    return nullptr;
}

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool scheme_seen = false;
    SchemeSection scheme;
    std::map<std::string, std::string> scheme_kv;
    std::map<std::string, int> scheme_kv_line;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
            section = trim(s.substr(1, s.size() - 2));
            if (section != "algebra" && section != "differential" && section != "forms" &&
                section != "points" && section != "scheme" && section != "options")
                throw Error("unknown-section",
                            "line " + std::to_string(line) + ": unknown section [" + section + "]");
            if (section == "scheme") scheme_seen = true;
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw Error("syntax", "line " + std::to_string(line) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw Error("syntax", "line " + std::to_string(line) + ": entry before any section");

        if (section == "algebra") {
            if (key == "name") m.name = value;
            else if (key == "k") m.k = parse_int(value, line, "k");
            else if (key == "generators") {
                for (const std::string& item : split_list(value, line)) {
                    size_t colon = item.find(':');
                    if (colon == std::string::npos)
                        throw Error("syntax", "line " + std::to_string(line) +
                                                  ": generator entries are name:degree");
                    GradedVar v;
                    v.name = trim(item.substr(0, colon));
                    v.degree = parse_int(trim(item.substr(colon + 1)), line, "degree");
                    if (v.degree > 0)
                        throw Error("degree-violation",
                                    "line " + std::to_string(line) + ": generator '" + v.name +
                                        "' has positive degree");
                    m.generators.push_back(std::move(v));
                }
            } else if (key == "invert") {
                for (const std::string& item : split_list(value, line)) m.invert.push_back(item);
            } else
                throw Error("unknown-key",
                            "line " + std::to_string(line) + ": unknown [algebra] key '" + key + "'");
        } else if (section == "differential") {
            m.differential_src.push_back({key, value});
        } else if (section == "forms") {
            m.forms_src.push_back({key, value});
        } else if (section == "points") {
            Point p;
            for (const std::string& item : split_list(value, line)) {
                size_t e2 = item.find('=');
                if (e2 == std::string::npos)
                    throw Error("syntax", "line " + std::to_string(line) +
                                              ": point entries are name = rational");
                p.assignment[trim(item.substr(0, e2))] = parse_rational(trim(item.substr(e2 + 1)));
            }
            m.points.push_back({key, std::move(p)});
        } else if (section == "scheme") {
            scheme_kv[key] = value;
            scheme_kv_line[key] = line;
        } else if (section == "options") {
            m.options[key] = value;
        }
    }

    if (scheme_seen) {
        DarbouxScheme& d = scheme.scheme;
        auto need = [&](const char* key) -> std::string {
            auto it = scheme_kv.find(key);
            if (it == scheme_kv.end())
                throw Error("missing-key", std::string("[scheme] needs '") + key + "'");
            return it->second;
        };
        d.k = parse_int(need("k"), scheme_kv_line["k"], "scheme k");
        std::string cs = scheme_kv.count("case") ? scheme_kv["case"] : "";
        if (cs.empty()) d.parity_case = DarbouxScheme::case_for(d.k);
        else if (cs == "odd") d.parity_case = DarbouxScheme::Case::odd;
        else if (cs == "mod4-0") d.parity_case = DarbouxScheme::Case::mod4_0;
        else if (cs == "mod4-2") d.parity_case = DarbouxScheme::Case::mod4_2;
        else throw Error("syntax", "bad scheme case '" + cs + "'");
        for (const std::string& item : split_list(need("m"), scheme_kv_line["m"]))
            d.m.push_back(parse_int(item, scheme_kv_line["m"], "m"));
        if (scheme_kv.count("contact"))
            d.contact = parse_bool(scheme_kv["contact"], scheme_kv_line["contact"], "contact");
        if (scheme_kv.count("z_mode")) {
            std::string zm = scheme_kv["z_mode"];
            if (zm == "generator") d.z_mode = DarbouxScheme::ZMode::generator;
            else if (zm == "element") d.z_mode = DarbouxScheme::ZMode::element;
            else throw Error("syntax", "bad z_mode '" + zm + "'");
        }
        if (scheme_kv.count("spectators"))
            d.spectators = parse_int(scheme_kv["spectators"], scheme_kv_line["spectators"],
                                     "spectators");
        if (scheme_kv.count("H")) scheme.hamiltonian_src = scheme_kv["H"];
        if (scheme_kv.count("z")) scheme.z_src = scheme_kv["z"];
        if (scheme_kv.count("pairs")) {
            for (const std::string& item :
                 split_list(scheme_kv["pairs"], scheme_kv_line["pairs"])) {
                size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw Error("syntax", "scheme pairs entries are xname:yname");
                scheme.pair_names.push_back(
                    {trim(item.substr(0, colon)), trim(item.substr(colon + 1))});
            }
        }
        if (scheme_kv.count("zs"))
            for (const std::string& item : split_list(scheme_kv["zs"], scheme_kv_line["zs"]))
                scheme.z_names.push_back(item);
        d.validate();
        m.scheme = std::move(scheme);
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open manifest '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str());
}

Cdga build_manifest_cdga(const Manifest& m) {
    if (!m.has_algebra()) throw Error("missing-section", "manifest has no [algebra] section");
    CdgaSpec spec;
    for (const auto& v : m.generators) {
        GradedVar g = v;
        for (const auto& inv : m.invert)
            if (inv == g.name) {
                if (g.degree != 0)
                    throw Error("degree-violation",
                                "inverted generator '" + g.name + "' must have degree 0");
                g.invertible = true;
            }
        if (g.degree == 0) spec.base_vars.push_back(g);
        else spec.neg_vars.push_back(g);
    }
    // two-phase: the algebra must exist before differential expressions parse
    Cdga A = build_tower(spec);
    for (const auto& [name, src] : m.differential_src) {
        Poly img = parse_poly(src, A.alg);
        int id = A.alg->id_of(name);
        if (!img.is_zero() && A.alg->degree(id) == 0)
            throw Error("degree-violation",
                        "differential must vanish on degree-0 generator '" + name + "'");
        A.d.set_image(id, std::move(img));
    }
    A.d.validate();
    return A;
}

std::map<std::string, Form> build_manifest_forms(const Manifest& m, const AlgebraPtr& alg) {
    std::map<std::string, Form> out;
    for (const auto& [name, src] : m.forms_src) {
        if (out.count(name))
            throw Error("duplicate-name", "duplicate form name '" + name + "'");
        out.emplace(name, parse_form(src, alg));
    }
    return out;
}

} // namespace sctk

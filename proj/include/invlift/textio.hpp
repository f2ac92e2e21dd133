#ifndef INVLIFT_TEXTIO_HPP
#define INVLIFT_TEXTIO_HPP

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "invlift/series.hpp"

namespace invlift {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l),
          col(c) {}
};

inline std::vector<std::string> make_names(const std::string& prefix, unsigned count) {
    std::vector<std::string> v;
    v.reserve(count);
    for (unsigned i = 1; i <= count; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

namespace detail {

inline mpq_class decimal_to_rational(const std::string& digits_int, const std::string& digits_frac) {
    mpz_class num(digits_int + digits_frac, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < digits_frac.size(); ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

template <class K>
class ExprParser {
  public:
    ExprParser(const std::string& text, const std::vector<std::string>& names)
        : s_(text), names_(names) {}

    Poly<K> parse() {
        Poly<K> r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

  private:
    Poly<K> expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        Poly<K> acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Poly<K> t = term();
                if (c == '-')
                    acc -= t;
                else
                    acc += t;
            } else {
                return acc;
            }
        }
    }

    Poly<K> term() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        Poly<K> acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                get();
                acc *= factor();
            } else {
                break;
            }
        }
        return neg ? -acc : acc;
    }

    Poly<K> factor() {
        Poly<K> base = primary();
        skip_ws();
        while (peek() == '^') {
            get();
            skip_ws();
            unsigned e = parse_uint();
            base = base.pow(e);
            skip_ws();
        }
        return base;
    }

    Poly<K> primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Poly<K> r = expr();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail("expected number, variable, or '('");
        return Poly<K>(0);  // unreachable
    }

    Poly<K> number() {
        std::string digits = digits_run();
        skip_ws();
        mpq_class q;
        if (peek() == '/') {
            get();
            skip_ws();
            std::string den = digits_run();
            if (den.empty() || mpz_class(den, 10) == 0) fail("zero denominator");
            q = mpq_class(mpz_class(digits, 10), mpz_class(den, 10));
            q.canonicalize();
        } else if (peek() == '.') {
            get();
            std::string frac = digits_run();
            q = decimal_to_rational(digits, frac);
        } else {
            q = mpq_class(mpz_class(digits, 10));
        }
        return Poly<K>::constant(static_cast<unsigned>(names_.size()), FieldOps<K>::from_rational(q));
    }

    Poly<K> name() {
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            id += get();
        if (id == "i")
            return Poly<K>::constant(static_cast<unsigned>(names_.size()), FieldOps<K>::imag());
        for (std::size_t k = 0; k < names_.size(); ++k)
            if (names_[k] == id)
                return Poly<K>::variable(static_cast<unsigned>(names_.size()),
                                         static_cast<unsigned>(k + 1));
        fail("unknown variable '" + id + "'");
        return Poly<K>(0);
    }

    std::string digits_run() {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += get();
        if (d.empty()) fail("expected digits");
        return d;
    }

    unsigned parse_uint() {
        std::string d = digits_run();
        return static_cast<unsigned>(std::stoul(d));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() {
        char c = peek();
        if (pos_ < s_.size()) ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    std::string s_;
    std::vector<std::string> names_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
}

// Sign-split representation of one coefficient for term printing.
struct CoeffText {
    bool negative = false;
    std::string magnitude;  // "" means 1 (absorb into the monomial)
    bool needs_parens = false;
};

inline CoeffText coeff_text(const GaussianRational& c, bool have_monomial) {
    CoeffText t;
    if (c.im == 0) {
        t.negative = c.re < 0;
        mpq_class m = abs(c.re);
        if (m == 1 && have_monomial)
            t.magnitude = "";
        else
            t.magnitude = m.get_str();
        return t;
    }
    if (c.re == 0) {
        t.negative = c.im < 0;
        mpq_class m = abs(c.im);
        t.magnitude = (m == 1) ? "i" : m.get_str() + "*i";
        return t;
    }
    std::string s = c.re.get_str();
    s += (c.im < 0) ? " - " : " + ";
    mpq_class m = abs(c.im);
    s += (m == 1) ? "i" : m.get_str() + "*i";
    t.magnitude = "(" + s + ")";
    t.needs_parens = true;
    return t;
}

inline CoeffText coeff_text(const ApproxComplex& c, bool have_monomial) {
    CoeffText t;
    double eps = approx_epsilon();
    if (std::abs(c.imag()) <= eps * std::max(1.0, std::abs(c))) {
        t.negative = c.real() < 0;
        double m = std::fabs(c.real());
        if (m == 1.0 && have_monomial)
            t.magnitude = "";
        else
            t.magnitude = format_double(m);
        return t;
    }
    if (std::abs(c.real()) <= eps * std::max(1.0, std::abs(c))) {
        t.negative = c.imag() < 0;
        double m = std::fabs(c.imag());
        t.magnitude = (m == 1.0) ? "i" : format_double(m) + "*i";
        return t;
    }
    std::string s = format_double(c.real());
    s += (c.imag() < 0) ? " - " : " + ";
    s += format_double(std::fabs(c.imag())) + "*i";
    t.magnitude = "(" + s + ")";
    t.needs_parens = true;
    return t;
}

inline std::string monomial_text(const Exponents& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.e.size(); ++i) {
        if (e.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (e.e[i] > 1) s += "^" + std::to_string(e.e[i]);
    }
    return s;
}

template <class TermMap, class K>
std::string render_terms(const TermMap& terms, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& [e, c] : terms) {
        if (FieldOps<K>::is_zero(c)) continue;
        std::string mono = monomial_text(e, names);
        CoeffText ct = coeff_text(c, !mono.empty());
        std::string body;
        if (ct.magnitude.empty())
            body = mono;
        else if (mono.empty())
            body = ct.magnitude;
        else
            body = ct.magnitude + "*" + mono;
        if (out.empty())
            out = (ct.negative ? "-" : "") + body;
        else
            out += (ct.negative ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace detail

template <class K>
Poly<K> parse_poly(const std::string& text, const std::vector<std::string>& names) {
    return detail::ExprParser<K>(text, names).parse();
}

template <class K>
Series<K> parse_series(const std::string& text, const std::vector<std::string>& names, int order) {
    return Series<K>::from_poly(parse_poly<K>(text, names), order);
}

// Canonical printing: ascending grevlex term order, exact rationals as a/b,
// imaginary parts as c/d*i.
template <class K>
std::string to_string(const Poly<K>& q, const std::vector<std::string>& names) {
    return detail::render_terms<typename Poly<K>::Terms, K>(q.terms(), names);
}

template <class K>
std::string to_string(const Series<K>& s, const std::vector<std::string>& names) {
    return detail::render_terms<typename Series<K>::Terms, K>(s.terms(), names);
}

template <class K>
std::string to_string(const Series<K>& s, const std::string& prefix = "X") {
    return to_string(s, make_names(prefix, s.nvars()));
}

template <class K>
std::string to_string(const Poly<K>& q, const std::string& prefix) {
    return to_string(q, make_names(prefix, q.nvars()));
}

}  // namespace invlift

#endif

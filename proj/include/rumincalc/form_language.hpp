#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "forms.hpp"

namespace rumincalc {

// ---------------------------------------------------------------------------
// Form expression mini-language.
//
//   form      := ['+'|'-'] term (('+'|'-') term)*
//   term      := factor (('*'|'^') factor | '^' INT)*
//   factor    := 't[' INT ']'                       coframe covector theta^i
//              | INT ['/' INT]                      rational constant
//              | 'x' INT                            coordinate (1-based)
//              | '(' poly ')'                       polynomial subexpression
//   poly      := ['+'|'-'] pterm (('+'|'-') pterm)*
//   pterm     := pfactor ('*' pfactor)*
//   pfactor   := patom ['^' INT]
//   patom     := INT ['/' INT] | 'x' INT | '(' poly ')'
//
// '*' and '^' both denote the wedge product; a degree-0 factor (a polynomial)
// wedges by plain multiplication, so "x2*t[1]" is the covector theta^1 scaled
// by the coordinate x2. 'factor ^ INT' is the iterated wedge power, which on
// polynomials is the ordinary power and on covectors collapses to zero from
// degree two on ("t[1]^2" is the zero form and produces a warning, like
// "t[1]^t[1]"). Terms of one sum must share the exterior degree.
// ---------------------------------------------------------------------------

struct ParsedForm {
    PolyForm form;
    std::vector<std::string> warnings;
};

namespace detail {

class FormParser {
  public:
    FormParser(const std::string& text, int n) : text_(text), n_(n) {}

    ParsedForm parse() {
        ParsedForm out;
        out.form = PolyForm(n_);
        skip_ws();
        if (eof()) throw FormParseError(pos_, "empty form expression");
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = (take() == '-');
        int prev_degree = -1;
        while (true) {
            skip_ws();
            const int term_pos = pos_;
            PolyForm t = parse_term(out.warnings);
            if (negate) t = -t;
            int deg = 0;
            if (!t.is_zero()) {
                t.pure_degree(&deg);
                if (prev_degree == -1)
                    prev_degree = deg;
                else if (deg != prev_degree)
                    throw FormParseError(term_pos, "term of degree " + std::to_string(deg) +
                                                       " added to a degree-" +
                                                       std::to_string(prev_degree) + " form");
            }
            out.form += t;
            skip_ws();
            if (eof()) break;
            const char op = peek();
            if (op != '+' && op != '-')
                throw FormParseError(pos_, std::string("unexpected '") + op +
                                               "', expected '+', '-', or end of input");
            take();
            negate = (op == '-');
        }
        return out;
    }

  private:
    const std::string& text_;
    int n_;
    int pos_ = 0;

    bool eof() const { return pos_ >= static_cast<int>(text_.size()); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(int pos, const std::string& msg) const { throw FormParseError(pos, msg); }

    // Unsigned integer literal as a string of digits.
    std::string lex_digits(const char* what) {
        skip_ws();
        const int start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail(start, std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    int lex_small_int(const char* what) {
        const int start = pos_;
        std::string d = lex_digits(what);
        if (d.size() > 6) fail(start, std::string(what) + " is out of range");
        return std::stoi(d);
    }

    // True when the upcoming token (after ws) starts an integer literal.
    bool next_is_digit() {
        skip_ws();
        return !eof() && std::isdigit(static_cast<unsigned char>(peek()));
    }

    // INT ['/' INT]
    Rational lex_rational() {
        std::string num = lex_digits("a number");
        skip_ws();
        if (!eof() && peek() == '/') {
            take();
            const int dpos = pos_;
            std::string den = lex_digits("a denominator");
            Rational d(den);
            if (d == 0) fail(dpos, "division by zero");
            return Rational(num) / d;
        }
        return Rational(num);
    }

    int lex_index(const char* what) {  // 1-based coordinate / coframe index
        const int start = pos_;
        int i = lex_small_int(what);
        if (i < 1 || i > n_)
            fail(start, std::string(what) + " " + std::to_string(i) + " is out of range 1.." +
                            std::to_string(n_));
        return i;
    }

    Polynomial parse_poly() {
        skip_ws();
        bool negate = false;
        if (!eof() && (peek() == '+' || peek() == '-')) negate = (take() == '-');
        Polynomial acc = parse_pterm();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            if (eof() || (peek() != '+' && peek() != '-')) break;
            const char op = take();
            Polynomial t = parse_pterm();
            if (op == '-')
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    Polynomial parse_pterm() {
        Polynomial acc = parse_pfactor();
        while (true) {
            skip_ws();
            if (eof() || peek() != '*') break;
            take();
            acc = acc * parse_pfactor();
        }
        return acc;
    }

    Polynomial parse_pfactor() {
        Polynomial base = parse_patom();
        skip_ws();
        if (!eof() && peek() == '^') {
            take();
            const int epos = pos_;
            if (!next_is_digit()) fail(epos, "expected an integer exponent");
            int e = lex_small_int("an exponent");
            Polynomial acc = Polynomial::constant(n_, 1);
            for (int i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    Polynomial parse_patom() {
        skip_ws();
        if (eof()) fail(pos_, "unexpected end of polynomial");
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(n_, lex_rational());
        if (c == 'x') {
            take();
            return Polynomial::variable(n_, lex_index("coordinate index") - 1);
        }
        if (c == '(') {
            take();
            Polynomial p = parse_poly();
            skip_ws();
            if (eof() || peek() != ')') fail(pos_, "expected ')'");
            take();
            return p;
        }
        fail(pos_, std::string("unexpected '") + c + "' in a polynomial");
    }

    PolyForm parse_factor(std::vector<std::string>& warnings) {
        skip_ws();
        if (eof()) fail(pos_, "unexpected end of input, expected a factor");
        const char c = peek();
        if (c == 't') {
            take();
            skip_ws();
            if (eof() || peek() != '[') fail(pos_, "expected '[' after 't'");
            take();
            int i = lex_index("coframe index");
            skip_ws();
            if (eof() || peek() != ']') fail(pos_, "expected ']'");
            take();
            return PolyForm::term(n_, 1ull << (i - 1), Polynomial::constant(n_, 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '(') {
            Polynomial p = c == '(' ? (take(), paren_poly()) : parse_patom();
            return p.is_zero() ? PolyForm(n_) : PolyForm::term(n_, 0, p);
        }
        fail(pos_, std::string("unexpected '") + c +
                       "', expected 't[i]', a number, a coordinate, or '('");
    }

    Polynomial paren_poly() {
        Polynomial p = parse_poly();
        skip_ws();
        if (eof() || peek() != ')') fail(pos_, "expected ')'");
        take();
        return p;
    }

    PolyForm wedge_checked(const PolyForm& a, const PolyForm& b, int opos,
                           std::vector<std::string>& warnings) {
        PolyForm r = wedge(a, b);
        if (r.is_zero() && !a.is_zero() && !b.is_zero())
            warnings.push_back("wedge at position " + std::to_string(opos) +
                               " repeats a coframe factor; the product is zero");
        return r;
    }

    // A factor with its trailing '^ INT' powers: the power binds to the single
    // preceding factor, so "2*x1^2" is 2*(x1^2). The iterated wedge power is
    // the ordinary power on polynomials and collapses to zero from the square
    // on for a covector factor.
    PolyForm parse_powered_factor(std::vector<std::string>& warnings) {
        PolyForm base = parse_factor(warnings);
        while (true) {
            skip_ws();
            if (eof() || peek() != '^') break;
            const int save = pos_;
            take();
            if (!next_is_digit()) {
                pos_ = save;  // '^ factor' is a wedge, handled by the caller
                break;
            }
            const int e = lex_small_int("an exponent");
            PolyForm acc = PolyForm::term(n_, 0, Polynomial::constant(n_, 1));
            for (int i = 0; i < e; ++i) acc = wedge_checked(acc, base, save, warnings);
            base = acc;
        }
        return base;
    }

    PolyForm parse_term(std::vector<std::string>& warnings) {
        PolyForm acc = parse_powered_factor(warnings);
        while (true) {
            skip_ws();
            if (eof() || (peek() != '*' && peek() != '^')) break;
            const int opos = pos_;
            take();
            acc = wedge_checked(acc, parse_powered_factor(warnings), opos, warnings);
        }
        return acc;
    }
};

}  // namespace detail

// Parse a form expression over n coordinates. Throws FormParseError with the
// byte offset of the offending token.
inline ParsedForm parse_form(const std::string& text, int n) {
    return detail::FormParser(text, n).parse();
}

inline ParsedForm parse_form(const std::string& text, const StratifiedLieAlgebra& g) {
    return parse_form(text, g.n());
}

// Constant-coefficient view of a parsed form, when it has one.
inline std::optional<InvariantForm> as_invariant(const PolyForm& f) {
    InvariantForm out(f.n());
    for (const auto& [mask, p] : f.components()) {
        if (p.is_zero()) continue;
        if (p.terms().size() != 1) return std::nullopt;
        const auto& [mono, c] = *p.terms().begin();
        for (int e : mono)
            if (e != 0) return std::nullopt;
        out.add_term(mask, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical printer: parse(print(f)) == f, and printing is idempotent on the
// produced text. Components are emitted in mask order, monomials in the
// polynomial's term order.
// ---------------------------------------------------------------------------

namespace detail {

// One monomial with a positive coefficient, e.g. "3/2*x1^2*x3" or "x2" or "1".
inline std::string print_positive_monomial(const Polynomial::Monomial& mono, const Rational& c) {
    std::string body;
    for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        if (!body.empty()) body += "*";
        body += "x" + std::to_string(i + 1);
        if (mono[i] > 1) body += "^" + std::to_string(mono[i]);
    }
    if (body.empty()) return format_rational(c);
    if (c == 1) return body;
    return format_rational(c) + "*" + body;
}

inline std::string print_wedge(std::uint64_t mask) {
    std::string out;
    for (int b : mask_bits(mask)) {
        if (!out.empty()) out += "^";
        out += "t[" + std::to_string(b + 1) + "]";
    }
    return out;
}

}  // namespace detail

inline std::string print_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [mono, c] : p.terms()) {
        const bool neg = c < 0;
        const std::string piece = detail::print_positive_monomial(mono, neg ? Rational(-c) : c);
        if (out.empty())
            out = neg ? "-" + piece : piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

inline std::string print_form(const PolyForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [mask, p] : f.components()) {
        const std::string wtext = detail::print_wedge(mask);
        std::string piece;
        bool neg = false;
        if (p.terms().size() == 1) {
            const auto& [mono, c] = *p.terms().begin();
            neg = c < 0;
            const Rational ac = neg ? Rational(-c) : c;
            if (wtext.empty()) {
                piece = detail::print_positive_monomial(mono, ac);
            } else {
                const std::string mtext = detail::print_positive_monomial(mono, ac);
                piece = (mtext == "1") ? wtext : mtext + "*" + wtext;
            }
        } else if (wtext.empty()) {
            // A multi-term degree-0 component can only stand alone.
            piece = print_poly(p);
        } else {
            piece = "(" + print_poly(p) + ")*" + wtext;
        }
        if (out.empty())
            out = neg ? "-" + piece : piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

inline std::string print_form(const InvariantForm& f) {
    PolyForm pf(f.n());
    for (const auto& [mask, c] : f.components()) pf.add_term(mask, Polynomial::constant(f.n(), c));
    return print_form(pf);
}

}  // namespace rumincalc

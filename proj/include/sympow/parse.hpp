#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "sympow/errors.hpp"
#include "sympow/polynomial.hpp"

namespace sympow {

// Grammar (whitespace insignificant):
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := nat | nat '*' factors | factors
//   factors := factor ('*' factor)*
//   factor  := var ['^' nat]
//   var     := letter (letter|digit)*
// Coefficients are naturals; over the rationals 'nat/nat' is also accepted so
// that printed output can round-trip. Unknown variables are errors.

namespace detail {

inline PrimeField::elem coeff_from_digits(const PrimeField& k, const std::string& s) {
    return k.from_mpz(mpz_class(s));
}
inline Rationals::elem coeff_from_digits(const Rationals& k, const std::string& s) {
    (void)k;
    return mpq_class(mpz_class(s));
}

struct CoeffText {
    bool neg;
    std::string mag;  // "3" or "3/2"; never empty, never signed
};

inline CoeffText coeff_text(const PrimeField& k, PrimeField::elem c) {
    long long r = k.symmetric_rep(c);
    return {r < 0, std::to_string(r < 0 ? -r : r)};
}
inline CoeffText coeff_text(const Rationals& k, const Rationals::elem& c) {
    (void)k;
    mpq_class a = c < 0 ? mpq_class(-c) : c;
    return {sgn(c) < 0, a.get_str()};
}

}  // namespace detail

template <class F>
class PolyParser {
public:
    PolyParser(RingPtr<F> ring, TermOrder ord) : ring_(std::move(ring)), ord_(std::move(ord)) {}

    Poly<F> parse(std::string_view text) {
        s_ = text;
        pos_ = 0;
        std::vector<Term<F>> ts;
        skip_ws();
        if (pos_ == s_.size()) throw parse_error("empty polynomial", pos_);
        bool neg = accept('-');
        ts.push_back(parse_term(neg));
        for (;;) {
            skip_ws();
            if (pos_ == s_.size()) break;
            char c = s_[pos_];
            if (c == '+' || c == '-') {
                ++pos_;
                ts.push_back(parse_term(c == '-'));
            } else {
                throw parse_error(std::string("expected '+' or '-', found '") + c + "'", pos_);
            }
        }
        return Poly<F>::make(ring_, ord_, std::move(ts));
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Term<F> parse_term(bool negate) {
        skip_ws();
        if (pos_ == s_.size()) throw parse_error("expected term", pos_);
        const F& k = ring_->field();
        typename F::elem c = k.one();
        Monomial m(ring_->nvars());
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            c = parse_coeff();
            have_coeff = true;
        }
        bool expect_factor = !have_coeff;
        if (have_coeff) {
            std::size_t save = pos_;
            if (accept('*')) {
                expect_factor = true;
            } else {
                pos_ = save;
            }
        }
        if (expect_factor) {
            m = m.mul(parse_factor());
            for (;;) {
                std::size_t save = pos_;
                if (!accept('*')) break;
                skip_ws();
                if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
                    m = m.mul(parse_factor());
                } else {
                    pos_ = save;
                    throw parse_error("expected variable after '*'", save);
                }
            }
        }
        if (negate) c = k.neg(c);
        return {std::move(c), std::move(m)};
    }

    typename F::elem parse_coeff() {
        const F& k = ring_->field();
        typename F::elem c = detail::coeff_from_digits(k, parse_digits());
        if (k.characteristic() == 0) {
            std::size_t save = pos_;
            if (accept('/')) {
                skip_ws();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    typename F::elem d = detail::coeff_from_digits(k, parse_digits());
                    c = k.div(c, d);
                } else {
                    pos_ = save;
                }
            }
        }
        return c;
    }

    std::string parse_digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw parse_error("expected number", pos_);
        return std::string(s_.substr(start, pos_ - start));
    }

    Monomial parse_factor() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
            throw parse_error("expected variable", pos_);
        ++pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        std::size_t idx = ring_->index_of(name);
        if (idx == Ring<F>::npos) throw parse_error("unknown variable '" + name + "'", start);
        std::uint64_t exp = 1;
        std::size_t save = pos_;
        if (accept('^')) {
            skip_ws();
            if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw parse_error("expected exponent after '^'", pos_);
            std::string digits = parse_digits();
            if (digits.size() > 10) throw overflow_error("exponent exceeds 2^31");
            exp = std::stoull(digits);
            if (exp >= Monomial::kExpLimit) throw overflow_error("exponent exceeds 2^31");
        } else {
            pos_ = save;
        }
        Monomial m(ring_->nvars());
        m.set(idx, static_cast<std::uint32_t>(exp));
        return m;
    }

    RingPtr<F> ring_;
    TermOrder ord_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

template <class F>
Poly<F> parse_poly(const RingPtr<F>& ring, std::string_view text, TermOrder ord = TermOrder::grevlex()) {
    return PolyParser<F>(ring, std::move(ord)).parse(text);
}

template <class F>
std::string format_monomial(const Ring<F>& ring, const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        if (!m[i]) continue;
        if (!out.empty()) out += '*';
        out += ring.var(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

// Canonical text form: terms in the polynomial's active order, '-' folded into
// the separators, unit coefficients omitted. Reparses to an equal value.
template <class F>
std::string format_poly(const Poly<F>& f) {
    if (f.is_zero()) return "0";
    const F& k = f.ring()->field();
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        detail::CoeffText ct = detail::coeff_text(k, t.c);
        if (first) {
            if (ct.neg) out += '-';
            first = false;
        } else {
            out += ct.neg ? " - " : " + ";
        }
        std::string mono = format_monomial(*f.ring(), t.m);
        if (mono.empty()) {
            out += ct.mag;
        } else if (ct.mag == "1") {
            out += mono;
        } else {
            out += ct.mag + '*' + mono;
        }
    }
    return out;
}

}  // namespace sympow

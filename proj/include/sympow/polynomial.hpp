#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sympow/errors.hpp"
#include "sympow/monomial.hpp"
#include "sympow/order.hpp"
#include "sympow/ring.hpp"

namespace sympow {

template <class F>
struct Term {
    typename F::elem c;
    Monomial m;
};

// Polynomial in canonical form: no zero coefficients, no repeated monomials,
// terms strictly descending under the active order. Value semantics; every
// operation returns a polynomial that again satisfies the invariant.
template <class F>
class Poly {
public:
    using elem = typename F::elem;

    Poly() = default;

    static Poly zero(RingPtr<F> ring, TermOrder ord = TermOrder::grevlex()) {
        Poly p;
        p.ring_ = std::move(ring);
        p.ord_ = std::move(ord);
        return p;
    }

    static Poly constant(RingPtr<F> ring, elem c, TermOrder ord = TermOrder::grevlex()) {
        Poly p = zero(std::move(ring), std::move(ord));
        if (!p.ring_->field().is_zero(c)) p.ts_.push_back({std::move(c), Monomial(p.ring_->nvars())});
        return p;
    }

    static Poly variable(RingPtr<F> ring, std::size_t idx, TermOrder ord = TermOrder::grevlex()) {
        if (idx >= ring->nvars()) throw invalid_argument_error("variable index out of range");
        Monomial m(ring->nvars());
        m.set(idx, 1);
        return monomial_term(std::move(ring), ring->field().one(), m, std::move(ord));
    }

    static Poly monomial_term(RingPtr<F> ring, elem c, Monomial m, TermOrder ord = TermOrder::grevlex()) {
        Poly p = zero(std::move(ring), std::move(ord));
        if (m.nvars() != p.ring_->nvars()) throw invalid_argument_error("monomial has wrong variable count");
        if (!p.ring_->field().is_zero(c)) p.ts_.push_back({std::move(c), std::move(m)});
        return p;
    }

    // Builds canonical form from arbitrary (coeff, monomial) pairs.
    static Poly make(RingPtr<F> ring, TermOrder ord, std::vector<Term<F>> ts) {
        Poly p = zero(std::move(ring), std::move(ord));
        for (auto& t : ts)
            if (t.m.nvars() != p.ring_->nvars()) throw invalid_argument_error("monomial has wrong variable count");
        p.ts_ = std::move(ts);
        p.normalize();
        return p;
    }

    const RingPtr<F>& ring() const { return ring_; }
    const TermOrder& order() const { return ord_; }
    const std::vector<Term<F>>& terms() const { return ts_; }
    std::size_t nterms() const { return ts_.size(); }
    bool is_zero() const { return ts_.empty(); }

    bool is_term() const { return ts_.size() == 1; }
    bool is_constant() const { return ts_.empty() || (ts_.size() == 1 && ts_[0].m.is_one()); }

    const Term<F>& leading_term() const {
        if (ts_.empty()) throw invalid_argument_error("zero polynomial has no leading term");
        return ts_[0];
    }
    const Monomial& leading_monomial() const { return leading_term().m; }
    const elem& leading_coeff() const { return leading_term().c; }

    // Max total degree over all terms; -1 for the zero polynomial.
    std::int64_t degree() const {
        std::int64_t d = -1;
        for (const auto& t : ts_) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(t.m.degree()));
        return d;
    }

    Poly with_order(const TermOrder& ord) const {
        if (ord == ord_) return *this;
        Poly p = *this;
        p.ord_ = ord;
        p.sort_terms();
        return p;
    }

    Poly neg() const {
        Poly p = *this;
        const F& k = ring_->field();
        for (auto& t : p.ts_) t.c = k.neg(t.c);
        return p;
    }

    Poly add(const Poly& o) const { return merged(o, false); }
    Poly sub(const Poly& o) const { return merged(o, true); }

    Poly scale(const elem& c) const {
        const F& k = ring_->field();
        if (k.is_zero(c)) return zero(ring_, ord_);
        Poly p = *this;
        for (auto& t : p.ts_) t.c = k.mul(t.c, c);
        return p;
    }

    // c * m * (*this); the result stays sorted because orders are multiplicative.
    Poly mul_term(const elem& c, const Monomial& m) const {
        const F& k = ring_->field();
        if (k.is_zero(c)) return zero(ring_, ord_);
        Poly p;
        p.ring_ = ring_;
        p.ord_ = ord_;
        p.ts_.reserve(ts_.size());
        for (const auto& t : ts_) p.ts_.push_back({k.mul(t.c, c), t.m.mul(m)});
        return p;
    }

    Poly mul(const Poly& o) const {
        require_same_ring(*ring_, *o.ring_);
        const F& k = ring_->field();
        if (is_zero() || o.is_zero()) return zero(ring_, ord_);
        const Poly& b = o.ord_ == ord_ ? o : o.with_order(ord_);
        Poly acc = zero(ring_, ord_);
        for (const auto& t : b.ts_) acc = acc.add(mul_term(t.c, t.m));
        return acc;
    }

    Poly pow(std::uint64_t e) const {
        Poly r = constant(ring_, ring_->field().one(), ord_);
        Poly base = *this;
        while (e) {
            if (e & 1) r = r.mul(base);
            base = e > 1 ? base.mul(base) : base;
            e >>= 1;
        }
        return r;
    }

    // *this - c * m * g, the inner step of polynomial division.
    Poly subtract_scaled(const elem& c, const Monomial& m, const Poly& g) const {
        const F& k = ring_->field();
        const Poly& h = g.ord_ == ord_ ? g : g.with_order(ord_);
        Poly r;
        r.ring_ = ring_;
        r.ord_ = ord_;
        r.ts_.reserve(ts_.size() + h.ts_.size());
        std::size_t i = 0, j = 0;
        while (i < ts_.size() && j < h.ts_.size()) {
            Monomial gm = h.ts_[j].m.mul(m);
            int cmp = ord_.compare(ts_[i].m, gm);
            if (cmp > 0) {
                r.ts_.push_back(ts_[i++]);
            } else if (cmp < 0) {
                elem v = k.neg(k.mul(c, h.ts_[j].c));
                if (!k.is_zero(v)) r.ts_.push_back({std::move(v), std::move(gm)});
                ++j;
            } else {
                elem v = k.sub(ts_[i].c, k.mul(c, h.ts_[j].c));
                if (!k.is_zero(v)) r.ts_.push_back({std::move(v), ts_[i].m});
                ++i;
                ++j;
            }
        }
        for (; i < ts_.size(); ++i) r.ts_.push_back(ts_[i]);
        for (; j < h.ts_.size(); ++j) {
            elem v = k.neg(k.mul(c, h.ts_[j].c));
            if (!k.is_zero(v)) r.ts_.push_back({std::move(v), h.ts_[j].m.mul(m)});
        }
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scale(ring_->field().inv(leading_coeff()));
    }

    // Everything except the leading term.
    Poly tail() const {
        if (ts_.empty()) return *this;
        Poly p;
        p.ring_ = ring_;
        p.ord_ = ord_;
        p.ts_.assign(ts_.begin() + 1, ts_.end());
        return p;
    }

    // Order-independent equality (same ring content, same term set).
    bool equals(const Poly& o) const {
        if (!ring_ || !o.ring_) return is_zero() == o.is_zero();
        if (!ring_equal(*ring_, *o.ring_)) return false;
        const Poly& b = o.ord_ == ord_ ? o : o.with_order(ord_);
        if (ts_.size() != b.ts_.size()) return false;
        const F& k = ring_->field();
        for (std::size_t i = 0; i < ts_.size(); ++i)
            if (ts_[i].m != b.ts_[i].m || !k.equal(ts_[i].c, b.ts_[i].c)) return false;
        return true;
    }

private:
    Poly merged(const Poly& o, bool subtract) const {
        require_same_ring(*ring_, *o.ring_);
        const F& k = ring_->field();
        const Poly& b = o.ord_ == ord_ ? o : o.with_order(ord_);
        Poly r;
        r.ring_ = ring_;
        r.ord_ = ord_;
        r.ts_.reserve(ts_.size() + b.ts_.size());
        std::size_t i = 0, j = 0;
        while (i < ts_.size() && j < b.ts_.size()) {
            int cmp = ord_.compare(ts_[i].m, b.ts_[j].m);
            if (cmp > 0) {
                r.ts_.push_back(ts_[i++]);
            } else if (cmp < 0) {
                const auto& t = b.ts_[j++];
                r.ts_.push_back({subtract ? k.neg(t.c) : t.c, t.m});
            } else {
                elem v = subtract ? k.sub(ts_[i].c, b.ts_[j].c) : k.add(ts_[i].c, b.ts_[j].c);
                if (!k.is_zero(v)) r.ts_.push_back({std::move(v), ts_[i].m});
                ++i;
                ++j;
            }
        }
        for (; i < ts_.size(); ++i) r.ts_.push_back(ts_[i]);
        for (; j < b.ts_.size(); ++j) {
            const auto& t = b.ts_[j];
            r.ts_.push_back({subtract ? k.neg(t.c) : t.c, t.m});
        }
        return r;
    }

    void sort_terms() {
        std::sort(ts_.begin(), ts_.end(),
                  [this](const Term<F>& a, const Term<F>& b) { return ord_.compare(a.m, b.m) > 0; });
    }

    void normalize() {
        sort_terms();
        const F& k = ring_->field();
        std::vector<Term<F>> out;
        out.reserve(ts_.size());
        for (auto& t : ts_) {
            if (!out.empty() && out.back().m == t.m) {
                out.back().c = k.add(out.back().c, t.c);
                if (k.is_zero(out.back().c)) out.pop_back();
            } else if (!k.is_zero(t.c)) {
                out.push_back(std::move(t));
            }
        }
        ts_ = std::move(out);
    }

    RingPtr<F> ring_;
    TermOrder ord_ = TermOrder::grevlex();
    std::vector<Term<F>> ts_;
};

// Ring homomorphism determined by variable images: f(x_i) -> images[i].
// Images must all live in `target`.
template <class F>
Poly<F> substitute(const Poly<F>& f, const RingPtr<F>& target, const std::vector<Poly<F>>& images) {
    if (images.size() != f.ring()->nvars()) throw invalid_argument_error("substitute: one image per variable required");
    for (const auto& g : images) require_same_ring(*target, *g.ring());
    const F& k = target->field();
    std::map<std::pair<std::size_t, std::uint32_t>, Poly<F>> powers;
    auto power = [&](std::size_t i, std::uint32_t e) -> const Poly<F>& {
        auto key = std::make_pair(i, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, images[i].pow(e)).first;
        return it->second;
    };
    Poly<F> acc = Poly<F>::zero(target);
    for (const auto& t : f.terms()) {
        Poly<F> prod = Poly<F>::constant(target, t.c);
        for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
            if (t.m[i]) prod = prod.mul(power(i, t.m[i]));
        acc = acc.add(prod);
    }
    return acc;
}

// Cheap variable re-indexing: target variable of source var i is var_map[i].
// Coefficients carry over unchanged; terms are re-sorted under `ord`.
template <class F>
Poly<F> map_vars(const Poly<F>& f, const RingPtr<F>& target, const std::vector<std::size_t>& var_map,
                 TermOrder ord = TermOrder::grevlex()) {
    std::vector<Term<F>> ts;
    ts.reserve(f.nterms());
    for (const auto& t : f.terms()) {
        Monomial m(target->nvars());
        for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
            if (t.m[i]) {
                if (var_map[i] == Ring<F>::npos)
                    throw invalid_argument_error("map_vars: variable has no image but appears in polynomial");
                m.set(var_map[i], t.m[i]);
            }
        ts.push_back({t.c, std::move(m)});
    }
    return Poly<F>::make(target, std::move(ord), std::move(ts));
}

// Exact division: returns q with f = q*g, or throws if g does not divide f.
template <class F>
Poly<F> div_exact(const Poly<F>& f, const Poly<F>& g) {
    require_same_ring(*f.ring(), *g.ring());
    if (g.is_zero()) throw invalid_argument_error("division by zero polynomial");
    const F& k = f.ring()->field();
    const TermOrder& ord = f.order();
    const Poly<F>& d = g.order() == ord ? g : g.with_order(ord);
    Poly<F> h = f;
    Poly<F> q = Poly<F>::zero(f.ring(), ord);
    while (!h.is_zero()) {
        if (!d.leading_monomial().divides(h.leading_monomial()))
            throw invalid_argument_error("polynomial division is not exact");
        typename F::elem c = k.div(h.leading_coeff(), d.leading_coeff());
        Monomial m = h.leading_monomial().divide(d.leading_monomial());
        q = q.add(Poly<F>::monomial_term(f.ring(), c, m, ord));
        h = h.subtract_scaled(c, m, d);
    }
    return q;
}

}  // namespace sympow

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sympow/errors.hpp"
#include "sympow/polynomial.hpp"

namespace sympow {

// Hard caps for Groebner-type computations. Hitting one raises
// resource_limit_error naming the cap; nothing is silently truncated.
struct ResourceLimits {
    std::int64_t max_degree = 120;       // max total degree of any intermediate polynomial
    std::uint64_t max_steps = 10000000;  // total reduction steps
    std::size_t max_pairs = 1000000;     // live S-pair queue size
};

namespace detail {

struct StepCounter {
    const ResourceLimits* lim;
    std::uint64_t steps = 0;

    void tick(std::int64_t degree) {
        if (++steps > lim->max_steps)
            throw resource_limit_error("reduction step limit exceeded", "max_steps");
        if (degree > lim->max_degree)
            throw resource_limit_error("degree limit exceeded (degree " + std::to_string(degree) + ")", "max_degree");
    }
};

}  // namespace detail

// Full normal form of f modulo `basis` under `ord`: leading and tail terms are
// both reduced, the first basis element whose leading monomial divides wins.
// The result is unique when `basis` is a Groebner basis.
template <class F>
Poly<F> normal_form(const Poly<F>& f, const std::vector<Poly<F>>& basis, const TermOrder& ord,
                    const ResourceLimits& lim = {}, detail::StepCounter* counter = nullptr) {
    detail::StepCounter local{&lim};
    detail::StepCounter& ctr = counter ? *counter : local;
    const F& k = f.ring()->field();
    Poly<F> h = f.with_order(ord);
    std::vector<Term<F>> out;
    while (!h.is_zero()) {
        const Monomial& lm = h.leading_monomial();
        const Poly<F>* red = nullptr;
        for (const auto& g : basis) {
            if (!g.is_zero() && g.leading_monomial().divides(lm)) {
                red = &g;
                break;
            }
        }
        if (red) {
            typename F::elem c = k.div(h.leading_coeff(), red->leading_coeff());
            Monomial m = lm.divide(red->leading_monomial());
            h = h.subtract_scaled(c, m, *red);
            ctr.tick(h.degree());
        } else {
            out.push_back(h.leading_term());
            h = h.tail();
        }
    }
    return Poly<F>::make(f.ring(), ord, std::move(out));
}

// S-polynomial with both inputs scaled monic, so the leading terms cancel.
template <class F>
Poly<F> s_polynomial(const Poly<F>& f, const Poly<F>& g, const TermOrder& ord) {
    require_same_ring(*f.ring(), *g.ring());
    if (f.is_zero() || g.is_zero()) throw invalid_argument_error("s_polynomial of zero polynomial");
    const F& k = f.ring()->field();
    const Poly<F>& a = f.order() == ord ? f : f.with_order(ord);
    const Poly<F>& b = g.order() == ord ? g : g.with_order(ord);
    Monomial l = a.leading_monomial().lcm(b.leading_monomial());
    Poly<F> fa = a.mul_term(k.inv(a.leading_coeff()), l.divide(a.leading_monomial()));
    Poly<F> fb = b.mul_term(k.inv(b.leading_coeff()), l.divide(b.leading_monomial()));
    return fa.sub(fb);
}

template <class F>
struct GroebnerBasis {
    TermOrder ord = TermOrder::grevlex();
    std::vector<Poly<F>> elems;  // monic, sorted by leading monomial descending
    bool reduced = false;
};

namespace detail {

// Inter-reduction to the unique reduced basis: drop elements with redundant
// leading monomials, tail-reduce survivors against each other, sort, monic.
template <class F>
void reduce_basis(std::vector<Poly<F>>& g, const TermOrder& ord, const ResourceLimits& lim, StepCounter& ctr) {
    std::vector<Poly<F>> kept;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!g[j].leading_monomial().divides(g[i].leading_monomial())) continue;
            if (g[j].leading_monomial() == g[i].leading_monomial()) {
                redundant = j < i;  // keep the first of an equal-leading pair
            } else {
                redundant = true;
            }
        }
        if (!redundant) kept.push_back(g[i]);
    }
    std::vector<Poly<F>> out(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::vector<Poly<F>> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        out[i] = normal_form(kept[i], others, ord, lim, &ctr).monic();
    }
    std::sort(out.begin(), out.end(), [&](const Poly<F>& a, const Poly<F>& b) {
        return ord.compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    g = std::move(out);
}

}  // namespace detail

// Buchberger's algorithm with the Gebauer-Moeller pair update (coprimality and
// chain criteria) and the normal selection strategy: among queued pairs, the
// smallest lcm degree first, ties broken lexicographically on the lcm, then by
// pair indices. Output is the reduced basis, unique for (ideal, order).
template <class F>
GroebnerBasis<F> buchberger(const std::vector<Poly<F>>& gens, const TermOrder& ord,
                            const ResourceLimits& lim = {}) {
    GroebnerBasis<F> out;
    out.ord = ord;
    std::vector<Poly<F>> g;
    for (const auto& f : gens)
        if (!f.is_zero()) g.push_back(f.with_order(ord).monic());
    if (g.empty()) {
        out.reduced = true;
        return out;
    }
    const TermOrder lex = TermOrder::lex();
    detail::StepCounter ctr{&lim};

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint64_t deg;
    };
    std::vector<Pair> pairs;

    auto make_pair = [&](std::size_t i, std::size_t j) {
        Monomial l = g[i].leading_monomial().lcm(g[j].leading_monomial());
        return Pair{i, j, l, l.degree()};
    };

    // Gebauer-Moeller update for a new basis element at index t.
    auto update = [&](std::size_t t) {
        const Monomial& lmh = g[t].leading_monomial();
        std::vector<Pair> cand;
        for (std::size_t i = 0; i < t; ++i) cand.push_back(make_pair(i, t));
        std::vector<bool> drop(cand.size(), false);
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (drop[a]) continue;
            if (g[cand[a].i].leading_monomial().coprime(lmh)) continue;  // kept for elimination duty
            for (std::size_t b = 0; b < cand.size(); ++b) {
                if (a == b || drop[b]) continue;
                if (cand[b].lcm.divides(cand[a].lcm) && cand[b].lcm != cand[a].lcm) {
                    drop[a] = true;
                    break;
                }
                if (cand[b].lcm == cand[a].lcm && b < a) {
                    drop[a] = true;
                    break;
                }
            }
        }
        // Chain criterion against the old queue.
        std::vector<Pair> next;
        for (auto& p : pairs) {
            bool cut = lmh.divides(p.lcm) && p.lcm != g[p.i].leading_monomial().lcm(lmh) &&
                       p.lcm != g[p.j].leading_monomial().lcm(lmh);
            if (!cut) next.push_back(std::move(p));
        }
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (drop[a]) continue;
            if (g[cand[a].i].leading_monomial().coprime(lmh)) continue;  // coprimality criterion
            next.push_back(std::move(cand[a]));
        }
        pairs = std::move(next);
        if (pairs.size() > lim.max_pairs) throw resource_limit_error("pair queue limit exceeded", "max_pairs");
    };

    for (std::size_t t = 1; t < g.size(); ++t) update(t);

    while (!pairs.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pairs.size(); ++i) {
            const Pair &a = pairs[i], &b = pairs[best];
            int c = a.deg != b.deg ? (a.deg < b.deg ? 1 : -1) : -lex.compare(a.lcm, b.lcm);
            if (c == 0) c = (a.i != b.i ? (a.i < b.i) : (a.j < b.j)) ? 1 : -1;
            if (c > 0) best = i;
        }
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + best);
        Poly<F> s = s_polynomial(g[p.i], g[p.j], ord);
        Poly<F> h = normal_form(s, g, ord, lim, &ctr);
        if (!h.is_zero()) {
            g.push_back(h.monic());
            update(g.size() - 1);
        }
    }

    detail::reduce_basis(g, ord, lim, ctr);
    out.elems = std::move(g);
    out.reduced = true;
    return out;
}

template <class F>
Poly<F> normal_form(const Poly<F>& f, const GroebnerBasis<F>& gb, const ResourceLimits& lim = {}) {
    return normal_form(f, gb.elems, gb.ord, lim);
}

}  // namespace sympow

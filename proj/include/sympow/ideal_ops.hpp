#pragma once

#include <cstdint>
#include <vector>

#include "sympow/ideal.hpp"

namespace sympow {

namespace detail {

// Minimal generating set of a monomial ideal: drop every monomial divisible by
// another generator. Canonical because the minimal set is unique.
inline std::vector<Monomial> minimalize_monomials(std::vector<Monomial> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < ms.size() && !redundant; ++j)
            redundant = (i != j && ms[j].divides(ms[i]));
        if (!redundant) out.push_back(ms[i]);
    }
    return out;
}

template <class F>
std::vector<Monomial> monomial_gens(const Ideal<F>& I) {
    std::vector<Monomial> ms;
    ms.reserve(I.gens().size());
    for (const auto& g : I.gens()) ms.push_back(g.leading_monomial());
    return ms;
}

}  // namespace detail

// Ideal generated by the given monomials (coefficients 1), minimalized.
template <class F>
Ideal<F> monomial_ideal(const RingPtr<F>& ring, std::vector<Monomial> ms) {
    std::vector<Poly<F>> gens;
    for (auto& m : detail::minimalize_monomials(std::move(ms)))
        gens.push_back(Poly<F>::monomial_term(ring, ring->field().one(), m));
    return Ideal<F>(ring, std::move(gens));
}

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& I, const Ideal<F>& J) {
    require_same_ring(*I.ring(), *J.ring());
    std::vector<Poly<F>> gens = I.gens();
    for (const auto& g : J.gens()) gens.push_back(g);
    if (I.is_monomial() && J.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& g : gens) ms.push_back(g.leading_monomial());
        return monomial_ideal(I.ring(), std::move(ms));
    }
    return Ideal<F>(I.ring(), std::move(gens));
}

template <class F>
Ideal<F> ideal_product(const Ideal<F>& I, const Ideal<F>& J) {
    require_same_ring(*I.ring(), *J.ring());
    if (I.is_monomial() && J.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& a : I.gens())
            for (const auto& b : J.gens()) ms.push_back(a.leading_monomial().mul(b.leading_monomial()));
        return monomial_ideal(I.ring(), std::move(ms));
    }
    std::vector<Poly<F>> gens;
    gens.reserve(I.gens().size() * J.gens().size());
    for (const auto& a : I.gens())
        for (const auto& b : J.gens()) gens.push_back(a.mul(b));
    return Ideal<F>(I.ring(), std::move(gens));
}

// I^n generated by all n-fold products of generators (multisets, no repeats).
template <class F>
Ideal<F> ideal_power(const Ideal<F>& I, std::uint32_t n) {
    if (n == 0) throw invalid_argument_error("ideal_power requires n >= 1");
    if (I.is_zero_ideal() || n == 1) return I;
    const auto& g = I.gens();
    std::vector<Poly<F>> prods;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        Poly<F> p = g[idx[0]];
        for (std::uint32_t i = 1; i < n; ++i) p = p.mul(g[idx[i]]);
        prods.push_back(std::move(p));
        // advance the non-decreasing index tuple
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == g.size() - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < n; ++i) idx[i] = idx[k - 1];
    }
    if (I.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& p : prods) ms.push_back(p.leading_monomial());
        return monomial_ideal(I.ring(), std::move(ms));
    }
    return Ideal<F>(I.ring(), std::move(prods));
}

// I ∩ J. Monomial ideals intersect on the exponent lattice (pairwise lcm);
// otherwise t*I + (1-t)*J in an extended ring, then eliminate t.
template <class F>
Ideal<F> ideal_intersect(const Ideal<F>& I, const Ideal<F>& J, const ResourceLimits& lim = {}) {
    require_same_ring(*I.ring(), *J.ring());
    if (I.is_zero_ideal()) return I;
    if (J.is_zero_ideal()) return J;
    if (I.is_monomial() && J.is_monomial()) {
        std::vector<Monomial> ms;
        for (const auto& a : I.gens())
            for (const auto& b : J.gens()) ms.push_back(a.leading_monomial().lcm(b.leading_monomial()));
        return monomial_ideal(I.ring(), std::move(ms));
    }
    const Ring<F>& R = *I.ring();
    std::string aux = fresh_var_name(R, "t");
    std::vector<std::string> vars = R.vars();
    vars.push_back(aux);
    RingPtr<F> E = make_ring(R.field(), vars);
    std::vector<std::size_t> up(R.nvars());
    for (std::size_t i = 0; i < R.nvars(); ++i) up[i] = i;
    Poly<F> t = Poly<F>::variable(E, R.nvars());
    Poly<F> one_minus_t = Poly<F>::constant(E, E->field().one()).sub(t);
    std::vector<Poly<F>> gens;
    for (const auto& f : I.gens()) gens.push_back(map_vars(f, E, up).mul(t));
    for (const auto& f : J.gens()) gens.push_back(map_vars(f, E, up).mul(one_minus_t));
    Ideal<F> K = eliminate(Ideal<F>(E, std::move(gens)), {aux}, lim);
    // Pull the result back into the caller's ring object.
    std::vector<Poly<F>> out;
    for (const auto& f : K.gens()) out.push_back(map_vars(f, I.ring(), up));
    return Ideal<F>(I.ring(), std::move(out));
}

template <class F>
Ideal<F> ideal_intersect_many(const std::vector<Ideal<F>>& parts, const ResourceLimits& lim = {}) {
    if (parts.empty()) throw invalid_argument_error("empty intersection");
    Ideal<F> acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = ideal_intersect(acc, parts[i], lim);
    return acc;
}

// (I : g) for a single polynomial: generators of I ∩ (g), each divided by g.
// Monomial ideal against a monomial divides on the lattice directly.
template <class F>
Ideal<F> ideal_quotient(const Ideal<F>& I, const Poly<F>& g, const ResourceLimits& lim = {}) {
    require_same_ring(*I.ring(), *g.ring());
    if (g.is_zero()) throw invalid_argument_error("quotient by zero polynomial");
    if (I.is_zero_ideal()) return I;
    if (g.is_constant()) return I;
    if (I.is_monomial() && g.is_term()) {
        std::vector<Monomial> ms;
        const Monomial& gm = g.leading_monomial();
        for (const auto& a : I.gens()) {
            const Monomial& m = a.leading_monomial();
            ms.push_back(m.divide(m.gcd(gm)));
        }
        return monomial_ideal(I.ring(), std::move(ms));
    }
    Ideal<F> G(I.ring(), {g});
    Ideal<F> meet = ideal_intersect(I, G, lim);
    std::vector<Poly<F>> out;
    for (const auto& f : meet.gens()) out.push_back(div_exact(f, g));
    return Ideal<F>(I.ring(), std::move(out));
}

// (I : J) = ∩ over generators of J.
template <class F>
Ideal<F> ideal_quotient(const Ideal<F>& I, const Ideal<F>& J, const ResourceLimits& lim = {}) {
    require_same_ring(*I.ring(), *J.ring());
    if (J.is_zero_ideal()) throw invalid_argument_error("quotient by the zero ideal");
    std::vector<Ideal<F>> parts;
    for (const auto& g : J.gens()) parts.push_back(ideal_quotient(I, g, lim));
    return ideal_intersect_many(parts, lim);
}

// (I : J^∞) = ∩ over generators g of (I : g^∞), each saturated by iterating
// single quotients until two successive results have equal reduced bases.
// chain[i] counts the quotients taken for generator i (stabilization data).
template <class F>
struct SaturationResult {
    Ideal<F> ideal;
    std::vector<unsigned> chain;
};

template <class F>
bool same_reduced_gb(const Ideal<F>& A, const Ideal<F>& B, const ResourceLimits& lim = {}) {
    auto ga = A.groebner(TermOrder::grevlex(), lim);
    auto gb = B.groebner(TermOrder::grevlex(), lim);
    if (ga->elems.size() != gb->elems.size()) return false;
    for (std::size_t i = 0; i < ga->elems.size(); ++i)
        if (!ga->elems[i].equals(gb->elems[i])) return false;
    return true;
}

template <class F>
SaturationResult<F> saturate(const Ideal<F>& I, const Ideal<F>& J, const ResourceLimits& lim = {}) {
    require_same_ring(*I.ring(), *J.ring());
    if (J.is_zero_ideal()) throw invalid_argument_error("saturation by the zero ideal");
    SaturationResult<F> res{I, {}};
    std::vector<Ideal<F>> parts;
    for (const auto& g : J.gens()) {
        Ideal<F> K = I;
        unsigned steps = 0;
        for (;;) {
            Ideal<F> Q = ideal_quotient(K, g, lim);
            ++steps;
            if (same_reduced_gb(Q, K, lim)) break;
            K = std::move(Q);
        }
        res.chain.push_back(steps);
        parts.push_back(std::move(K));
    }
    res.ideal = ideal_intersect_many(parts, lim);
    return res;
}

// Frobenius power I^[q], q a power of the (positive) characteristic.
template <class F>
Ideal<F> frobenius_power(const Ideal<F>& I, std::uint64_t q) {
    std::uint64_t p = I.ring()->field().characteristic();
    if (p == 0) throw unsupported_error("Frobenius powers need positive characteristic");
    std::uint64_t t = q;
    while (t > 1 && t % p == 0) t /= p;
    if (t != 1 || q < p) throw invalid_argument_error("Frobenius exponent must be a positive power of the characteristic");
    std::vector<Poly<F>> gens;
    for (const auto& g : I.gens()) gens.push_back(g.pow(q));
    return Ideal<F>(I.ring(), std::move(gens));
}

template <class F>
struct FedderResult {
    bool fpure;
    Poly<F> witness;  // element of (I^[p] : I) outside m^[p] when fpure
};

// Fedder's criterion: R/I is F-pure at the origin iff (I^[p] : I) is not
// contained in m^[p] = (v^p for every variable v).
template <class F>
FedderResult<F> fedder_is_fpure(const Ideal<F>& I, const ResourceLimits& lim = {}) {
    std::uint64_t p = I.ring()->field().characteristic();
    if (p == 0) throw unsupported_error("Fedder's criterion needs positive characteristic");
    if (I.is_zero_ideal()) throw invalid_argument_error("Fedder's criterion needs a nonzero ideal");
    for (const auto& g : I.gens())
        for (const auto& t : g.terms())
            if (t.m.is_one()) throw invalid_argument_error("ideal is not contained in the maximal ideal");
    Ideal<F> Ip = frobenius_power(I, p);
    Ideal<F> Q = ideal_quotient(Ip, I, lim);
    std::vector<Poly<F>> mp;
    for (std::size_t i = 0; i < I.ring()->nvars(); ++i)
        mp.push_back(Poly<F>::variable(I.ring(), i).pow(p));
    for (const auto& g : Q.gens()) {
        if (!normal_form(g, mp, TermOrder::grevlex(), lim).is_zero()) return {true, g};
    }
    return {false, Poly<F>::zero(I.ring())};
}

// True iff target ⊆ A*B.
template <class F>
bool product_containment(const Ideal<F>& target, const Ideal<F>& A, const Ideal<F>& B,
                         const ResourceLimits& lim = {}) {
    return ideal_contains(ideal_product(A, B), target, lim);
}

}  // namespace sympow

#pragma once
// Numerical-semigroup space curves in three variables: toric kernels of
// x -> t^a, y -> t^b, z -> t^c computed by elimination, minimal generating
// sets, two-row monomial presentations whose 2x2 minors generate the kernel,
// and entry-divisibility certificates for symbolic-power containments.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympow/symbolic.hpp"

namespace sympow {

// ---------------------------------------------------------------------------
// CurveSpec: a triple of pairwise-distinct positive exponents, stored sorted.
// ---------------------------------------------------------------------------

struct CurveSpec {
    std::uint32_t a = 0, b = 0, c = 0;       // sorted ascending
    std::array<std::uint32_t, 3> input{};    // exponents in the order given
    std::array<std::uint32_t, 3> reduced{};  // divided by gcd; same kernel, canonical label
};

inline CurveSpec make_curve_spec(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (a == 0 || b == 0 || c == 0)
        throw invalid_argument_error("curve exponents must be positive");
    if (a == b || a == c || b == c)
        throw invalid_argument_error("curve exponents must be pairwise distinct");
    CurveSpec s;
    s.input = {a, b, c};
    std::array<std::uint32_t, 3> v{a, b, c};
    std::sort(v.begin(), v.end());
    s.a = v[0];
    s.b = v[1];
    s.c = v[2];
    const std::uint32_t g = std::gcd(std::gcd(v[0], v[1]), v[2]);
    s.reduced = {v[0] / g, v[1] / g, v[2] / g};
    return s;
}

inline std::array<std::uint32_t, 3> curve_weights(const CurveSpec& s) { return {s.a, s.b, s.c}; }

// Degree in t of a monomial in x, y, z after substituting x = t^a, y = t^b, z = t^c.
inline std::uint64_t curve_degree(const CurveSpec& s, const Monomial& m) {
    if (m.nvars() != 3) throw invalid_argument_error("curve_degree: monomial must have three variables");
    return std::uint64_t(s.a) * m[0] + std::uint64_t(s.b) * m[1] + std::uint64_t(s.c) * m[2];
}

// All terms share one t-degree (the zero polynomial qualifies).
template <class F>
bool curve_homogeneous(const CurveSpec& s, const Poly<F>& f) {
    if (f.is_zero()) return true;
    const std::uint64_t d = curve_degree(s, f.terms().front().m);
    for (const auto& t : f.terms())
        if (curve_degree(s, t.m) != d) return false;
    return true;
}

// Exact substitution test: f(t^a, t^b, t^c) = 0, evaluated by summing the
// coefficients of each t-degree separately (no truncation, no sampling).
template <class F>
bool vanishes_on_curve(const CurveSpec& s, const Poly<F>& f) {
    const auto& k = f.ring()->field();
    std::map<std::uint64_t, typename F::elem> acc;
    for (const auto& t : f.terms()) {
        const std::uint64_t d = curve_degree(s, t.m);
        auto it = acc.find(d);
        if (it == acc.end())
            acc.emplace(d, t.c);
        else
            it->second = k.add(it->second, t.c);
    }
    for (const auto& [d, c] : acc)
        if (!k.is_zero(c)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Kernel of k[x,y,z] -> k[t], x -> t^a, y -> t^b, z -> t^c, by elimination.
// ---------------------------------------------------------------------------

template <class F>
Ideal<F> semigroup_kernel(const RingPtr<F>& ring, const CurveSpec& s, const ResourceLimits& lim = {}) {
    if (ring->nvars() != 3)
        throw invalid_argument_error("semigroup_kernel: ring must have exactly three variables");
    const std::string tname = fresh_var_name(*ring, "t");
    std::vector<std::string> wvars = ring->vars();
    wvars.push_back(tname);
    auto W = make_ring(ring->field(), wvars);
    const auto one = W->field().one();
    const std::array<std::uint32_t, 3> e = curve_weights(s);
    std::vector<Poly<F>> gens;
    for (std::size_t i = 0; i < 3; ++i) {
        Monomial tm{0, 0, 0, e[i]};
        gens.push_back(Poly<F>::variable(W, i).sub(Poly<F>::monomial_term(W, one, tm)));
    }
    // The binomial generators keep every intermediate t-degree bounded by the
    // data, but total degrees exceed generic defaults; widen the cap to a
    // structural bound while honoring a caller cap that is already larger.
    ResourceLimits wide = lim;
    const std::int64_t structural = 8 * std::int64_t(s.a + s.b + s.c) + 64;
    wide.max_degree = std::max(wide.max_degree, structural);
    Ideal<F> work(W, std::move(gens));
    Ideal<F> elim = eliminate(work, {tname}, wide);
    std::vector<Poly<F>> mapped;
    for (const auto& g : elim.gens()) mapped.push_back(map_vars(g, ring, {0, 1, 2}));
    return Ideal<F>(ring, std::move(mapped));
}

// ---------------------------------------------------------------------------
// Minimal generators of a weighted-homogeneous ideal (graded greedy trim).
// ---------------------------------------------------------------------------

template <class F>
std::vector<Poly<F>> minimal_generators(const Ideal<F>& I, const std::array<std::uint32_t, 3>& w,
                                        const ResourceLimits& lim = {}) {
    auto gb = I.groebner(TermOrder::grevlex(), lim);
    std::vector<Poly<F>> cands = gb->elems;
    auto wdeg = [&](const Poly<F>& f) -> std::uint64_t {
        if (f.is_zero()) return 0;
        std::uint64_t d = 0;
        for (const auto& t : f.terms()) {
            std::uint64_t td = std::uint64_t(w[0]) * t.m[0] + std::uint64_t(w[1]) * t.m[1] +
                               std::uint64_t(w[2]) * t.m[2];
            d = std::max(d, td);
        }
        return d;
    };
    std::stable_sort(cands.begin(), cands.end(), [&](const Poly<F>& x, const Poly<F>& y) {
        const auto dx = wdeg(x), dy = wdeg(y);
        if (dx != dy) return dx < dy;
        return format_poly(x) < format_poly(y);
    });
    std::vector<Poly<F>> kept;
    for (const auto& g : cands) {
        if (kept.empty()) {
            kept.push_back(g);
            continue;
        }
        if (!ideal_member(g, Ideal<F>(I.ring(), kept), lim)) kept.push_back(g);
    }
    return kept;
}

template <class F>
bool is_complete_intersection(const Ideal<F>& kernel, const CurveSpec& s, const ResourceLimits& lim = {}) {
    return minimal_generators(kernel, curve_weights(s), lim).size() == 2;
}

// ---------------------------------------------------------------------------
// CurveMatrix: a 2x3 matrix over the base ring with the fixed minor signs
//   f1 = a2 b3 - a3 b2,  f2 = a3 b1 - a1 b3,  f3 = a1 b2 - a2 b1.
// ---------------------------------------------------------------------------

template <class F>
struct CurveMatrix {
    RingPtr<F> ring;
    std::array<Poly<F>, 6> entry;  // row-major: a1, a2, a3, b1, b2, b3

    std::array<Poly<F>, 3> minors() const {
        const auto& a1 = entry[0];
        const auto& a2 = entry[1];
        const auto& a3 = entry[2];
        const auto& b1 = entry[3];
        const auto& b2 = entry[4];
        const auto& b3 = entry[5];
        return {a2.mul(b3).sub(a3.mul(b2)), a3.mul(b1).sub(a1.mul(b3)), a1.mul(b2).sub(a2.mul(b1))};
    }

    Ideal<F> minor_ideal() const {
        auto f = minors();
        return Ideal<F>(ring, {f[0], f[1], f[2]});
    }
};

template <class F>
CurveMatrix<F> make_curve_matrix(RingPtr<F> ring, std::array<Poly<F>, 6> e) {
    for (const auto& p : e)
        if (!p.is_zero() && !ring_equal(*p.ring(), *ring))
            throw invalid_argument_error("make_curve_matrix: entries must live in the given ring");
    return CurveMatrix<F>{std::move(ring), std::move(e)};
}

// One of the twelve row/column arrangements: optionally swap the rows, then
// take columns in the order cols[0], cols[1], cols[2].
template <class F>
CurveMatrix<F> arrange(const CurveMatrix<F>& M, bool row_swap, const std::array<int, 3>& cols) {
    std::array<Poly<F>, 6> e;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t top = row_swap ? 3 : 0;
        const std::size_t bot = row_swap ? 0 : 3;
        e[i] = M.entry[top + std::size_t(cols[i])];
        e[3 + i] = M.entry[bot + std::size_t(cols[i])];
    }
    return CurveMatrix<F>{M.ring, std::move(e)};
}

// The minors of the matrix cut out a curve: dim R/I2(M) = 1 via the leading
// term ideal of a Groebner basis.
template <class F>
bool minors_define_curve(const CurveMatrix<F>& M, const ResourceLimits& lim = {}) {
    auto I = M.minor_ideal();
    if (I.gens().empty()) return false;
    auto gb = I.groebner(TermOrder::grevlex(), lim);
    std::vector<std::uint32_t> masks;
    for (const auto& g : gb->elems) {
        std::uint32_t mask = 0;
        const Monomial& mon = g.terms().front().m;
        for (std::size_t i = 0; i < 3; ++i)
            if (mon[i]) mask |= (1u << i);
        masks.push_back(mask);
    }
    return detail::monomial_quotient_dim(masks, 3) == 1;
}

// ---------------------------------------------------------------------------
// Two-row monomial presentation search. The template shape is
//   [ x^alpha3  y^beta1  z^gamma2 ]
//   [ z^gamma1  x^alpha2 y^beta3  ]
// whose minors are the weighted-homogeneous binomials
//   f1 = y^(beta1+beta3)   - x^alpha2 z^gamma2
//   f2 = z^(gamma1+gamma2) - x^alpha3 y^beta3
//   f3 = x^(alpha2+alpha3) - y^beta1 z^gamma1.
// ---------------------------------------------------------------------------

template <class F>
struct HerzogData {
    bool complete_intersection = false;
    // alpha2, alpha3, beta1, beta3, gamma1, gamma2; all positive when a matrix exists
    std::array<std::uint32_t, 6> exponents{};
    std::optional<CurveMatrix<F>> matrix;  // engaged iff !complete_intersection
    std::vector<Poly<F>> generators;       // minimal generating set of the kernel
};

template <class F>
HerzogData<F> herzog_matrix(const Ideal<F>& kernel, const CurveSpec& s, const ResourceLimits& lim = {}) {
    HerzogData<F> out;
    out.generators = minimal_generators(kernel, curve_weights(s), lim);
    if (out.generators.size() == 2) {
        out.complete_intersection = true;
        return out;
    }
    const auto ring = kernel.ring();
    const auto one = ring->field().one();
    const std::int64_t A = s.a, B = s.b, C = s.c;
    const std::uint32_t bound = s.a + s.b + s.c;
    struct Cand {
        std::uint64_t sum;
        std::array<std::uint32_t, 6> e;  // alpha2, alpha3, beta1, beta3, gamma1, gamma2
    };
    std::vector<Cand> cands;
    for (std::uint32_t a2 = 1; a2 <= bound; ++a2)
        for (std::uint32_t a3 = 1; a3 <= bound; ++a3)
            for (std::uint32_t b1 = 1; b1 <= bound; ++b1) {
                // x^(alpha2+alpha3) and y^beta1 z^gamma1 share a t-degree
                const std::int64_t n1 = A * (std::int64_t(a2) + a3) - B * b1;
                if (n1 <= 0 || n1 % C != 0) continue;
                const std::int64_t g1 = n1 / C;
                if (g1 > bound) continue;
                for (std::uint32_t b3 = 1; b3 <= bound; ++b3) {
                    // y^(beta1+beta3) and x^alpha2 z^gamma2 share a t-degree
                    const std::int64_t n2 = B * (std::int64_t(b1) + b3) - A * a2;
                    if (n2 <= 0 || n2 % C != 0) continue;
                    const std::int64_t g2 = n2 / C;
                    if (g2 > bound) continue;
                    // z^(gamma1+gamma2) and x^alpha3 y^beta3 share a t-degree
                    if (C * (g1 + g2) != A * a3 + B * b3) continue;
                    cands.push_back(Cand{std::uint64_t(a2) + a3 + b1 + b3 + g1 + g2,
                                         {a2, a3, b1, b3, std::uint32_t(g1), std::uint32_t(g2)}});
                }
            }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.sum != y.sum) return x.sum < y.sum;
        return x.e < y.e;
    });
    for (const auto& cand : cands) {
        const auto [a2, a3, b1, b3, g1, g2] = cand.e;
        auto mono = [&](std::uint32_t ex, std::uint32_t ey, std::uint32_t ez) {
            return Poly<F>::monomial_term(ring, one, Monomial{ex, ey, ez});
        };
        CurveMatrix<F> M{ring,
                         {mono(a3, 0, 0), mono(0, b1, 0), mono(0, 0, g2), mono(0, 0, g1),
                          mono(a2, 0, 0), mono(0, b3, 0)}};
        if (ideal_equal(M.minor_ideal(), kernel, lim)) {
            out.exponents = cand.e;
            out.matrix = std::move(M);
            return out;
        }
    }
    throw unsupported_error("no two-row monomial presentation of the kernel within the exponent bound " +
                            std::to_string(bound));
}

// ---------------------------------------------------------------------------
// Entry-divisibility certificates. Each target names the containment it
// certifies once a row/column arrangement matches its divisibility pattern.
// ---------------------------------------------------------------------------

enum class ContainmentTarget {
    third_in_square,   // I^(3) in I^2:  a1 | b2*a3          (characteristic not 2, 3)
    fifth_in_cube,     // I^(5) in I^3:  a1 | b2 and a2 | b3 (characteristic not 2)
    fourth_in_cube,    // I^(4) in I^3:  a1 | b2 | a1^2, a2 | b3, a3 | b1 or b1 | a3
};

namespace detail {

// Exact polynomial divisibility: dividing by the single element p leaves
// remainder zero exactly when q lies in (p).
template <class F>
bool entry_divides(const Poly<F>& p, const Poly<F>& q, const ResourceLimits& lim = {}) {
    if (p.is_zero()) return q.is_zero();
    return normal_form(q, std::vector<Poly<F>>{p}, TermOrder::grevlex(), lim).is_zero();
}

}  // namespace detail

template <class F>
bool satisfies_target(const CurveMatrix<F>& M, ContainmentTarget t, const ResourceLimits& lim = {}) {
    const auto& a1 = M.entry[0];
    const auto& a2 = M.entry[1];
    const auto& a3 = M.entry[2];
    const auto& b1 = M.entry[3];
    const auto& b2 = M.entry[4];
    const auto& b3 = M.entry[5];
    switch (t) {
        case ContainmentTarget::third_in_square:
            return detail::entry_divides(a1, b2.mul(a3), lim);
        case ContainmentTarget::fifth_in_cube:
            return detail::entry_divides(a1, b2, lim) && detail::entry_divides(a2, b3, lim);
        case ContainmentTarget::fourth_in_cube:
            return detail::entry_divides(a1, b2, lim) && detail::entry_divides(b2, a1.mul(a1), lim) &&
                   detail::entry_divides(a2, b3, lim) &&
                   (detail::entry_divides(a3, b1, lim) || detail::entry_divides(b1, a3, lim));
    }
    return false;
}

// First of the twelve arrangements (unswapped rows first, columns in
// lexicographic permutation order) matching the target's pattern.
template <class F>
std::optional<CurveMatrix<F>> normalize_matrix(const CurveMatrix<F>& M, ContainmentTarget t,
                                               const ResourceLimits& lim = {}) {
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const bool swap_rows : {false, true})
        for (const auto& sigma : perms) {
            CurveMatrix<F> V = arrange(M, swap_rows, sigma);
            if (satisfies_target(V, t, lim)) return V;
        }
    return std::nullopt;
}

// Certified containments for the ideal of 2x2 minors, by pattern matching over
// all row/column arrangements. Sound but not complete; the characteristic
// guards are part of each certificate's hypothesis.
template <class F>
std::vector<std::pair<std::uint32_t, std::uint32_t>> divisibility_criterion(const CurveMatrix<F>& M,
                                                                            const ResourceLimits& lim = {}) {
    const std::uint64_t p = M.ring->field().characteristic();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    if (p != 2 && p != 3 && normalize_matrix(M, ContainmentTarget::third_in_square, lim)) out.push_back({3, 2});
    if (p != 2 && normalize_matrix(M, ContainmentTarget::fourth_in_cube, lim)) out.push_back({4, 3});
    if (p != 2 && normalize_matrix(M, ContainmentTarget::fifth_in_cube, lim)) out.push_back({5, 3});
    return out;
}

}  // namespace sympow

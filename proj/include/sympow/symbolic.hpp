#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sympow/ideal_ops.hpp"
#include "sympow/report.hpp"

namespace sympow {

// ---------------------------------------------------------------------------
// Classification of input ideals.
//
// Two families are supported:
//   * squarefree monomial ideals in up to 8 variables, where symbolic powers
//     are lattice intersections over the minimal primes, and
//   * quasi-homogeneous saturated height-2 ideals in exactly 3 variables
//     (space curves through the origin), where the n-th symbolic power is the
//     saturation of the n-th ordinary power at the irrelevant maximal ideal.
// ---------------------------------------------------------------------------

enum class IdealClass { squarefree_monomial, height2_saturated, unsupported };

struct Classification {
    IdealClass kind = IdealClass::unsupported;
    unsigned big_height = 0;               // largest height of a minimal prime
    std::vector<std::uint32_t> weights;    // positive grading with all generators homogeneous
    std::string reason;                    // explanation when kind == unsupported
};

namespace detail {

// Supports of the generators of a squarefree monomial ideal, as bitmasks.
template <class F>
std::vector<std::uint32_t> support_masks(const Ideal<F>& I) {
    std::vector<std::uint32_t> masks;
    for (const auto& g : I.gens()) {
        std::uint32_t m = 0;
        const Monomial& mon = g.leading_monomial();
        for (std::size_t i = 0; i < I.ring()->nvars(); ++i)
            if (mon[i]) m |= (1u << i);
        masks.push_back(m);
    }
    return masks;
}

// Inclusion-minimal vertex covers of the support hypergraph: subsets of the
// variables meeting every generator support, with no proper subset doing so.
inline std::vector<std::uint32_t> minimal_cover_masks(const std::vector<std::uint32_t>& supports,
                                                      std::size_t nvars) {
    auto covers = [&](std::uint32_t s) {
        for (auto sup : supports)
            if ((sup & s) == 0) return false;
        return true;
    };
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 1; s < (1u << nvars); ++s) {
        if (!covers(s)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < nvars && minimal; ++i)
            if ((s >> i) & 1u) minimal = !covers(s & ~(1u << i));
        if (minimal) out.push_back(s);
    }
    return out;
}

// Exponent difference vectors between the leading term and every other term
// of each generator; a positive weight vector grades the ideal iff it is
// orthogonal to all of them.
template <class F>
std::vector<std::array<std::int64_t, 3>> weight_constraints(const Ideal<F>& I) {
    std::vector<std::array<std::int64_t, 3>> rows;
    for (const auto& g : I.gens()) {
        const auto& ts = g.terms();
        for (std::size_t j = 1; j < ts.size(); ++j) {
            std::array<std::int64_t, 3> d{};
            for (std::size_t i = 0; i < 3; ++i)
                d[i] = static_cast<std::int64_t>(ts[0].m[i]) - static_cast<std::int64_t>(ts[j].m[i]);
            rows.push_back(d);
        }
    }
    return rows;
}

inline std::int64_t igcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Smallest (by coordinate sum, then lexicographically) strictly positive
// integer vector w with every row . w == 0 and entries bounded by `bound`.
inline std::optional<std::array<std::uint32_t, 3>> positive_weights(
    std::vector<std::array<std::int64_t, 3>> rows, std::uint32_t bound = 512) {
    auto orthogonal_all = [&](const std::array<std::uint32_t, 3>& w) {
        for (const auto& r : rows)
            if (r[0] * (std::int64_t)w[0] + r[1] * (std::int64_t)w[1] + r[2] * (std::int64_t)w[2] != 0)
                return false;
        return true;
    };

    // fraction-free row reduction to find the rank and a basis of the row space
    std::vector<std::array<std::int64_t, 3>> basis;
    for (auto r : rows) {
        for (const auto& b : basis) {
            std::size_t p = 0;
            while (p < 3 && b[p] == 0) ++p;
            if (p == 3 || r[p] == 0) continue;
            std::int64_t l = b[p] / igcd(b[p], r[p]) * r[p];
            std::int64_t cr = l / r[p], cb = l / b[p];
            for (std::size_t i = 0; i < 3; ++i) r[i] = r[i] * cr - b[i] * cb;
        }
        if (r != std::array<std::int64_t, 3>{0, 0, 0}) {
            std::int64_t g = igcd(igcd(std::abs(r[0]), std::abs(r[1])), std::abs(r[2]));
            for (auto& x : r) x /= g;
            basis.push_back(r);
            // keep the basis in echelon form: sort by pivot position
            std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b2) {
                auto piv = [](const std::array<std::int64_t, 3>& v) {
                    std::size_t p = 0;
                    while (p < 3 && v[p] == 0) ++p;
                    return p;
                };
                return piv(a) < piv(b2);
            });
        }
    }

    if (basis.size() >= 3) return std::nullopt;
    if (basis.empty()) return std::array<std::uint32_t, 3>{1, 1, 1};

    if (basis.size() == 2) {
        // one-dimensional kernel: the cross product of the two basis rows
        const auto& u = basis[0];
        const auto& v = basis[1];
        std::array<std::int64_t, 3> c{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                      u[0] * v[1] - u[1] * v[0]};
        if (c == std::array<std::int64_t, 3>{0, 0, 0}) return std::nullopt;
        std::int64_t g = igcd(igcd(std::abs(c[0]), std::abs(c[1])), std::abs(c[2]));
        for (auto& x : c) x /= g;
        if (c[0] < 0 || c[1] < 0 || c[2] < 0) {
            for (auto& x : c) x = -x;
        }
        if (c[0] <= 0 || c[1] <= 0 || c[2] <= 0) return std::nullopt;  // mixed signs: no positive grading
        if (c[0] > bound || c[1] > bound || c[2] > bound) return std::nullopt;
        std::array<std::uint32_t, 3> w{(std::uint32_t)c[0], (std::uint32_t)c[1], (std::uint32_t)c[2]};
        return orthogonal_all(w) ? std::optional(w) : std::nullopt;
    }

    // rank 1: scan the two free coordinates in (sum, lex) order
    const auto& r = basis[0];
    std::optional<std::array<std::uint32_t, 3>> best;
    auto consider = [&](std::uint32_t w0, std::uint32_t w1, std::uint32_t w2) {
        std::array<std::uint32_t, 3> w{w0, w1, w2};
        if (!orthogonal_all(w)) return;
        if (!best) {
            best = w;
            return;
        }
        auto sum = [](const std::array<std::uint32_t, 3>& v) { return v[0] + v[1] + v[2]; };
        if (sum(w) < sum(*best) || (sum(w) == sum(*best) && w < *best)) best = w;
    };
    if (r[2] != 0) {
        for (std::uint32_t w0 = 1; w0 <= bound; ++w0)
            for (std::uint32_t w1 = 1; w1 <= bound; ++w1) {
                std::int64_t num = -(r[0] * (std::int64_t)w0 + r[1] * (std::int64_t)w1);
                if (num % r[2]) continue;
                std::int64_t w2 = num / r[2];
                if (w2 >= 1 && w2 <= bound) consider(w0, w1, (std::uint32_t)w2);
            }
    } else if (r[1] != 0) {
        for (std::uint32_t w0 = 1; w0 <= bound; ++w0) {
            std::int64_t num = -(r[0] * (std::int64_t)w0);
            if (num % r[1]) continue;
            std::int64_t w1 = num / r[1];
            if (w1 >= 1 && w1 <= (std::int64_t)bound) consider(w0, (std::uint32_t)w1, 1);
        }
    }  // r = (a,0,0) with a != 0 forces w0 = 0: no positive solution
    return best;
}

// Krull dimension of R / (monomial ideal): the largest coordinate subspace
// avoiding every generator. Generators are passed as support-with-exponent
// monomials; only supports matter.
inline int monomial_quotient_dim(const std::vector<std::uint32_t>& supports, std::size_t nvars) {
    int best = -1;
    for (std::uint32_t s = 0; s < (1u << nvars); ++s) {
        bool free_subspace = true;
        for (auto sup : supports)
            if ((sup & ~s) == 0) {  // generator lives inside the subspace coordinates
                free_subspace = false;
                break;
            }
        if (free_subspace) best = std::max(best, (int)std::popcount(s));
    }
    return best;
}

}  // namespace detail

template <class F>
std::vector<Ideal<F>> minimal_primes_squarefree(const Ideal<F>& I) {
    auto covers = detail::minimal_cover_masks(detail::support_masks(I), I.ring()->nvars());
    std::vector<Ideal<F>> primes;
    for (auto mask : covers) {
        std::vector<Poly<F>> gens;
        for (std::size_t i = 0; i < I.ring()->nvars(); ++i)
            if ((mask >> i) & 1u) gens.push_back(Poly<F>::variable(I.ring(), i));
        primes.emplace_back(I.ring(), std::move(gens));
    }
    return primes;
}

template <class F>
Classification classify(const Ideal<F>& I, const ResourceLimits& lim = {}) {
    Classification c;
    if (I.is_zero_ideal()) {
        c.reason = "the zero ideal has no symbolic powers here";
        return c;
    }
    for (const auto& g : I.gens())
        if (g.is_constant()) {
            c.reason = "the unit ideal is not supported";
            return c;
        }

    if (I.is_monomial()) {
        bool squarefree = true;
        for (const auto& g : I.gens())
            for (std::size_t i = 0; i < I.ring()->nvars() && squarefree; ++i)
                if (g.leading_monomial()[i] > 1) squarefree = false;
        if (squarefree) {
            auto covers = detail::minimal_cover_masks(detail::support_masks(I), I.ring()->nvars());
            unsigned h = 0;
            for (auto mask : covers) h = std::max<unsigned>(h, std::popcount(mask));
            c.kind = IdealClass::squarefree_monomial;
            c.big_height = h;
            return c;
        }
        c.reason = "monomial ideals must be squarefree";
        return c;
    }

    if (I.ring()->nvars() != 3) {
        c.reason = "non-monomial ideals are supported in exactly three variables";
        return c;
    }

    auto w = detail::positive_weights(detail::weight_constraints(I));
    if (!w) {
        c.reason = "no positive weight vector (entries <= 512) grades all generators";
        return c;
    }

    auto gb = I.groebner(TermOrder::grevlex(), lim);
    std::vector<std::uint32_t> lt_supports;
    for (const auto& g : gb->elems) {
        if (g.is_constant()) {
            c.reason = "the unit ideal is not supported";
            return c;
        }
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < 3; ++i)
            if (g.leading_monomial()[i]) m |= (1u << i);
        lt_supports.push_back(m);
    }
    int dim = detail::monomial_quotient_dim(lt_supports, 3);
    if (dim != 1) {
        c.reason = "ideal does not define a curve (quotient dimension " + std::to_string(dim) + ")";
        return c;
    }

    std::vector<Poly<F>> mvars;
    for (std::size_t i = 0; i < 3; ++i) mvars.push_back(Poly<F>::variable(I.ring(), i));
    Ideal<F> m(I.ring(), std::move(mvars));
    SaturationResult<F> sat = saturate(I, m, lim);
    if (!ideal_equal(sat.ideal, I, lim)) {
        c.reason = "ideal is not saturated at the irrelevant maximal ideal";
        return c;
    }

    c.kind = IdealClass::height2_saturated;
    c.big_height = 2;
    c.weights.assign(w->begin(), w->end());
    return c;
}

// ---------------------------------------------------------------------------
// Symbolic powers.
// ---------------------------------------------------------------------------

template <class F>
Ideal<F> symbolic_power(const Ideal<F>& I, std::uint32_t n, const Classification& cls,
                        const ResourceLimits& lim = {}) {
    if (n == 0) throw invalid_argument_error("symbolic power exponent must be >= 1");
    switch (cls.kind) {
        case IdealClass::squarefree_monomial: {
            auto primes = minimal_primes_squarefree(I);
            std::vector<Ideal<F>> parts;
            for (const auto& P : primes) parts.push_back(ideal_power(P, n));
            return ideal_intersect_many(parts, lim);
        }
        case IdealClass::height2_saturated: {
            if (n == 1) return I;
            std::vector<Poly<F>> mvars;
            for (std::size_t i = 0; i < 3; ++i) mvars.push_back(Poly<F>::variable(I.ring(), i));
            Ideal<F> m(I.ring(), std::move(mvars));
            return saturate(ideal_power(I, n), m, lim).ideal;
        }
        default:
            throw unsupported_error("symbolic powers unavailable: " + cls.reason);
    }
}

template <class F>
Ideal<F> symbolic_power(const Ideal<F>& I, std::uint32_t n, const ResourceLimits& lim = {}) {
    return symbolic_power(I, n, classify(I, lim), lim);
}

// ---------------------------------------------------------------------------
// Containment questions and sweeps.
// ---------------------------------------------------------------------------

template <class F>
ContainmentReport<F> check_containment(const Ideal<F>& I, std::uint32_t a, std::uint32_t b,
                                       const Classification& cls, const ResourceLimits& lim = {}) {
    if (b == 0 || a < b)
        throw invalid_argument_error("containment question needs exponents a >= b >= 1");
    ContainmentReport<F> rep;
    rep.a = a;
    rep.b = b;
    rep.method = cls.kind == IdealClass::squarefree_monomial ? "monomial-lattice" : "saturation";
    auto t0 = std::chrono::steady_clock::now();
    try {
        Ideal<F> lhs = symbolic_power(I, a, cls, lim);
        Ideal<F> rhs = ideal_power(I, b);
        rep.outcome = Outcome::holds;
        for (const auto& g : lhs.gens())
            if (!ideal_member(g, rhs, lim)) {
                rep.outcome = Outcome::fails;
                rep.witness = g;
                break;
            }
    } catch (const resource_limit_error& e) {
        rep.outcome = Outcome::resource_limited;
        rep.detail = e.what();
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Stable identity of an ideal presentation: sorted generator strings plus the
// field characteristic and the variable names.
template <class F>
std::string ideal_fingerprint(const Ideal<F>& I) {
    std::vector<std::string> gens;
    for (const auto& g : I.gens()) gens.push_back(format_poly(g));
    std::sort(gens.begin(), gens.end());
    std::string blob;
    for (const auto& s : gens) blob += s + "|";
    blob += ";p=" + std::to_string(I.ring()->field().characteristic());
    blob += ";vars=";
    for (const auto& v : I.ring()->vars()) blob += v + ",";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(blob));
    return std::string(buf);
}

struct SweepCell {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Outcome outcome = Outcome::resource_limited;
    std::string witness;  // empty when none
    std::int64_t elapsed_ms = 0;
    bool cached = false;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::uint32_t resurgence_num = 1;  // largest failing ratio a/b, reduced; 1/1 if none fails
    std::uint32_t resurgence_den = 1;
    bool any_resource_limited = false;
};

namespace detail {

struct StoreKey {
    std::uint32_t a, b;
    bool operator<(const StoreKey& o) const { return a < o.a || (a == o.a && b < o.b); }
};

struct StoreVal {
    Outcome outcome;
    std::string witness;
    std::int64_t elapsed_ms;
};

// Persistent sweep lines: fingerprint, a, b, outcome, witness-or-dash, ms.
inline std::map<StoreKey, StoreVal> load_store(const std::string& path, const std::string& fp) {
    std::map<StoreKey, StoreVal> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string f, a, b, oc, wit, ms;
        if (!std::getline(ls, f, '\t') || !std::getline(ls, a, '\t') || !std::getline(ls, b, '\t') ||
            !std::getline(ls, oc, '\t') || !std::getline(ls, wit, '\t') || !std::getline(ls, ms, '\t'))
            continue;
        if (f != fp) continue;
        Outcome o;
        if (oc == "holds")
            o = Outcome::holds;
        else if (oc == "fails")
            o = Outcome::fails;
        else
            continue;  // resource-limited lines are never trusted across runs
        try {
            out[{(std::uint32_t)std::stoul(a), (std::uint32_t)std::stoul(b)}] =
                StoreVal{o, wit == "-" ? "" : wit, std::stoll(ms)};
        } catch (...) {
            continue;
        }
    }
    return out;
}

}  // namespace detail

// Sweep all cells 1 <= b <= bmax, b <= a <= amax. With a store path, cells
// already recorded for this ideal are reused and fresh cells are appended.
template <class F>
SweepResult sweep_containments(const Ideal<F>& I, std::uint32_t amax, std::uint32_t bmax,
                               const Classification& cls, const std::string& store_path = "",
                               const ResourceLimits& lim = {}) {
    if (amax == 0 || bmax == 0) throw invalid_argument_error("sweep bounds must be >= 1");
    SweepResult res;
    std::string fp = ideal_fingerprint(I);
    std::map<detail::StoreKey, detail::StoreVal> cache;
    if (!store_path.empty()) cache = detail::load_store(store_path, fp);
    std::ofstream append;
    if (!store_path.empty()) append.open(store_path, std::ios::app);

    for (std::uint32_t b = 1; b <= bmax; ++b) {
        for (std::uint32_t a = b; a <= amax; ++a) {
            SweepCell cell;
            cell.a = a;
            cell.b = b;
            auto it = cache.find({a, b});
            if (it != cache.end()) {
                cell.outcome = it->second.outcome;
                cell.witness = it->second.witness;
                cell.elapsed_ms = it->second.elapsed_ms;
                cell.cached = true;
            } else {
                ContainmentReport<F> rep = check_containment(I, a, b, cls, lim);
                cell.outcome = rep.outcome;
                cell.witness = rep.witness ? witness_string(*rep.witness) : "";
                cell.elapsed_ms = rep.elapsed_ms;
                if (append.is_open() && rep.outcome != Outcome::resource_limited) {
                    append << fp << '\t' << a << '\t' << b << '\t' << outcome_name(cell.outcome)
                           << '\t' << (cell.witness.empty() ? "-" : cell.witness) << '\t'
                           << cell.elapsed_ms << '\n';
                    append.flush();
                }
            }
            if (cell.outcome == Outcome::resource_limited) res.any_resource_limited = true;
            if (cell.outcome == Outcome::fails) {
                // keep the largest failing ratio a/b (exact fraction compare)
                if ((std::uint64_t)a * res.resurgence_den > (std::uint64_t)res.resurgence_num * b) {
                    std::uint32_t g = std::gcd(a, b);
                    res.resurgence_num = a / g;
                    res.resurgence_den = b / g;
                }
            }
            res.cells.push_back(std::move(cell));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Stability schedule: one decomposition per target power k = h*m + t. Each
// step writes the (h*k - h)-th symbolic power inside the product of the
// symbolic powers (a_i + 1); combined with the seed containment
// (h*m - h) into m, the product collapses to the k-th ordinary power.
// ---------------------------------------------------------------------------

struct StabilityStep {
    std::uint32_t k = 0;           // target ordinary power
    std::uint32_t n = 0;           // number of factors in the decomposition
    std::vector<std::uint32_t> a;  // factor offsets; factor i is the (a[i]+1)-th symbolic power
    std::uint32_t sum_a() const {
        std::uint32_t s = 0;
        for (auto x : a) s += x;
        return s;
    }
};

inline std::vector<StabilityStep> stability_schedule(std::uint32_t h, std::uint32_t m,
                                                     std::uint32_t count) {
    if (h == 0 || m < 2 || count == 0)
        throw invalid_argument_error("stability schedule needs h >= 1, m >= 2, count >= 1");
    std::vector<StabilityStep> steps;
    for (std::uint32_t t = 0; t < count; ++t) {
        StabilityStep st;
        st.k = h * m + t;
        st.n = t + h;
        st.a.assign(st.n, 0);
        for (std::uint32_t i = 0; i < h; ++i) st.a[i] = h * m - h - 1;
        steps.push_back(std::move(st));
    }
    return steps;
}

// Checks one decomposition instance on a concrete ideal: with n = |a| and
// h the big height, the (h*n + sum a)-th symbolic power must lie in the
// product of the (a_i + 1)-th symbolic powers.
template <class F>
bool verify_johnson_instance(const Ideal<F>& I, const std::vector<std::uint32_t>& a,
                             const Classification& cls, const ResourceLimits& lim = {}) {
    if (a.empty()) throw invalid_argument_error("decomposition needs at least one factor");
    std::uint32_t h = cls.big_height;
    std::uint32_t e = h * (std::uint32_t)a.size();
    for (auto x : a) e += x;
    Ideal<F> lhs = symbolic_power(I, e, cls, lim);
    Ideal<F> rhs = symbolic_power(I, a[0] + 1, cls, lim);
    for (std::size_t i = 1; i < a.size(); ++i)
        rhs = ideal_product(rhs, symbolic_power(I, a[i] + 1, cls, lim));
    return ideal_contains(rhs, lhs, lim);
}

}  // namespace sympow

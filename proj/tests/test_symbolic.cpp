// Classification, symbolic powers, containment checks, sweeps, and the
// stability schedule. Oracles: classical lattice identities for squarefree
// monomial ideals, the uniform containment theorem (2n-th symbolic power
// inside the n-th ordinary power for height 2), and an independent
// single-variable saturation route for curve primes.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "sympow/symbolic.hpp"

using namespace sympow;
using F = PrimeField;

namespace {

RingPtr<F> ring3(std::uint64_t p = 32003) { return make_ring(F(p), {"x", "y", "z"}); }

Ideal<F> mk(const RingPtr<F>& R, std::vector<std::string> texts) { return Ideal<F>::from_strings(R, texts); }

Ideal<F> edge_ideal3(const RingPtr<F>& R) { return mk(R, {"x*y", "x*z", "y*z"}); }

Ideal<F> twisted_cubic(const RingPtr<F>& R) { return mk(R, {"y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"}); }

Ideal<F> fermat_ideal(const RingPtr<F>& R) {
    // x(y^3 - z^3), y(z^3 - x^3), z(x^3 - y^3)
    return mk(R, {"x*y^3 - x*z^3", "y*z^3 - x^3*y", "x^3*z - y^3*z"});
}

}  // namespace

TEST_CASE("classification of supported ideals") {
    auto R = ring3();

    Classification c1 = classify(edge_ideal3(R));
    REQUIRE(c1.kind == IdealClass::squarefree_monomial);
    REQUIRE(c1.big_height == 2);

    Classification cx = classify(mk(R, {"x"}));
    REQUIRE(cx.kind == IdealClass::squarefree_monomial);
    REQUIRE(cx.big_height == 1);

    // mixed heights: (xy, xz) = (x) ∩ (y,z) has minimal primes of heights 1, 2
    Classification cm = classify(mk(R, {"x*y", "x*z"}));
    REQUIRE(cm.kind == IdealClass::squarefree_monomial);
    REQUIRE(cm.big_height == 2);

    Classification ct = classify(twisted_cubic(R));
    REQUIRE(ct.kind == IdealClass::height2_saturated);
    REQUIRE(ct.big_height == 2);
    REQUIRE(ct.weights == std::vector<std::uint32_t>{3, 4, 5});

    Classification cf = classify(fermat_ideal(R));
    REQUIRE(cf.kind == IdealClass::height2_saturated);
    REQUIRE(cf.weights == std::vector<std::uint32_t>{1, 1, 1});

    // rejections, with reasons
    REQUIRE(classify(Ideal<F>(R, {})).kind == IdealClass::unsupported);
    REQUIRE(classify(mk(R, {"x^2*y"})).reason == "monomial ideals must be squarefree");
    REQUIRE(classify(mk(R, {"x + 1"})).kind == IdealClass::unsupported);  // not gradable
    // a surface is not a curve
    Classification cs = classify(mk(R, {"y^2 - x*z"}));
    REQUIRE(cs.kind == IdealClass::unsupported);
    REQUIRE(cs.reason.find("curve") != std::string::npos);
    // a curve with a fat point stuck at the origin is not saturated
    Ideal<F> m3 = ideal_power(mk(R, {"x", "y", "z"}), 3);
    Ideal<F> bad = ideal_intersect(twisted_cubic(R), m3);
    Classification cb = classify(bad);
    REQUIRE(cb.kind == IdealClass::unsupported);
    REQUIRE(cb.reason.find("saturated") != std::string::npos);
    // four variables, non-monomial
    auto R4 = make_ring(F(32003), {"x", "y", "z", "w"});
    REQUIRE(classify(Ideal<F>(R4, {parse_poly(R4, "x^2 - y*w")})).kind == IdealClass::unsupported);
}

TEST_CASE("minimal primes of squarefree monomial ideals") {
    auto R = ring3();
    auto primes = minimal_primes_squarefree(edge_ideal3(R));
    REQUIRE(primes.size() == 3);
    bool seen_xy = false, seen_xz = false, seen_yz = false;
    for (const auto& P : primes) {
        if (ideal_equal(P, mk(R, {"x", "y"}))) seen_xy = true;
        if (ideal_equal(P, mk(R, {"x", "z"}))) seen_xz = true;
        if (ideal_equal(P, mk(R, {"y", "z"}))) seen_yz = true;
    }
    REQUIRE((seen_xy && seen_xz && seen_yz));

    auto mixed = minimal_primes_squarefree(mk(R, {"x*y", "x*z"}));
    REQUIRE(mixed.size() == 2);
}

TEST_CASE("symbolic powers of squarefree monomial ideals") {
    auto R = ring3();
    Ideal<F> I = edge_ideal3(R);
    Classification cls = classify(I);

    // the classical identity: second symbolic power = square + (xyz)
    Ideal<F> s2 = symbolic_power(I, 2, cls);
    REQUIRE(ideal_equal(s2, ideal_sum(ideal_power(I, 2), mk(R, {"x*y*z"}))));

    // first symbolic power of a radical ideal is the ideal
    REQUIRE(ideal_equal(symbolic_power(I, 1, cls), I));

    // containments with known answers: (2,2) fails with witness xyz
    ContainmentReport<F> r22 = check_containment(I, 2, 2, cls);
    REQUIRE(r22.outcome == Outcome::fails);
    REQUIRE(r22.method == "monomial-lattice");
    REQUIRE(witness_string(*r22.witness) == "x*y*z");

    // the 4th symbolic power lies in the cube (squarefree family, v = 3)
    ContainmentReport<F> r43 = check_containment(I, 4, 3, cls);
    REQUIRE(r43.outcome == Outcome::holds);
    REQUIRE_FALSE(r43.witness.has_value());

    REQUIRE_THROWS_AS(check_containment(I, 2, 3, cls), invalid_argument_error);
    REQUIRE_THROWS_AS(check_containment(I, 2, 0, cls), invalid_argument_error);
}

TEST_CASE("squarefree family in four variables") {
    auto R4 = make_ring(F(32003), {"x", "y", "z", "w"});
    Ideal<F> I = Ideal<F>::from_strings(R4, {"x*y*z", "x*y*w", "x*z*w", "y*z*w"});
    Classification cls = classify(I);
    REQUIRE(cls.kind == IdealClass::squarefree_monomial);
    REQUIRE(cls.big_height == 2);

    // (2n-2, n) fails for n < 4 and holds at n = 4: the full product of the
    // variables to the (n-1)-st power separates the powers
    REQUIRE(check_containment(I, 2, 2, cls).outcome == Outcome::fails);
    REQUIRE(check_containment(I, 4, 3, cls).outcome == Outcome::fails);
    REQUIRE(check_containment(I, 6, 4, cls).outcome == Outcome::holds);

    Poly<F> sep = parse_poly(R4, "x^2*y^2*z^2*w^2");
    REQUIRE(ideal_member(sep, symbolic_power(I, 4, cls)));
    REQUIRE_FALSE(ideal_member(sep, ideal_power(I, 3)));
}

TEST_CASE("symbolic powers of a space curve prime") {
    auto R = ring3();
    Ideal<F> P = twisted_cubic(R);
    Classification cls = classify(P);

    Ideal<F> s2 = symbolic_power(P, 2, cls);
    // sandwiched between the square and the prime
    REQUIRE(ideal_contains(s2, ideal_power(P, 2)));
    REQUIRE(ideal_contains(P, s2));

    // independent route: for a curve prime, every embedded component of the
    // square sits at the irrelevant ideal, so saturating by the single
    // variable x (which is not in P) gives the same answer as saturating by
    // (x, y, z)
    Ideal<F> via_x = saturate(ideal_power(P, 2), mk(R, {"x"})).ideal;
    REQUIRE(ideal_equal(s2, via_x));

    // uniform containment theorem for height 2: (4,2) and (2,1) hold
    ContainmentReport<F> r42 = check_containment(P, 4, 2, cls);
    REQUIRE(r42.outcome == Outcome::holds);
    REQUIRE(r42.method == "saturation");
    REQUIRE(check_containment(P, 2, 1, cls).outcome == Outcome::holds);

    // every generator of the second symbolic power is weighted-homogeneous
    for (const auto& g : s2.gens()) {
        const auto& ts = g.terms();
        auto wdeg = [&](const Monomial& m) { return 3 * m[0] + 4 * m[1] + 5 * m[2]; };
        for (const auto& t : ts) REQUIRE(wdeg(t.m) == wdeg(ts[0].m));
    }

    // resource limits surface as an outcome, not an exception
    ResourceLimits tight;
    tight.max_steps = 3;
    ContainmentReport<F> rl = check_containment(P, 2, 2, cls, tight);
    REQUIRE(rl.outcome == Outcome::resource_limited);
    REQUIRE_FALSE(rl.detail.empty());
}

TEST_CASE("point configuration: the classical (3,2) failure") {
    auto R = ring3();
    Ideal<F> I = fermat_ideal(R);
    Classification cls = classify(I);

    ContainmentReport<F> r32 = check_containment(I, 3, 2, cls);
    REQUIRE(r32.outcome == Outcome::fails);
    // the witness is the product of the three bracket cubics (up to scale):
    // it lies in the third symbolic power but not in the square
    Poly<F> brackets = parse_poly(R, "y^3 - z^3")
                           .mul(parse_poly(R, "z^3 - x^3"))
                           .mul(parse_poly(R, "x^3 - y^3"));
    REQUIRE(ideal_member(brackets, symbolic_power(I, 3, cls)));
    REQUIRE_FALSE(ideal_member(brackets, ideal_power(I, 2)));

    // (4,2) holds by the uniform containment theorem
    REQUIRE(check_containment(I, 4, 2, cls).outcome == Outcome::holds);
}

TEST_CASE("sweep with persistent store") {
    auto R = ring3();
    Ideal<F> I = edge_ideal3(R);
    Classification cls = classify(I);
    std::string path = "sweep_store_test.tsv";
    std::remove(path.c_str());

    SweepResult first = sweep_containments(I, 4, 2, cls, path);
    REQUIRE(first.cells.size() == 7);  // b=1: a=1..4, b=2: a=2..4
    for (const auto& c : first.cells) REQUIRE_FALSE(c.cached);
    // (2,2) fails, so the resurgence lower bound is at least 1; (3,2) decides
    // whether it exceeds 1 — recompute the known cells directly
    auto cell = [&](std::uint32_t a, std::uint32_t b) -> const SweepCell& {
        for (const auto& c : first.cells)
            if (c.a == a && c.b == b) return c;
        throw std::runtime_error("cell not found");
    };
    REQUIRE(cell(2, 2).outcome == Outcome::fails);
    REQUIRE(cell(2, 2).witness == "x*y*z");
    REQUIRE(cell(4, 2).outcome == Outcome::holds);  // uniform containment theorem
    for (std::uint32_t a = 1; a <= 4; ++a) REQUIRE(cell(a, 1).outcome == Outcome::holds);

    // resume: all cells come from the store, outcomes identical
    SweepResult second = sweep_containments(I, 4, 2, cls, path);
    REQUIRE(second.cells.size() == first.cells.size());
    for (std::size_t i = 0; i < first.cells.size(); ++i) {
        REQUIRE(second.cells[i].cached);
        REQUIRE(second.cells[i].outcome == first.cells[i].outcome);
        REQUIRE(second.cells[i].witness == first.cells[i].witness);
    }
    REQUIRE(second.resurgence_num == first.resurgence_num);
    REQUIRE(second.resurgence_den == first.resurgence_den);

    // corrupt lines and foreign fingerprints are ignored on load
    {
        std::ofstream app(path, std::ios::app);
        app << "not a data line\n";
        app << "deadbeefdeadbeef\t9\t9\tholds\t-\t1\n";
    }
    SweepResult third = sweep_containments(I, 4, 2, cls, path);
    for (const auto& c : third.cells) REQUIRE(c.cached);

    std::remove(path.c_str());

    // a sweep without a store recomputes everything
    SweepResult bare = sweep_containments(I, 2, 1, cls);
    REQUIRE(bare.cells.size() == 2);
    REQUIRE_FALSE(bare.cells[0].cached);
}

TEST_CASE("resurgence bound from a sweep of the point configuration") {
    auto R = ring3();
    Ideal<F> I = fermat_ideal(R);
    Classification cls = classify(I);
    SweepResult res = sweep_containments(I, 3, 2, cls);
    // the (3,2) failure pins the lower bound 3/2; no failing cell beats it
    REQUIRE(res.resurgence_num == 3);
    REQUIRE(res.resurgence_den == 2);
}

TEST_CASE("stability schedule and decomposition checks") {
    // h = 2, m = 2: the first step is k = 4 with two factors (1,1), i.e. the
    // 6th symbolic power inside the product of two 2nd symbolic powers
    auto steps = stability_schedule(2, 2, 3);
    REQUIRE(steps.size() == 3);
    REQUIRE(steps[0].k == 4);
    REQUIRE(steps[0].n == 2);
    REQUIRE(steps[0].a == std::vector<std::uint32_t>{1, 1});
    REQUIRE(steps[1].k == 5);
    REQUIRE(steps[1].n == 3);
    REQUIRE(steps[1].a == std::vector<std::uint32_t>{1, 1, 0});
    REQUIRE(steps[2].a == std::vector<std::uint32_t>{1, 1, 0, 0});
    // bookkeeping identity: h*n + sum(a) = h*k - h
    for (const auto& st : steps) REQUIRE(2 * st.n + st.sum_a() == 2 * st.k - 2);

    REQUIRE_THROWS_AS(stability_schedule(2, 1, 1), invalid_argument_error);
    REQUIRE_THROWS_AS(stability_schedule(0, 2, 1), invalid_argument_error);

    // concrete verification on the squarefree ideal (F-pure in every
    // characteristic, so the decomposition containments hold)
    auto R = ring3();
    Ideal<F> I = edge_ideal3(R);
    Classification cls = classify(I);
    REQUIRE(verify_johnson_instance(I, {1, 1}, cls));     // 6th inside product of two 2nds
    REQUIRE(verify_johnson_instance(I, {0}, cls));        // 2nd inside the ideal itself
    REQUIRE(verify_johnson_instance(I, {1, 1, 0}, cls));  // k = 5 step
}

TEST_CASE("ideal fingerprints") {
    auto R = ring3();
    Ideal<F> I = edge_ideal3(R);
    // stable across generator order, sensitive to characteristic and content
    Ideal<F> J = mk(R, {"y*z", "x*y", "x*z"});
    REQUIRE(ideal_fingerprint(I) == ideal_fingerprint(J));
    REQUIRE(ideal_fingerprint(I).size() == 16);
    auto R2 = ring3(2);
    REQUIRE(ideal_fingerprint(I) != ideal_fingerprint(edge_ideal3(R2)));
    REQUIRE(ideal_fingerprint(I) != ideal_fingerprint(mk(R, {"x*y", "x*z"})));
}

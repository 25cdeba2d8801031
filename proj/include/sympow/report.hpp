#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sympow/parse.hpp"
#include "sympow/polynomial.hpp"

namespace sympow {

enum class Outcome { holds, fails, resource_limited };

inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        default: return "resource_limited";
    }
}

// Witness text for reports. Over the rationals, scale to a primitive integer
// form (clear denominators, divide out the content, positive lead) so the
// printed witness is canonical; prime-field coefficients already print via
// their symmetric representatives.
template <class F>
std::string witness_string(const Poly<F>& f) {
    return format_poly(f);
}

inline std::string witness_string(const Poly<Rationals>& f) {
    if (f.is_zero()) return format_poly(f);
    mpz_class den(1), num(0);
    for (const auto& t : f.terms()) {
        den = lcm(den, t.c.get_den());
        num = gcd(num, t.c.get_num());
    }
    mpq_class s(den, num);  // multiply by den, divide by the numerator content
    s.canonicalize();
    if (f.leading_coeff() * s < 0) s = -s;
    return format_poly(f.scale(s));
}

// Result of one containment question "is the a-th symbolic power inside the
// b-th ordinary power". On failure `witness` holds a generator of the
// symbolic power that is not a member of the ordinary power.
template <class F>
struct ContainmentReport {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Outcome outcome = Outcome::resource_limited;
    std::optional<Poly<F>> witness;
    std::string method;  // "monomial-lattice", "saturation", "criterion", "propagated"
    std::string detail;  // resource description when outcome is resource_limited
    std::int64_t elapsed_ms = 0;
};

}  // namespace sympow

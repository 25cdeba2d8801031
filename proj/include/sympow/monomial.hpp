#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "sympow/errors.hpp"

namespace sympow {

// Exponent vector in up to kMaxVars variables. Exponents are kept below 2^31;
// multiplication raises overflow_error instead of wrapping.
class Monomial {
public:
    static constexpr std::size_t kMaxVars = 8;
    static constexpr std::uint32_t kExpLimit = std::uint32_t(1) << 31;

    Monomial() = default;

    explicit Monomial(std::size_t nvars) : n_(check_nvars(nvars)) {}

    Monomial(std::initializer_list<std::uint32_t> exps) : n_(check_nvars(exps.size())) {
        std::size_t i = 0;
        for (auto v : exps) e_[i++] = v;
    }

    static Monomial from_vector(const std::vector<std::uint32_t>& exps) {
        Monomial m(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) m.e_[i] = exps[i];
        return m;
    }

    std::size_t nvars() const { return n_; }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, std::uint32_t v) { e_[i] = v; }

    bool is_one() const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i]) return false;
        return true;
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < n_; ++i) d += e_[i];
        return d;
    }

    std::int64_t weighted_degree(const std::vector<std::int64_t>& w) const {
        std::int64_t d = 0;
        for (std::size_t i = 0; i < n_; ++i) d += w[i] * std::int64_t(e_[i]);
        return d;
    }

    Monomial mul(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t s = std::uint64_t(e_[i]) + o.e_[i];
            if (s >= kExpLimit) throw overflow_error("monomial exponent exceeds 2^31");
            r.e_[i] = static_cast<std::uint32_t>(s);
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    // Requires o.divides(*this).
    Monomial divide(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] > o.e_[i] ? e_[i] : o.e_[i];
        return r;
    }

    Monomial gcd(const Monomial& o) const {
        Monomial r(n_);
        for (std::size_t i = 0; i < n_; ++i) r.e_[i] = e_[i] < o.e_[i] ? e_[i] : o.e_[i];
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const {
        if (n_ != o.n_) return false;
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return false;
        return true;
    }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    // Arbitrary total order for use as a map key (not a term order).
    bool operator<(const Monomial& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
        return false;
    }

private:
    static std::size_t check_nvars(std::size_t n) {
        if (n > kMaxVars) throw invalid_argument_error("too many variables (limit 8)");
        return n;
    }

    std::array<std::uint32_t, kMaxVars> e_{};
    std::size_t n_ = 0;
};

}  // namespace sympow

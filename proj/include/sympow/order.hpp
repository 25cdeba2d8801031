#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympow/errors.hpp"
#include "sympow/monomial.hpp"

namespace sympow {

// Monomial orders. All four kinds are multiplicative and have 1 as the unique
// minimal element (weights must be positive).
class TermOrder {
public:
    enum class Kind { grevlex, lex, elim_block, weighted };

    static TermOrder grevlex() { return TermOrder(Kind::grevlex); }
    static TermOrder lex() { return TermOrder(Kind::lex); }

    // Block order eliminating the first `block` variables: grevlex on the
    // leading block, ties broken by grevlex on the rest. Any monomial touching
    // the first block beats every monomial supported on the tail.
    static TermOrder elim_block(std::size_t block) {
        TermOrder t(Kind::elim_block);
        t.block_ = block;
        return t;
    }

    static TermOrder weighted(std::vector<std::int64_t> weights) {
        for (auto w : weights)
            if (w <= 0) throw invalid_argument_error("order weights must be positive");
        TermOrder t(Kind::weighted);
        t.weights_ = std::move(weights);
        return t;
    }

    Kind kind() const { return kind_; }
    std::size_t block() const { return block_; }
    const std::vector<std::int64_t>& weights() const { return weights_; }

    // -1, 0, +1 for a < b, a == b, a > b.
    int compare(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
            case Kind::grevlex:
                return cmp_grevlex(a, b, 0, a.nvars());
            case Kind::lex:
                for (std::size_t i = 0; i < a.nvars(); ++i)
                    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
                return 0;
            case Kind::elim_block: {
                int c = cmp_grevlex(a, b, 0, block_);
                if (c) return c;
                return cmp_grevlex(a, b, block_, a.nvars());
            }
            case Kind::weighted: {
                std::int64_t da = a.weighted_degree(weights_), db = b.weighted_degree(weights_);
                if (da != db) return da > db ? 1 : -1;
                return cmp_grevlex(a, b, 0, a.nvars());
            }
        }
        return 0;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    bool operator==(const TermOrder& o) const {
        return kind_ == o.kind_ && block_ == o.block_ && weights_ == o.weights_;
    }
    bool operator!=(const TermOrder& o) const { return !(*this == o); }

    // Stable text key (used to index cached Groebner bases).
    std::string key() const {
        switch (kind_) {
            case Kind::grevlex:
                return "grevlex";
            case Kind::lex:
                return "lex";
            case Kind::elim_block:
                return "elim" + std::to_string(block_);
            case Kind::weighted: {
                std::string s = "wt";
                for (auto w : weights_) s += ":" + std::to_string(w);
                return s;
            }
        }
        return "?";
    }

private:
    explicit TermOrder(Kind k) : kind_(k) {}

    // Graded reverse lexicographic on the index range [lo, hi):
    // higher total degree wins; on ties the smaller trailing exponent wins.
    static int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;) {
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }

    Kind kind_;
    std::size_t block_ = 0;
    std::vector<std::int64_t> weights_;
};

}  // namespace sympow

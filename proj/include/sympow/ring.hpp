#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "sympow/errors.hpp"
#include "sympow/field.hpp"

namespace sympow {

// Polynomial ring descriptor: a coefficient field plus named variables.
// Rings are compared by content (variable names and characteristic), so two
// independently built descriptors of k[x,y,z] are interchangeable.
template <class F>
class Ring {
public:
    Ring(F field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars)) {
        if (vars_.empty()) throw invalid_argument_error("ring needs at least one variable");
        if (vars_.size() > 8) throw invalid_argument_error("too many variables (limit 8)");
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            validate_name(vars_[i]);
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw invalid_argument_error("duplicate variable name " + vars_[i]);
        }
    }

    const F& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::string& var(std::size_t i) const { return vars_[i]; }

    // Index of a variable name, or npos.
    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return npos;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static void validate_name(const std::string& s) {
        if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
            throw invalid_argument_error("variable name must start with a letter: " + s);
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)))
                throw invalid_argument_error("variable name must be alphanumeric: " + s);
    }

    F field_;
    std::vector<std::string> vars_;
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> vars) {
    return std::make_shared<const Ring<F>>(std::move(field), std::move(vars));
}

template <class F>
bool ring_equal(const Ring<F>& a, const Ring<F>& b) {
    return a.vars() == b.vars() && a.field().characteristic() == b.field().characteristic();
}

template <class F>
void require_same_ring(const Ring<F>& a, const Ring<F>& b) {
    if (!ring_equal(a, b)) throw invalid_argument_error("operands live in different rings");
}

// A fresh variable name not present in the ring (used for elimination tricks).
template <class F>
std::string fresh_var_name(const Ring<F>& r, const std::string& stem) {
    if (r.index_of(stem) == Ring<F>::npos) return stem;
    for (int i = 0;; ++i) {
        std::string cand = stem + std::to_string(i);
        if (r.index_of(cand) == Ring<F>::npos) return cand;
    }
}

}  // namespace sympow

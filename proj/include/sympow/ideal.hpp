#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sympow/groebner.hpp"
#include "sympow/parse.hpp"

namespace sympow {

// An ideal given by generators. Ideals are immutable values; computed Groebner
// bases are cached per term order behind an insert-once synchronized map that
// copies of the ideal share.
template <class F>
class Ideal {
public:
    Ideal() = default;

    Ideal(RingPtr<F> ring, std::vector<Poly<F>> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& f : gens) {
            if (f.is_zero()) continue;
            require_same_ring(*ring_, *f.ring());
            bool dup = false;
            for (const auto& g : gens_)
                if (g.equals(f)) {
                    dup = true;
                    break;
                }
            if (!dup) gens_.push_back(std::move(f));
        }
    }

    static Ideal from_strings(const RingPtr<F>& ring, const std::vector<std::string>& texts) {
        std::vector<Poly<F>> gens;
        gens.reserve(texts.size());
        for (const auto& t : texts) gens.push_back(parse_poly(ring, t));
        return Ideal(ring, std::move(gens));
    }

    const RingPtr<F>& ring() const { return ring_; }
    const std::vector<Poly<F>>& gens() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }

    bool is_monomial() const {
        for (const auto& g : gens_)
            if (!g.is_term()) return false;
        return true;
    }

    std::shared_ptr<const GroebnerBasis<F>> groebner(const TermOrder& ord = TermOrder::grevlex(),
                                                     const ResourceLimits& lim = {}) const {
        std::string key = ord.key();
        {
            std::lock_guard<std::mutex> lk(cache_->mtx);
            auto it = cache_->map.find(key);
            if (it != cache_->map.end()) return it->second;
        }
        auto gb = std::make_shared<const GroebnerBasis<F>>(buchberger(gens_, ord, lim));
        std::lock_guard<std::mutex> lk(cache_->mtx);
        auto [it, inserted] = cache_->map.emplace(std::move(key), std::move(gb));
        return it->second;
    }

private:
    struct Cache {
        std::mutex mtx;
        std::map<std::string, std::shared_ptr<const GroebnerBasis<F>>> map;
    };

    RingPtr<F> ring_;
    std::vector<Poly<F>> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <class F>
bool ideal_member(const Poly<F>& f, const Ideal<F>& I, const ResourceLimits& lim = {}) {
    if (f.is_zero()) return true;
    if (I.is_zero_ideal()) return false;
    require_same_ring(*f.ring(), *I.ring());
    auto gb = I.groebner(TermOrder::grevlex(), lim);
    return normal_form(f, *gb, lim).is_zero();
}

// True iff J is contained in I.
template <class F>
bool ideal_contains(const Ideal<F>& I, const Ideal<F>& J, const ResourceLimits& lim = {}) {
    for (const auto& g : J.gens())
        if (!ideal_member(g, I, lim)) return false;
    return true;
}

template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& J, const ResourceLimits& lim = {}) {
    return ideal_contains(I, J, lim) && ideal_contains(J, I, lim);
}

// I ∩ k[remaining variables], computed with a block order that puts the
// dropped variables in the leading block. The result lives in the smaller
// ring; remaining variables keep their relative order.
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<std::string>& drop, const ResourceLimits& lim = {}) {
    const Ring<F>& R = *I.ring();
    std::vector<std::size_t> drop_idx;
    for (const auto& name : drop) {
        std::size_t i = R.index_of(name);
        if (i == Ring<F>::npos) throw invalid_argument_error("eliminate: unknown variable " + name);
        drop_idx.push_back(i);
    }
    std::vector<bool> dropped(R.nvars(), false);
    for (auto i : drop_idx) dropped[i] = true;

    std::vector<std::string> perm_vars, keep_vars;
    for (auto i : drop_idx) perm_vars.push_back(R.var(i));
    for (std::size_t i = 0; i < R.nvars(); ++i)
        if (!dropped[i]) {
            perm_vars.push_back(R.var(i));
            keep_vars.push_back(R.var(i));
        }
    if (keep_vars.empty()) throw invalid_argument_error("eliminate: cannot drop every variable");

    RingPtr<F> P = make_ring(R.field(), perm_vars);
    TermOrder ord = TermOrder::elim_block(drop_idx.size());
    std::vector<std::size_t> to_perm(R.nvars());
    for (std::size_t i = 0; i < R.nvars(); ++i) to_perm[i] = P->index_of(R.var(i));

    std::vector<Poly<F>> mapped;
    mapped.reserve(I.gens().size());
    for (const auto& g : I.gens()) mapped.push_back(map_vars(g, P, to_perm, ord));

    GroebnerBasis<F> gb = buchberger(mapped, ord, lim);

    RingPtr<F> K = make_ring(R.field(), keep_vars);
    std::vector<std::size_t> to_keep(P->nvars(), Ring<F>::npos);
    for (std::size_t i = 0; i < P->nvars(); ++i) to_keep[i] = K->index_of(P->var(i));

    std::vector<Poly<F>> kept;
    for (const auto& g : gb.elems) {
        bool pure = true;
        for (const auto& t : g.terms())
            for (std::size_t i = 0; i < drop_idx.size() && pure; ++i)
                if (t.m[i]) pure = false;
        if (pure) kept.push_back(map_vars(g, K, to_keep));
    }
    return Ideal<F>(K, std::move(kept));
}

}  // namespace sympow

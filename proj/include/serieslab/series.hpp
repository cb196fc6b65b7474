#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "serieslab/rational.hpp"

namespace serieslab {

using TermFn = std::function<Rational(uint64_t)>;

// A lazy 1-indexed stream of exact rational terms. The term function must be
// pure. When a term bound is declared, every evaluation checks |a_n| against it.
class Series {
public:
    Series(std::string name, TermFn term, std::optional<Rational> term_bound = std::nullopt)
        : name_(std::move(name)), term_(std::move(term)), bound_(std::move(term_bound)) {}

    Rational term(uint64_t n) const {
        Rational t = term_(n);
        if (bound_ && t.abs() > *bound_) {
            throw AuditError("series \"" + name_ + "\": |a_" + std::to_string(n) + "| = " +
                             t.abs().str() + " exceeds declared bound " + bound_->str());
        }
        return t;
    }

    const std::string& name() const { return name_; }
    const std::optional<Rational>& term_bound() const { return bound_; }

private:
    std::string name_;
    TermFn term_;
    std::optional<Rational> bound_;
};

// 1 - 1/2 + 1/3 - 1/4 + ...  (first term positive)
Series alternating_harmonic();

// 1/n, all nonnegative (the c_n of random-sign experiments)
Series harmonic_terms();

// (-1)^(n+1): unit magnitudes, alternating signs
Series alternating_unit();

// (-1)^(n+1) / ceil(log2(n+1)): conditionally convergent, slowly decaying
Series alternating_log2();

// floor(2^bits / sqrt(n)) / 2^bits: dyadic approximation of 1/sqrt(n), nonnegative
Series inv_sqrt_dyadic(unsigned bits = 24);

Series zero_series();

// Parses a CLI series spec: altharm | harmonic | altunit | altlog2 | invsqrt | zero
Series parse_series(const std::string& spec);

} // namespace serieslab

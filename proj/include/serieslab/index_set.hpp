#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "serieslab/errors.hpp"

namespace serieslab {

inline constexpr uint64_t kDefaultScanBound = 10'000'000;

// A subset of the positive integers, given by a horizon-independent
// description. Membership, ordered enumeration (1-based) and rank counting
// are the primitive queries; enumeration of scan-backed sets aborts with
// PossiblyFiniteError once the scan bound is exhausted.
class IndexSet {
public:
    struct Impl;

    static IndexSet naturals();
    static IndexSet evens();
    static IndexSet odds();
    static IndexSet empty();
    static IndexSet finite(std::vector<uint64_t> elems);
    static IndexSet residue(uint64_t modulus, std::vector<uint64_t> residues);
    static IndexSet arithmetic(uint64_t first, uint64_t step); // {first + k*step : k >= 0}
    static IndexSet from_enumerator(std::string desc, std::function<uint64_t(uint64_t)> nth,
                                    uint64_t scan_bound = kDefaultScanBound);
    static IndexSet from_predicate(std::string desc, std::function<bool(uint64_t)> member,
                                   uint64_t scan_bound = kDefaultScanBound);

    bool contains(uint64_t n) const;
    // k-th smallest member, k >= 1.
    uint64_t nth(uint64_t k) const;
    // |[1, m] ∩ A|
    uint64_t rank(uint64_t m) const;
    IndexSet complement() const;
    const std::string& description() const;

    // Calls f(n) for each member n in [lo, hi], ascending.
    template <class F>
    void for_each_in(uint64_t lo, uint64_t hi, F&& f) const {
        for (uint64_t n = lo; n <= hi && n != 0; ++n) {
            if (contains(n)) f(n);
            if (n == UINT64_MAX) break;
        }
    }

    explicit IndexSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    const std::shared_ptr<const Impl>& impl() const { return impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

// Parses a CLI set literal:
//   evens | odds | naturals | all | empty | finite:1,5,9 | residue:M:r1,r2 |
//   arith:a,d | file:PATH
IndexSet parse_set(const std::string& spec);

// An injective self-map of the positive integers. Evaluations are memoized.
// Injectivity (and, for claimed permutations, coverage) is audited lazily on
// the ranges tests actually use.
class Injection {
public:
    using EvalFn = std::function<uint64_t(uint64_t)>;

    Injection(std::string desc, EvalFn eval, bool permutation_claim, EvalFn inverse = nullptr);
    static Injection identity();

    uint64_t operator()(uint64_t n) const;
    bool claims_permutation() const { return permutation_claim_; }
    bool has_inverse() const { return static_cast<bool>(inverse_); }
    uint64_t inverse(uint64_t n) const;
    const std::string& description() const { return desc_; }

    // Evaluates f on [1, horizon]; throws AuditError naming a colliding pair.
    void audit_injective(uint64_t horizon) const;
    // For claimed permutations: image of [1, horizon] must cover [1, h_check].
    void audit_permutation_covers(uint64_t h_check, uint64_t horizon) const;

private:
    struct Memo;
    std::string desc_;
    EvalFn eval_;
    EvalFn inverse_;
    bool permutation_claim_;
    std::shared_ptr<Memo> memo_;
};

struct SplitsReport {
    std::vector<uint64_t> in_witnesses;  // elements of B ∩ A
    std::vector<uint64_t> out_witnesses; // elements of B \ A
    uint64_t requested = 0;
    uint64_t horizon = 0;
    bool in_deficient() const { return in_witnesses.size() < requested; }
    bool out_deficient() const { return out_witnesses.size() < requested; }
    bool splits_at_horizon() const { return !in_deficient() && !out_deficient(); }
};

// First min_witnesses elements of B∩A and B∖A found below horizon.
SplitsReport splits(const IndexSet& A, const IndexSet& B, uint64_t min_witnesses, uint64_t horizon);

struct GapViolation {
    uint64_t gap_lo = 0, gap_hi = 0;     // consecutive elements of B; gap is the open interval
    std::vector<uint64_t> members;       // elements of A strictly between them (>= 2)
};

struct SparserReport {
    std::vector<GapViolation> violations;
    uint64_t gaps_checked = 0;
    uint64_t horizon = 0;
    uint64_t allowed_exceptions = 0;
    bool holds_at_horizon() const { return violations.size() <= allowed_exceptions; }
};

// "A sparser than B": no more than one element of A in any open gap between
// consecutive elements of B, up to allowed_exceptions violations.
SparserReport sparser_than(const IndexSet& A, const IndexSet& B, uint64_t allowed_exceptions,
                           uint64_t horizon);

// {e_B(1)+1, e_B(2)+2, e_B(3)+3, ...}
IndexSet diagonal_shift(const IndexSet& B0);

struct InversionReport {
    std::vector<std::pair<uint64_t, uint64_t>> inversions; // x < y in A with f(x) > f(y)
    uint64_t horizon = 0;
    // Preserved once pairs touching [1, exception_prefix] are discarded.
    bool preserved(uint64_t exception_prefix = 0) const {
        for (const auto& [x, y] : inversions)
            if (x > exception_prefix) return false;
        return true;
    }
};

InversionReport jumbles(const Injection& f, const IndexSet& A, uint64_t horizon);

// Requires A to have >= witnesses members and co-members within [1, horizon].
void audit_infinite_coinfinite(const IndexSet& A, uint64_t horizon, uint64_t witnesses,
                               const std::string& role);

} // namespace serieslab

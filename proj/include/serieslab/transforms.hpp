#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "serieslab/index_set.hpp"
#include "serieslab/series.hpp"

namespace serieslab {

// Default window for "neither finite nor co-finite" audits of transform inputs.
inline constexpr uint64_t kAuditHorizon = 100'000;
inline constexpr uint64_t kAuditWitnesses = 8;

// a_n = b_{rank(B,n)} when n ∈ B, else 0: the same nonzero terms in the same
// order, with zeros inserted off B.
Series zero_pad(const Series& b, const IndexSet& B);

// term(k) = a.term(e_A(k)). With allow_finite, indices past |A| yield 0.
Series subseries(const Series& a, const IndexSet& A, bool allow_finite = false);

// The permutation mapping the k-th element of A to the k-th element of B and
// the k-th element of N∖A to the k-th element of N∖B.
class Shuffle {
public:
    Shuffle(IndexSet a, IndexSet b);

    uint64_t operator()(uint64_t n) const;
    Shuffle inverse() const { return Shuffle(b_, a_); }
    Injection as_injection() const;

    const IndexSet& a() const { return a_; }
    const IndexSet& b() const { return b_; }

    // Requires both A and B to look infinite and co-infinite below the horizon.
    void audit(uint64_t horizon = kAuditHorizon, uint64_t witnesses = kAuditWitnesses) const;

private:
    IndexSet a_, b_, ca_, cb_;
};

Shuffle make_shuffle(const IndexSet& A, const IndexSet& B);

// Inverse of the shuffle s_{A, N∖B}: writes the subseries over A onto N∖B and
// the leftover indices onto B. A and B must be neither finite nor co-finite.
Injection p_from_set(const IndexSet& A, const IndexSet& B, uint64_t audit_horizon = kAuditHorizon);

// For n strictly between consecutive elements b_l < n < b_{l+1} of B, the image
// p_{A,B}(n) is e_A(n - l). Returns nullopt when n is in B or precedes it.
std::optional<uint64_t> p_from_set_gap_formula(const IndexSet& A, const IndexSet& B, uint64_t n);

// Membership on the block (b_n, b_{n+1}]: take A-members when n ∈ S, the
// non-A members when n ∉ S. Indices up to b_1 are excluded.
IndexSet osc_set(const IndexSet& A, const IndexSet& B, const IndexSet& S);

// Permutation from an injection whose image misses exactly k_f values: the
// missing values are placed first, then f shifted by k_f.
Injection p_cofinite(const Injection& f, uint64_t k_f, uint64_t audit_horizon = kAuditHorizon);

// Permutation from an injection with infinite co-image: image of f goes onto
// N∖B in order, the values missing from the image are stretched onto B.
// The co-image of f is sieved over [1, image_horizon]; queries needing more
// of it raise HorizonError.
Injection p_sparse(const Injection& f, const IndexSet& B, uint64_t image_horizon = kAuditHorizon);

// term(n) = a.term(f(n))
Series apply_injection(const Series& a, const Injection& f);

} // namespace serieslab

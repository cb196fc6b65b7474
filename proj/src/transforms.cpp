#include "serieslab/transforms.hpp"

#include <algorithm>

namespace serieslab {

Series zero_pad(const Series& b, const IndexSet& B) {
    return Series(
        "zero_pad(" + b.name() + "," + B.description() + ")",
        [b, B](uint64_t n) {
            if (!B.contains(n)) return Rational(0);
            return b.term(B.rank(n));
        },
        b.term_bound());
}

Series subseries(const Series& a, const IndexSet& A, bool allow_finite) {
    return Series(
        "sub(" + a.name() + "," + A.description() + ")",
        [a, A, allow_finite](uint64_t k) {
            if (allow_finite) {
                try {
                    return a.term(A.nth(k));
                } catch (const PossiblyFiniteError&) {
                    return Rational(0);
                }
            }
            return a.term(A.nth(k));
        },
        a.term_bound());
}

Shuffle::Shuffle(IndexSet a, IndexSet b)
    : a_(std::move(a)), b_(std::move(b)), ca_(a_.complement()), cb_(b_.complement()) {}

uint64_t Shuffle::operator()(uint64_t n) const {
    if (n == 0) throw Error("shuffle: domain is 1-based");
    if (a_.contains(n)) return b_.nth(a_.rank(n));
    return cb_.nth(ca_.rank(n));
}

Injection Shuffle::as_injection() const {
    Shuffle self = *this;
    Shuffle inv = inverse();
    return Injection(
        "s_{" + a_.description() + "," + b_.description() + "}",
        [self](uint64_t n) { return self(n); },
        /*permutation_claim=*/true,
        [inv](uint64_t n) { return inv(n); });
}

void Shuffle::audit(uint64_t horizon, uint64_t witnesses) const {
    audit_infinite_coinfinite(a_, horizon, witnesses, "shuffle source");
    audit_infinite_coinfinite(b_, horizon, witnesses, "shuffle target");
}

Shuffle make_shuffle(const IndexSet& A, const IndexSet& B) { return Shuffle(A, B); }

Injection p_from_set(const IndexSet& A, const IndexSet& B, uint64_t audit_horizon) {
    audit_infinite_coinfinite(A, audit_horizon, kAuditWitnesses, "p_{A,B} source A");
    audit_infinite_coinfinite(B, audit_horizon, kAuditWitnesses, "p_{A,B} pattern B");
    // inverse of s_{A, N∖B} is the shuffle s_{N∖B, A}
    Shuffle s(B.complement(), A);
    Injection inj = s.as_injection();
    return Injection("p_{" + A.description() + "," + B.description() + "}",
                     [inj](uint64_t n) { return inj(n); },
                     /*permutation_claim=*/true,
                     [inj](uint64_t n) { return inj.inverse(n); });
}

std::optional<uint64_t> p_from_set_gap_formula(const IndexSet& A, const IndexSet& B, uint64_t n) {
    if (n == 0 || B.contains(n)) return std::nullopt;
    uint64_t l = B.rank(n);
    if (l == 0) return std::nullopt; // n precedes b_1
    return A.nth(n - l);
}

IndexSet osc_set(const IndexSet& A, const IndexSet& B, const IndexSet& S) {
    std::string desc = "C(" + A.description() + ";" + B.description() + ";" + S.description() + ")";
    return IndexSet::from_predicate(desc, [A, B, S](uint64_t m) {
        uint64_t block = B.rank(m - 1); // index n with b_n < m <= b_{n+1}
        if (block == 0) return false;   // m <= b_1
        return S.contains(block) ? A.contains(m) : !A.contains(m);
    });
}

Injection p_cofinite(const Injection& f, uint64_t k_f, uint64_t audit_horizon) {
    std::vector<bool> hit(audit_horizon + 1, false);
    for (uint64_t n = 1; n <= audit_horizon; ++n) {
        uint64_t v = f(n);
        if (v <= audit_horizon) hit[v] = true;
    }
    std::vector<uint64_t> missing;
    for (uint64_t v = 1; v <= audit_horizon; ++v)
        if (!hit[v]) missing.push_back(v);
    if (missing.size() > k_f) {
        throw AuditError("p_cofinite(" + f.description() + "): declared k_f = " +
                         std::to_string(k_f) + " but " + std::to_string(missing.size()) +
                         " values are missing below " + std::to_string(audit_horizon) +
                         " (first: " + std::to_string(missing.front()) + ")");
    }
    auto missing_ptr = std::make_shared<std::vector<uint64_t>>(std::move(missing));
    Injection base = f;
    return Injection(
        "p_" + f.description(),
        [base, k_f, missing_ptr](uint64_t n) {
            if (n <= k_f) {
                if (n > missing_ptr->size())
                    throw HorizonError("p_cofinite: missing value #" + std::to_string(n) +
                                       " lies beyond the audited horizon");
                return (*missing_ptr)[n - 1];
            }
            return base(n - k_f);
        },
        /*permutation_claim=*/true);
}

Injection p_sparse(const Injection& f, const IndexSet& B, uint64_t image_horizon) {
    std::vector<bool> hit(image_horizon + 1, false);
    for (uint64_t n = 1; n <= image_horizon; ++n) {
        uint64_t v = f(n);
        if (v <= image_horizon) hit[v] = true;
    }
    auto co_image = std::make_shared<std::vector<uint64_t>>();
    for (uint64_t v = 1; v <= image_horizon; ++v)
        if (!hit[v]) co_image->push_back(v);
    IndexSet compB = B.complement();
    Injection base = f;
    uint64_t ih = image_horizon;
    return Injection(
        "p_{" + f.description() + "," + B.description() + "}",
        [base, B, compB, co_image, ih](uint64_t n) {
            if (B.contains(n)) {
                uint64_t k = B.rank(n);
                if (k > co_image->size())
                    throw HorizonError("p_sparse: co-image element #" + std::to_string(k) +
                                       " lies beyond the sieved horizon " + std::to_string(ih));
                return (*co_image)[k - 1];
            }
            return base(compB.rank(n));
        },
        /*permutation_claim=*/true);
}

Series apply_injection(const Series& a, const Injection& f) {
    return Series(
        a.name() + "∘" + f.description(),
        [a, f](uint64_t n) { return a.term(f(n)); },
        a.term_bound());
}

} // namespace serieslab

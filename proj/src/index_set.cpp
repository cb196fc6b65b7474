#include "serieslab/index_set.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>

namespace serieslab {

struct IndexSet::Impl : std::enable_shared_from_this<IndexSet::Impl> {
    virtual ~Impl() = default;
    virtual bool contains(uint64_t n) const = 0;
    virtual uint64_t nth(uint64_t k) const = 0;
    virtual uint64_t rank(uint64_t m) const = 0;
    // Default: generic scan-backed complement. Structured kinds override.
    virtual std::shared_ptr<const Impl> complement() const;
    virtual const std::string& describe() const = 0;
};

namespace {

using ImplPtr = std::shared_ptr<const IndexSet::Impl>;

// Lazily grown, mutex-guarded enumeration of a membership predicate. Shared
// between consumers; observable behavior is that of a pure function.
class ScanCache {
public:
    explicit ScanCache(uint64_t scan_bound) : bound_(scan_bound) {}

    uint64_t nth(uint64_t k, const std::function<bool(uint64_t)>& member,
                 const std::string& desc) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (elems_.size() < k) {
            if (scanned_ >= bound_) {
                throw PossiblyFiniteError("set " + desc + ": scan bound " + std::to_string(bound_) +
                                          " exhausted with only " + std::to_string(elems_.size()) +
                                          " elements found (possibly finite)");
            }
            uint64_t n = scanned_ + 1;
            if (member(n)) elems_.push_back(n);
            scanned_ = n;
        }
        return elems_[k - 1];
    }

    // rank is a bounded scan, so it may pass the enumeration bound.
    uint64_t rank(uint64_t m, const std::function<bool(uint64_t)>& member) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (scanned_ < m) {
            uint64_t n = scanned_ + 1;
            if (member(n)) elems_.push_back(n);
            scanned_ = n;
        }
        auto it = std::upper_bound(elems_.begin(), elems_.end(), m);
        return static_cast<uint64_t>(it - elems_.begin());
    }

private:
    uint64_t bound_;
    mutable std::mutex mu_;
    mutable std::vector<uint64_t> elems_;
    mutable uint64_t scanned_ = 0;
};

class FiniteImpl : public IndexSet::Impl {
public:
    explicit FiniteImpl(std::vector<uint64_t> elems) : elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        if (!elems_.empty() && elems_.front() == 0)
            throw Error("index sets contain positive integers only");
        std::ostringstream os;
        os << "finite:{";
        for (size_t i = 0; i < elems_.size(); ++i) os << (i ? "," : "") << elems_[i];
        os << "}";
        desc_ = os.str();
    }

    bool contains(uint64_t n) const override {
        return std::binary_search(elems_.begin(), elems_.end(), n);
    }
    uint64_t nth(uint64_t k) const override {
        if (k == 0 || k > elems_.size())
            throw PossiblyFiniteError("set " + desc_ + " has only " +
                                      std::to_string(elems_.size()) + " elements, asked for #" +
                                      std::to_string(k));
        return elems_[k - 1];
    }
    uint64_t rank(uint64_t m) const override {
        return static_cast<uint64_t>(
            std::upper_bound(elems_.begin(), elems_.end(), m) - elems_.begin());
    }
    const std::string& describe() const override { return desc_; }

private:
    std::vector<uint64_t> elems_;
    std::string desc_;
};

class ResidueImpl : public IndexSet::Impl {
public:
    ResidueImpl(uint64_t modulus, std::vector<uint64_t> residues)
        : mod_(modulus), residues_(std::move(residues)) {
        if (mod_ == 0) throw Error("residue set: zero modulus");
        std::sort(residues_.begin(), residues_.end());
        residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
        for (uint64_t r : residues_)
            if (r >= mod_) throw Error("residue set: residue >= modulus");
        if (mod_ == 2 && residues_ == std::vector<uint64_t>{0}) desc_ = "evens";
        else if (mod_ == 2 && residues_ == std::vector<uint64_t>{1}) desc_ = "odds";
        else if (mod_ == 1 && residues_ == std::vector<uint64_t>{0}) desc_ = "naturals";
        else {
            std::ostringstream os;
            os << "residue:" << mod_ << ":{";
            for (size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
            os << "}";
            desc_ = os.str();
        }
    }

    bool contains(uint64_t n) const override {
        return n >= 1 && std::binary_search(residues_.begin(), residues_.end(), n % mod_);
    }

    // Members are q*mod + r (r in residues), ascending per period; the value 0
    // (q=0, r=0) is not a member.
    uint64_t nth(uint64_t k) const override {
        if (residues_.empty())
            throw PossiblyFiniteError("set " + desc_ + " is empty, asked for #" + std::to_string(k));
        bool zero_lost = residues_.front() == 0;
        uint64_t idx = k - 1 + (zero_lost ? 1 : 0);
        uint64_t q = idx / residues_.size();
        uint64_t r = residues_[idx % residues_.size()];
        return q * mod_ + r;
    }

    uint64_t rank(uint64_t m) const override {
        if (residues_.empty() || m == 0) return 0;
        uint64_t q = m / mod_;
        uint64_t rem = m % mod_;
        uint64_t cnt = q * residues_.size();
        cnt += static_cast<uint64_t>(
            std::upper_bound(residues_.begin(), residues_.end(), rem) - residues_.begin());
        if (residues_.front() == 0) cnt -= 1;
        return cnt;
    }

    std::shared_ptr<const Impl> complement() const override {
        std::vector<uint64_t> co;
        size_t j = 0;
        for (uint64_t r = 0; r < mod_; ++r) {
            if (j < residues_.size() && residues_[j] == r) { ++j; continue; }
            co.push_back(r);
        }
        return std::make_shared<ResidueImpl>(mod_, std::move(co));
    }

    const std::string& describe() const override { return desc_; }

private:
    uint64_t mod_;
    std::vector<uint64_t> residues_;
    std::string desc_;
};

class ArithImpl : public IndexSet::Impl {
public:
    ArithImpl(uint64_t first, uint64_t step) : a_(first), d_(step) {
        if (a_ == 0) throw Error("arith set: first element must be >= 1");
        if (d_ == 0) throw Error("arith set: zero step");
        desc_ = "arith:" + std::to_string(a_) + "+" + std::to_string(d_) + "k";
    }
    bool contains(uint64_t n) const override { return n >= a_ && (n - a_) % d_ == 0; }
    uint64_t nth(uint64_t k) const override { return a_ + (k - 1) * d_; }
    uint64_t rank(uint64_t m) const override { return m < a_ ? 0 : (m - a_) / d_ + 1; }
    const std::string& describe() const override { return desc_; }

private:
    uint64_t a_, d_;
    std::string desc_;
};

class PredicateImpl : public IndexSet::Impl {
public:
    PredicateImpl(std::string desc, std::function<bool(uint64_t)> member, uint64_t scan_bound)
        : desc_(std::move(desc)), member_(std::move(member)), cache_(scan_bound) {}

    bool contains(uint64_t n) const override { return n >= 1 && member_(n); }
    uint64_t nth(uint64_t k) const override { return cache_.nth(k, member_, desc_); }
    uint64_t rank(uint64_t m) const override { return cache_.rank(m, member_); }
    const std::string& describe() const override { return desc_; }

private:
    std::string desc_;
    std::function<bool(uint64_t)> member_;
    ScanCache cache_;
};

class ComplementImpl : public IndexSet::Impl {
public:
    ComplementImpl(ImplPtr base, uint64_t scan_bound)
        : base_(std::move(base)),
          desc_("compl(" + base_->describe() + ")"),
          cache_(scan_bound) {}

    bool contains(uint64_t n) const override { return n >= 1 && !base_->contains(n); }
    uint64_t nth(uint64_t k) const override {
        return cache_.nth(k, [this](uint64_t n) { return !base_->contains(n); }, desc_);
    }
    uint64_t rank(uint64_t m) const override { return m - base_->rank(m); }
    std::shared_ptr<const Impl> complement() const override { return base_; }
    const std::string& describe() const override { return desc_; }

private:
    ImplPtr base_;
    std::string desc_;
    ScanCache cache_;
};

class EnumeratorImpl : public IndexSet::Impl {
public:
    EnumeratorImpl(std::string desc, std::function<uint64_t(uint64_t)> nth_fn, uint64_t scan_bound)
        : desc_(std::move(desc)), nth_fn_(std::move(nth_fn)), bound_(scan_bound) {}

    uint64_t nth(uint64_t k) const override {
        std::lock_guard<std::mutex> lock(mu_);
        grow_to(k);
        return elems_[k - 1];
    }

    bool contains(uint64_t n) const override {
        if (n == 0) return false;
        std::lock_guard<std::mutex> lock(mu_);
        // strictly increasing: grow until the enumeration reaches n
        while (elems_.empty() || elems_.back() < n) grow_to(elems_.size() + 1);
        return std::binary_search(elems_.begin(), elems_.end(), n);
    }

    uint64_t rank(uint64_t m) const override {
        if (m == 0) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        while (elems_.empty() || elems_.back() <= m) grow_to(elems_.size() + 1);
        auto it = std::upper_bound(elems_.begin(), elems_.end(), m);
        return static_cast<uint64_t>(it - elems_.begin());
    }

    const std::string& describe() const override { return desc_; }

private:
    void grow_to(uint64_t k) const {
        while (elems_.size() < k) {
            uint64_t next_idx = elems_.size() + 1;
            if (next_idx > bound_)
                throw PossiblyFiniteError("set " + desc_ + ": enumeration bound " +
                                          std::to_string(bound_) + " exhausted");
            uint64_t v = nth_fn_(next_idx);
            if (v == 0 || (!elems_.empty() && v <= elems_.back()))
                throw AuditError("set " + desc_ + ": enumerator not strictly increasing at k=" +
                                 std::to_string(next_idx));
            elems_.push_back(v);
        }
    }

    std::string desc_;
    std::function<uint64_t(uint64_t)> nth_fn_;
    uint64_t bound_;
    mutable std::mutex mu_;
    mutable std::vector<uint64_t> elems_;
};

} // namespace

std::shared_ptr<const IndexSet::Impl> IndexSet::Impl::complement() const {
    return std::make_shared<ComplementImpl>(shared_from_this(), kDefaultScanBound);
}

// --- IndexSet ---------------------------------------------------------------

IndexSet IndexSet::naturals() {
    return IndexSet(std::make_shared<ResidueImpl>(1, std::vector<uint64_t>{0}));
}
IndexSet IndexSet::evens() {
    return IndexSet(std::make_shared<ResidueImpl>(2, std::vector<uint64_t>{0}));
}
IndexSet IndexSet::odds() {
    return IndexSet(std::make_shared<ResidueImpl>(2, std::vector<uint64_t>{1}));
}
IndexSet IndexSet::empty() { return finite({}); }

IndexSet IndexSet::finite(std::vector<uint64_t> elems) {
    return IndexSet(std::make_shared<FiniteImpl>(std::move(elems)));
}

IndexSet IndexSet::residue(uint64_t modulus, std::vector<uint64_t> residues) {
    return IndexSet(std::make_shared<ResidueImpl>(modulus, std::move(residues)));
}

IndexSet IndexSet::arithmetic(uint64_t first, uint64_t step) {
    return IndexSet(std::make_shared<ArithImpl>(first, step));
}

IndexSet IndexSet::from_enumerator(std::string desc, std::function<uint64_t(uint64_t)> nth,
                                   uint64_t scan_bound) {
    return IndexSet(std::make_shared<EnumeratorImpl>(std::move(desc), std::move(nth), scan_bound));
}

IndexSet IndexSet::from_predicate(std::string desc, std::function<bool(uint64_t)> member,
                                  uint64_t scan_bound) {
    return IndexSet(std::make_shared<PredicateImpl>(std::move(desc), std::move(member), scan_bound));
}

bool IndexSet::contains(uint64_t n) const { return n >= 1 && impl_->contains(n); }

uint64_t IndexSet::nth(uint64_t k) const {
    if (k == 0) throw Error("nth: k is 1-based");
    return impl_->nth(k);
}

uint64_t IndexSet::rank(uint64_t m) const { return m == 0 ? 0 : impl_->rank(m); }

IndexSet IndexSet::complement() const { return IndexSet(impl_->complement()); }

const std::string& IndexSet::description() const { return impl_->describe(); }

// --- combinatorial predicates -------------------------------------------------

SplitsReport splits(const IndexSet& A, const IndexSet& B, uint64_t min_witnesses,
                    uint64_t horizon) {
    if (min_witnesses == 0) throw Error("splits: min_witnesses must be >= 1");
    SplitsReport rep;
    rep.requested = min_witnesses;
    rep.horizon = horizon;
    for (uint64_t n = 1; n <= horizon; ++n) {
        if (!B.contains(n)) continue;
        if (A.contains(n)) {
            if (rep.in_witnesses.size() < min_witnesses) rep.in_witnesses.push_back(n);
        } else {
            if (rep.out_witnesses.size() < min_witnesses) rep.out_witnesses.push_back(n);
        }
        if (rep.in_witnesses.size() >= min_witnesses && rep.out_witnesses.size() >= min_witnesses)
            break;
    }
    return rep;
}

SparserReport sparser_than(const IndexSet& A, const IndexSet& B, uint64_t allowed_exceptions,
                           uint64_t horizon) {
    SparserReport rep;
    rep.horizon = horizon;
    rep.allowed_exceptions = allowed_exceptions;
    std::optional<uint64_t> prev;
    uint64_t b_count = 0;
    for (uint64_t n = 1; n <= horizon; ++n) {
        if (!B.contains(n)) continue;
        ++b_count;
        if (prev) {
            ++rep.gaps_checked;
            std::vector<uint64_t> members;
            for (uint64_t m = *prev + 1; m < n; ++m)
                if (A.contains(m)) members.push_back(m);
            if (members.size() >= 2)
                rep.violations.push_back(GapViolation{*prev, n, std::move(members)});
        }
        prev = n;
    }
    if (b_count < 2)
        throw AuditError("sparser_than: B (" + B.description() +
                         ") has fewer than 2 elements below horizon " + std::to_string(horizon));
    return rep;
}

IndexSet diagonal_shift(const IndexSet& B0) {
    return IndexSet::from_enumerator(
        "diag(" + B0.description() + ")",
        [B0](uint64_t i) { return B0.nth(i) + i; });
}

InversionReport jumbles(const Injection& f, const IndexSet& A, uint64_t horizon) {
    InversionReport rep;
    rep.horizon = horizon;
    std::vector<uint64_t> members;
    A.for_each_in(1, horizon, [&](uint64_t n) { members.push_back(n); });
    std::vector<uint64_t> images(members.size());
    for (size_t i = 0; i < members.size(); ++i) images[i] = f(members[i]);
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (images[i] > images[j]) rep.inversions.emplace_back(members[i], members[j]);
    return rep;
}

void audit_infinite_coinfinite(const IndexSet& A, uint64_t horizon, uint64_t witnesses,
                               const std::string& role) {
    uint64_t in = 0, out = 0;
    for (uint64_t n = 1; n <= horizon && (in < witnesses || out < witnesses); ++n) {
        if (A.contains(n)) ++in;
        else ++out;
    }
    if (in < witnesses)
        throw AuditError(role + " (" + A.description() + "): only " + std::to_string(in) +
                         " members below " + std::to_string(horizon) + " (looks finite)");
    if (out < witnesses)
        throw AuditError(role + " (" + A.description() + "): only " + std::to_string(out) +
                         " co-members below " + std::to_string(horizon) + " (looks co-finite)");
}

// --- Injection ---------------------------------------------------------------

struct Injection::Memo {
    std::mutex mu;
    std::vector<uint64_t> cache; // cache[n-1] = f(n), 0 = not computed
};

Injection::Injection(std::string desc, EvalFn eval, bool permutation_claim, EvalFn inverse)
    : desc_(std::move(desc)),
      eval_(std::move(eval)),
      inverse_(std::move(inverse)),
      permutation_claim_(permutation_claim),
      memo_(std::make_shared<Memo>()) {}

Injection Injection::identity() {
    return Injection(
        "id", [](uint64_t n) { return n; }, true, [](uint64_t n) { return n; });
}

uint64_t Injection::operator()(uint64_t n) const {
    if (n == 0) throw Error("injection: domain is 1-based");
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        if (n <= memo_->cache.size() && memo_->cache[n - 1] != 0) return memo_->cache[n - 1];
    }
    uint64_t v = eval_(n);
    if (v == 0) throw AuditError("injection " + desc_ + ": f(" + std::to_string(n) + ") = 0");
    std::lock_guard<std::mutex> lock(memo_->mu);
    if (memo_->cache.size() < n)
        memo_->cache.resize(std::max<uint64_t>(n, memo_->cache.size() * 2 + 16), 0);
    memo_->cache[n - 1] = v;
    return v;
}

uint64_t Injection::inverse(uint64_t n) const {
    if (!inverse_) throw Error("injection " + desc_ + ": no inverse available");
    return inverse_(n);
}

void Injection::audit_injective(uint64_t horizon) const {
    std::vector<std::pair<uint64_t, uint64_t>> pairs; // (image, arg)
    pairs.reserve(horizon);
    for (uint64_t n = 1; n <= horizon; ++n) pairs.emplace_back((*this)(n), n);
    std::sort(pairs.begin(), pairs.end());
    for (size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i - 1].first) {
            throw AuditError("injection " + desc_ + ": f(" + std::to_string(pairs[i - 1].second) +
                             ") = f(" + std::to_string(pairs[i].second) + ") = " +
                             std::to_string(pairs[i].first));
        }
    }
}

void Injection::audit_permutation_covers(uint64_t h_check, uint64_t horizon) const {
    if (!permutation_claim_)
        throw AuditError("injection " + desc_ + " does not claim to be a permutation");
    std::vector<bool> hit(h_check + 1, false);
    for (uint64_t n = 1; n <= horizon; ++n) {
        uint64_t v = (*this)(n);
        if (v <= h_check) hit[v] = true;
    }
    for (uint64_t v = 1; v <= h_check; ++v) {
        if (!hit[v])
            throw AuditError("injection " + desc_ + " claims permutation but " + std::to_string(v) +
                             " is not hit by f([1," + std::to_string(horizon) + "])");
    }
}

// --- parsing -----------------------------------------------------------------

namespace {

std::vector<uint64_t> parse_uint_list(const std::string& s) {
    std::vector<uint64_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            size_t pos = 0;
            unsigned long long v = std::stoull(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad integer \"" + item + "\" in set literal");
        }
    }
    return out;
}

} // namespace

IndexSet parse_set(const std::string& spec) {
    if (spec == "evens") return IndexSet::evens();
    if (spec == "odds") return IndexSet::odds();
    if (spec == "naturals" || spec == "all") return IndexSet::naturals();
    if (spec == "empty") return IndexSet::empty();
    if (spec.rfind("finite:", 0) == 0)
        return IndexSet::finite(parse_uint_list(spec.substr(7)));
    if (spec.rfind("residue:", 0) == 0) {
        std::string rest = spec.substr(8);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("residue literal needs residue:M:r1,r2");
        auto mods = parse_uint_list(rest.substr(0, colon));
        if (mods.size() != 1) throw ParseError("residue literal needs a single modulus");
        return IndexSet::residue(mods[0], parse_uint_list(rest.substr(colon + 1)));
    }
    if (spec.rfind("arith:", 0) == 0) {
        auto parts = parse_uint_list(spec.substr(6));
        if (parts.size() != 2) throw ParseError("arith literal needs arith:a,d");
        return IndexSet::arithmetic(parts[0], parts[1]);
    }
    if (spec.rfind("file:", 0) == 0) {
        std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open set file \"" + path + "\"");
        std::vector<uint64_t> elems;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                elems.push_back(std::stoull(line));
            } catch (const std::exception&) {
                throw ParseError("bad integer \"" + line + "\" in set file " + path);
            }
        }
        if (!std::is_sorted(elems.begin(), elems.end()))
            throw ParseError("set file " + path + " is not sorted");
        return IndexSet::finite(std::move(elems));
    }
    throw ParseError("unknown set spec: \"" + spec + "\"");
}

} // namespace serieslab

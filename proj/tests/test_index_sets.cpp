#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <fstream>
#include <random>
#include <thread>

#include "serieslab/index_set.hpp"

using namespace serieslab;

TEST_CASE("enumerate basics") {
    CHECK(IndexSet::evens().nth(3) == 6);
    IndexSet primes = IndexSet::finite({2, 3, 5, 7, 11});
    CHECK(primes.nth(4) == 7);
    CHECK_THROWS_AS(IndexSet::finite({5}).nth(2), PossiblyFiniteError);
}

TEST_CASE("rank basics") {
    CHECK(IndexSet::evens().rank(7) == 3);
    CHECK(IndexSet::odds().rank(0) == 0);
    CHECK(IndexSet::finite({3, 9}).rank(0) == 0);
    CHECK(IndexSet::odds().rank(9) == 5); // {1,3,5,7,9}
    CHECK(IndexSet::naturals().rank(17) == 17);
    CHECK(IndexSet::arithmetic(10, 10).rank(40) == 4);
}

TEST_CASE("residue sets enumerate and rank consistently") {
    IndexSet r30 = IndexSet::residue(3, {0});
    CHECK(r30.nth(1) == 3);
    CHECK(r30.nth(2) == 6);
    CHECK(r30.rank(9) == 3);
    IndexSet r31 = IndexSet::residue(3, {1, 2});
    CHECK(r31.nth(1) == 1);
    CHECK(r31.nth(2) == 2);
    CHECK(r31.nth(3) == 4);
    CHECK(r31.rank(5) == 4); // {1,2,4,5}
}

TEST_CASE("rank/enumerate duality on assorted sets") {
    std::mt19937_64 gen(11);
    std::vector<IndexSet> sets = {
        IndexSet::evens(), IndexSet::odds(), IndexSet::naturals(),
        IndexSet::arithmetic(5, 7), IndexSet::residue(5, {0, 2}),
        IndexSet::from_predicate("sq-free-ish", [](uint64_t n) { return n % 4 != 0; }),
        IndexSet::from_enumerator("squares", [](uint64_t k) { return k * k; }),
        IndexSet::evens().complement(),
    };
    for (const auto& A : sets) {
        for (int i = 0; i < 40; ++i) {
            uint64_t k = gen() % 200 + 1;
            uint64_t e = A.nth(k);
            CHECK(A.rank(e) == k);
            CHECK(A.contains(e));
            uint64_t m = gen() % 500 + 1;
            uint64_t r = A.rank(m);
            if (r >= 1) CHECK(A.nth(r) <= m);
        }
    }
}

TEST_CASE("membership agrees with enumeration") {
    IndexSet sq = IndexSet::from_enumerator("squares", [](uint64_t k) { return k * k; });
    for (uint64_t n = 1; n <= 120; ++n) {
        uint64_t root = 1;
        while (root * root < n) ++root;
        CHECK(sq.contains(n) == (root * root == n));
    }
}

TEST_CASE("complement round trip and membership") {
    IndexSet odds = IndexSet::odds();
    IndexSet comp = odds.complement();
    for (uint64_t n = 1; n <= 50; ++n) CHECK(comp.contains(n) == !odds.contains(n));
    CHECK(comp.nth(1) == 2);
    CHECK(comp.rank(10) == 5);
    // complement of a residue set is structural, double complement is identity
    IndexSet back = comp.complement();
    for (uint64_t n = 1; n <= 50; ++n) CHECK(back.contains(n) == odds.contains(n));

    IndexSet cofinite = IndexSet::finite({2, 5}).complement();
    CHECK(cofinite.nth(1) == 1);
    CHECK(cofinite.nth(2) == 3);
    CHECK(cofinite.rank(5) == 3); // {1,3,4}
}

TEST_CASE("possibly-finite error respects the scan bound") {
    IndexSet nothing = IndexSet::from_predicate("nothing", [](uint64_t) { return false; }, 5000);
    CHECK_THROWS_AS(nothing.nth(1), PossiblyFiniteError);
}

TEST_CASE("splits reports witnesses") {
    SplitsReport rep = splits(IndexSet::evens(), IndexSet::residue(3, {0}), 2, 20);
    CHECK(rep.in_witnesses == std::vector<uint64_t>{6, 12});
    CHECK(rep.out_witnesses == std::vector<uint64_t>{3, 9});
    CHECK(rep.splits_at_horizon());

    SplitsReport same = splits(IndexSet::evens(), IndexSet::evens(), 2, 1000);
    CHECK(same.out_deficient());
    CHECK(!same.in_deficient());

    SplitsReport sub = splits(IndexSet::naturals(), IndexSet::odds(), 2, 1000);
    CHECK(sub.out_deficient()); // B ⊆ A: B∖A empty
}

TEST_CASE("splits report symmetry against the complement") {
    IndexSet A = IndexSet::residue(4, {1, 2});
    IndexSet B = IndexSet::residue(3, {0, 1});
    SplitsReport direct = splits(A, B, 5, 500);
    SplitsReport comp = splits(A.complement(), B, 5, 500);
    CHECK(direct.in_witnesses == comp.out_witnesses);
    CHECK(direct.out_witnesses == comp.in_witnesses);
}

TEST_CASE("sparser_than violations") {
    // A sparse vs B = naturals: no gap holds two elements of A
    SparserReport r1 = sparser_than(IndexSet::arithmetic(10, 10), IndexSet::naturals(), 0, 200);
    CHECK(r1.violations.empty());
    CHECK(r1.holds_at_horizon());

    // A = naturals vs B = multiples of 10: every open gap has 9 members
    SparserReport r2 = sparser_than(IndexSet::naturals(), IndexSet::arithmetic(10, 10), 0, 40);
    REQUIRE(r2.violations.size() == 3);
    CHECK(r2.violations[0].gap_lo == 10);
    CHECK(r2.violations[0].gap_hi == 20);
    CHECK(r2.violations[0].members.size() == 9);
    CHECK(!r2.holds_at_horizon());
    CHECK(sparser_than(IndexSet::naturals(), IndexSet::arithmetic(10, 10), 3, 40)
              .holds_at_horizon());

    // reflexive: no open gap between consecutive members contains a member
    SparserReport r3 = sparser_than(IndexSet::odds(), IndexSet::odds(), 0, 300);
    CHECK(r3.violations.empty());

    CHECK_THROWS_AS(sparser_than(IndexSet::evens(), IndexSet::finite({7}), 0, 100), AuditError);
}

TEST_CASE("diagonal shift") {
    IndexSet d1 = diagonal_shift(IndexSet::naturals());
    CHECK(d1.nth(1) == 2);
    CHECK(d1.nth(2) == 4);
    CHECK(d1.nth(3) == 6);

    IndexSet d2 = diagonal_shift(IndexSet::finite({10, 20, 30}));
    CHECK(d2.nth(1) == 11);
    CHECK(d2.nth(2) == 22);
    CHECK(d2.nth(3) == 33);
    CHECK_THROWS_AS(d2.nth(4), PossiblyFiniteError);

    IndexSet d3 = diagonal_shift(IndexSet::evens());
    for (uint64_t i = 1; i <= 30; ++i) CHECK(d3.nth(i) == 3 * i);

    // strict monotonicity on a random enumerated set
    std::mt19937_64 gen(3);
    std::vector<uint64_t> elems;
    uint64_t v = 0;
    for (int i = 0; i < 64; ++i) {
        v += gen() % 9 + 1;
        elems.push_back(v);
    }
    IndexSet d4 = diagonal_shift(IndexSet::finite(elems));
    for (uint64_t i = 1; i < 64; ++i) CHECK(d4.nth(i) < d4.nth(i + 1));
}

TEST_CASE("injection memoization, audits") {
    Injection id = Injection::identity();
    CHECK(id(5) == 5);
    id.audit_injective(1000);
    id.audit_permutation_covers(100, 1000);

    Injection shift("shift", [](uint64_t n) { return n + 3; }, false);
    shift.audit_injective(1000);
    CHECK_THROWS_AS(shift.audit_permutation_covers(10, 1000), AuditError);

    Injection collide("collide", [](uint64_t n) { return n <= 2 ? 1 : n; }, false);
    CHECK_THROWS_AS(collide.audit_injective(10), AuditError);
}

TEST_CASE("jumbles inversions") {
    InversionReport none = jumbles(Injection::identity(), IndexSet::naturals(), 60);
    CHECK(none.inversions.empty());
    CHECK(none.preserved());

    Injection swap12("swap12",
                     [](uint64_t n) { return n == 1 ? 2 : (n == 2 ? 1 : n); }, true);
    InversionReport one = jumbles(swap12, IndexSet::naturals(), 60);
    REQUIRE(one.inversions.size() == 1);
    CHECK(one.inversions[0] == std::pair<uint64_t, uint64_t>{1, 2});
    CHECK(!one.preserved());
    CHECK(one.preserved(1)); // discarding pairs touching [1,1] clears it

    // adjacent transposition preserves the odds
    Injection adj("adj", [](uint64_t n) { return n % 2 == 1 ? n + 1 : n - 1; }, true);
    CHECK(jumbles(adj, IndexSet::odds(), 100).inversions.empty());
    CHECK(!jumbles(adj, IndexSet::naturals(), 100).inversions.empty());
}

TEST_CASE("set literal parsing") {
    CHECK(parse_set("evens").nth(1) == 2);
    CHECK(parse_set("odds").nth(2) == 3);
    CHECK(parse_set("naturals").nth(7) == 7);
    CHECK(parse_set("finite:1,5,9").nth(3) == 9);
    CHECK(parse_set("finite:").rank(100) == 0);
    CHECK(parse_set("residue:3:0").nth(1) == 3);
    CHECK(parse_set("arith:5,7").nth(2) == 12);
    CHECK_THROWS_AS(parse_set("bogus"), ParseError);
    CHECK_THROWS_AS(parse_set("arith:5"), ParseError);
    CHECK_THROWS_AS(parse_set("file:/nonexistent/path"), ParseError);

    {
        std::ofstream f("/tmp/sl_set.txt");
        f << "2\n3\n5\n7\n11\n";
    }
    IndexSet primes = parse_set("file:/tmp/sl_set.txt");
    CHECK(primes.nth(4) == 7);
    CHECK(primes.rank(10) == 4);
    {
        std::ofstream f("/tmp/sl_unsorted.txt");
        f << "5\n2\n";
    }
    CHECK_THROWS_AS(parse_set("file:/tmp/sl_unsorted.txt"), ParseError);
}

TEST_CASE("shared instances are safe under concurrent queries") {
    IndexSet sq = IndexSet::from_enumerator("squares", [](uint64_t k) { return k * k; });
    IndexSet pr = IndexSet::from_predicate("no-mult-3", [](uint64_t n) { return n % 3 != 0; });
    Injection p("tri-rotate", [](uint64_t n) {
        uint64_t r = n % 3;
        return r == 1 ? n + 1 : (r == 2 ? n + 1 : n - 2);
    }, true);
    std::atomic<uint64_t> errors{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (uint64_t k = 1 + t; k <= 2000; k += 4) {
                if (sq.nth(k) != k * k) ++errors;
                if (sq.rank(k * k) != k) ++errors;
                if (pr.contains(3 * k)) ++errors;
                uint64_t v = p(k);
                if (v == 0) ++errors;
            }
        });
    }
    for (auto& th : pool) th.join();
    CHECK(errors == 0);
    p.audit_injective(2000);
}

TEST_CASE("infinite/coinfinite audit") {
    CHECK_NOTHROW(audit_infinite_coinfinite(IndexSet::evens(), 1000, 8, "test"));
    CHECK_THROWS_AS(audit_infinite_coinfinite(IndexSet::finite({1, 2}), 1000, 8, "test"),
                    AuditError);
    CHECK_THROWS_AS(audit_infinite_coinfinite(IndexSet::finite({5}).complement(), 1000, 8, "test"),
                    AuditError);
}

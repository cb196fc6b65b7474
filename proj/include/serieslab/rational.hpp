#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "serieslab/errors.hpp"

namespace serieslab {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator. Wraps GMP's mpq_class; construction canonicalizes, so
// Rational(2, 4) == Rational(1, 2).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) { set_int64(n); }
    Rational(unsigned long long n) { v_ = from_u64(n); }

    Rational(long long num, long long den) {
        if (den == 0) throw Error("Rational: zero denominator");
        mpq_class q;
        q.get_num() = int64_to_mpz(num);
        q.get_den() = int64_to_mpz(den < 0 ? -den : den);
        if (den < 0) q = -q;
        q.canonicalize();
        v_ = q;
    }

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(mpz_class num, mpz_class den) {
        if (den == 0) throw Error("Rational: zero denominator");
        v_.get_num() = std::move(num);
        v_.get_den() = std::move(den);
        if (v_.get_den() < 0) { v_.get_num() = -v_.get_num(); v_.get_den() = -v_.get_den(); }
        v_.canonicalize();
    }

    // Accepts "p", "-p", "p/q"; base 10.
    static Rational from_string(const std::string& s);

    const mpq_class& raw() const { return v_; }
    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    Rational abs() const { Rational r; r.v_ = ::abs(v_); return r; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.v_ = -a.v_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    // base^exp for integer exp >= 0.
    static Rational pow(const Rational& base, uint64_t exp);

    double to_double() const { return v_.get_d(); }

    // "p" for integers, "p/q" otherwise.
    std::string str() const;
    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    static mpz_class int64_to_mpz(long long n);
    static mpz_class from_u64(unsigned long long n);
    void set_int64(long long n) { v_ = int64_to_mpz(n); }

    mpq_class v_;
};

} // namespace serieslab

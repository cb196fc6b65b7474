#include "serieslab/rational.hpp"

#include <ostream>

namespace serieslab {

mpz_class Rational::int64_to_mpz(long long n) {
    mpz_class z;
    // mpz_class has no long long constructor on LP64-agnostic paths; go via string
    // only when long cannot hold the value.
    if (n >= LONG_MIN && n <= LONG_MAX) {
        z = static_cast<long>(n);
    } else {
        z = mpz_class(std::to_string(n));
    }
    return z;
}

mpz_class Rational::from_u64(unsigned long long n) {
    mpz_class z;
    if (n <= ULONG_MAX) {
        z = static_cast<unsigned long>(n);
    } else {
        z = mpz_class(std::to_string(n));
    }
    return z;
}

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return Rational(std::move(n), mpz_class(1));
        }
        mpz_class n(s.substr(0, slash));
        mpz_class d(s.substr(slash + 1));
        if (d == 0) throw Error("Rational: zero denominator in \"" + s + "\"");
        return Rational(std::move(n), std::move(d));
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational: \"" + s + "\"");
    }
}

Rational Rational::pow(const Rational& base, uint64_t exp) {
    Rational r;
    mpz_pow_ui(r.v_.get_num().get_mpz_t(), base.v_.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.v_.get_den().get_mpz_t(), base.v_.get_den().get_mpz_t(), exp);
    // base canonical => powers are canonical
    return r;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace serieslab

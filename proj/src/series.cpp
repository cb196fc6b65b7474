#include "serieslab/series.hpp"

#include <cmath>

namespace serieslab {

Series alternating_harmonic() {
    return Series(
        "altharm",
        [](uint64_t n) {
            return Rational(n % 2 == 1 ? 1 : -1, static_cast<long long>(n));
        },
        Rational(1));
}

Series harmonic_terms() {
    return Series(
        "harmonic",
        [](uint64_t n) { return Rational(1, static_cast<long long>(n)); },
        Rational(1));
}

Series alternating_unit() {
    return Series(
        "altunit",
        [](uint64_t n) { return Rational(n % 2 == 1 ? 1 : -1); },
        Rational(1));
}

namespace {

uint64_t ceil_log2(uint64_t v) {
    uint64_t k = 0;
    uint64_t p = 1;
    while (p < v) {
        p <<= 1;
        ++k;
    }
    return k;
}

} // namespace

Series alternating_log2() {
    return Series(
        "altlog2",
        [](uint64_t n) {
            uint64_t d = ceil_log2(n + 1); // >= 1 for n >= 1
            return Rational(n % 2 == 1 ? 1 : -1, static_cast<long long>(d));
        },
        Rational(1));
}

Series inv_sqrt_dyadic(unsigned bits) {
    return Series(
        "invsqrt" + std::to_string(bits),
        [bits](uint64_t n) {
            // floor(2^bits / sqrt(n)) = isqrt(4^bits / n); floor-of-sqrt-of-floor
            // equals floor-of-sqrt for nonnegative reals.
            mpz_class four_pow;
            mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, bits);
            mpz_class q = four_pow / Rational(static_cast<unsigned long long>(n)).num();
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
            return Rational(std::move(r), std::move(den));
        },
        Rational(1));
}

Series zero_series() {
    return Series("zero", [](uint64_t) { return Rational(0); });
}

Series parse_series(const std::string& spec) {
    if (spec == "altharm") return alternating_harmonic();
    if (spec == "harmonic") return harmonic_terms();
    if (spec == "altunit") return alternating_unit();
    if (spec == "altlog2") return alternating_log2();
    if (spec == "invsqrt") return inv_sqrt_dyadic();
    if (spec == "zero") return zero_series();
    throw ParseError("unknown series spec: \"" + spec + "\"");
}

} // namespace serieslab

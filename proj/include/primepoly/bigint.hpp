#pragma once

// Arbitrary-precision integer helpers and the small set of value rings the
// polynomial and DAG evaluators are instantiated over.

#include <gmp.h>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace primepoly {

using Integer = mpz_class;
using Rational = mpq_class;

static_assert(GMP_LIMB_BITS == 64, "Wrap64 reduction assumes 64-bit GMP limbs");

inline Integer isqrt(const Integer& v) {
    if (sgn(v) < 0) throw std::domain_error("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

/// True iff v >= 0 and v = r^2 for some natural r.
inline bool is_square(const Integer& v) {
    if (sgn(v) < 0) return false;
    return mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

/// Integer divisibility: a | b. Zero divides only zero.
inline bool divides(const Integer& a, const Integer& b) {
    if (sgn(a) == 0) return sgn(b) == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty() || (s.front() == '-' && s.size() == 1)) throw std::invalid_argument("empty integer literal");
    for (std::size_t k = s.front() == '-' ? 1 : 0; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    return Integer(s, 10);
}

inline Integer ipow(const Integer& base, std::uint64_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Rational ipow(const Rational& base, std::uint64_t e) {
    Rational r(1);
    Rational b = base;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

/// Low 64 bits of v in two's complement, i.e. v mod 2^64.
inline std::uint64_t low64(const Integer& v) {
    const mpz_srcptr z = v.get_mpz_t();
    if (z->_mp_size == 0) return 0;
    const std::uint64_t m = mpz_getlimbn(z, 0);
    return z->_mp_size < 0 ? std::uint64_t{0} - m : m;
}

/// The ring Z/2^64Z with wrapping arithmetic. Evaluating an integer
/// polynomial here is a ring homomorphism image of exact evaluation, so a
/// nonzero residue proves a nonzero exact value.
struct Wrap64 {
    std::uint64_t v = 0;

    constexpr Wrap64() = default;
    constexpr explicit Wrap64(std::uint64_t x) : v(x) {}

    friend constexpr Wrap64 operator+(Wrap64 a, Wrap64 b) { return Wrap64{a.v + b.v}; }
    friend constexpr Wrap64 operator-(Wrap64 a, Wrap64 b) { return Wrap64{a.v - b.v}; }
    friend constexpr Wrap64 operator*(Wrap64 a, Wrap64 b) { return Wrap64{a.v * b.v}; }
    constexpr Wrap64 operator-() const { return Wrap64{std::uint64_t{0} - v}; }
    constexpr Wrap64& operator+=(Wrap64 o) { v += o.v; return *this; }
    constexpr Wrap64& operator-=(Wrap64 o) { v -= o.v; return *this; }
    constexpr Wrap64& operator*=(Wrap64 o) { v *= o.v; return *this; }
    friend constexpr bool operator==(Wrap64, Wrap64) = default;
};

inline Wrap64 ipow(Wrap64 base, std::uint64_t e) {
    Wrap64 r{1};
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1;
        base *= base;
    }
    return r;
}

/// Conversions from integer coefficients into an evaluation ring.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
    static Integer from_integer(const Integer& z) { return z; }
};

template <>
struct RingTraits<Rational> {
    static Rational from_integer(const Integer& z) { return Rational(z); }
};

template <>
struct RingTraits<Wrap64> {
    static Wrap64 from_integer(const Integer& z) { return Wrap64{low64(z)}; }
};

template <>
struct RingTraits<std::int64_t> {
    static std::int64_t from_integer(const Integer& z) {
        if (!z.fits_slong_p()) throw std::overflow_error("coefficient does not fit in int64");
        return z.get_si();
    }
};

inline std::int64_t ipow(std::int64_t base, std::uint64_t e) {
    std::int64_t r = 1;
    for (std::uint64_t k = 0; k < e; ++k) r *= base;
    return r;
}

inline std::string to_string(const Integer& v) { return v.get_str(10); }

}  // namespace primepoly

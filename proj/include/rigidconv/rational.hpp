#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rigidconv/errors.hpp"

namespace rigidconv {

using Int = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
/// Arithmetic never rounds.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long num, long den);
    explicit Rational(const Int& n) : q_(n) {}
    Rational(const Int& num, const Int& den);

    // Text form "a/b" or "a" with optional leading '-' (U+2212 accepted too).
    // Rejects zero denominators.
    static Rational parse(const std::string& text);
    std::string str() const;

    Int numerator() const { return q_.get_num(); }
    Int denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    // |num| + |den|, the tie-breaking height used for eigenvalue orderings.
    Int height() const;
    double to_double() const { return q_.get_d(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

private:
    mpq_class q_; // kept canonical
};

Rational abs(const Rational& x);

/// v with x = p^v * (p-adic unit). Throws zero_input for x = 0.
long p_adic_valuation(long p, const Rational& x);
long p_adic_valuation(long p, const Int& n);

// ---- small integer utilities shared across modules ----

/// Primes in [lo, hi], ascending.
std::vector<long> primes_in(long lo, long hi);

bool is_prime(const Int& n);

/// Full factorization of |n| (n != 0), pairs (prime, exponent) sorted by prime.
std::vector<std::pair<Int, int>> factor(const Int& n);

/// All positive divisors of |n|, ascending.
std::vector<Int> divisors(const Int& n);

/// Digit sum of s in base p.
long digit_sum(long s, long p);

/// v_p(s!) via Legendre's formula (s - digit_sum_p(s)) / (p - 1).
long factorial_valuation(long s, long p);

} // namespace rigidconv

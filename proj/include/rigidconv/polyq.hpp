#pragma once

#include <ostream>
#include <vector>

#include "rigidconv/rational.hpp"

namespace rigidconv {

/// Polynomial over Q in one variable; coefficient index = degree, trailing
/// zeros stripped. The zero polynomial has no coefficients and degree -1
/// (the "minus infinity" marker).
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static PolyQ constant(const Rational& a);
    static PolyQ monomial(int degree, const Rational& a);
    /// prod (t - r) over the given roots.
    static PolyQ from_roots(const std::vector<Rational>& roots);

    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(size_t i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const;

    PolyQ operator-() const;
    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ scaled(const Rational& a) const;
    bool operator==(const PolyQ& o) const { return c_ == o.c_; }

    PolyQ derivative() const;
    Rational eval(const Rational& x) const;

    /// Quotient by (x - root); requires remainder zero.
    PolyQ deflate(const Rational& root) const;

    /// Least common multiple of the coefficient denominators.
    Int denominator_lcm() const;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.str(); }

private:
    void normalize();
    std::vector<Rational> c_;
};

} // namespace rigidconv

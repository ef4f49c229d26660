#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidconv/polyq.hpp"
#include "rigidconv/rational.hpp"

namespace rigidconv {

/// Arithmetic in the prime field F_p, residues in [0, p).
struct Fp {
    long p;
    explicit Fp(long prime) : p(prime) {}
    long add(long a, long b) const { long s = a + b; return s >= p ? s - p : s; }
    long sub(long a, long b) const { long s = a - b; return s < 0 ? s + p : s; }
    long mul(long a, long b) const { return (long)((__int128)a * b % p); }
    long neg(long a) const { return a == 0 ? 0 : p - a; }
    long pow(long a, long e) const;
    long inv(long a) const;
    long reduce(const Int& n) const;
    /// Reduce a rational; throws bad_prime when p divides the denominator.
    long reduce(const Rational& x) const;
};

/// Polynomial over F_p; trailing zeros stripped, zero polynomial empty.
class PolyFp {
public:
    PolyFp() : p_(0) {}
    explicit PolyFp(long p) : p_(p) {}
    PolyFp(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs)) { normalize(); }
    static PolyFp constant(long p, long a);
    static PolyFp reduce(const PolyQ& f, long p);

    long modulus() const { return p_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    long coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<long>& coeffs() const { return c_; }

    PolyFp operator+(const PolyFp& o) const;
    PolyFp operator-(const PolyFp& o) const;
    PolyFp operator*(const PolyFp& o) const;
    PolyFp scaled(long a) const;
    PolyFp derivative() const;
    bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }

    std::string str() const;

private:
    void normalize();
    long p_;
    std::vector<long> c_;
};

/// Dense matrix with PolyFp entries (all over the same prime).
class MatPolyFp {
public:
    MatPolyFp() : rows_(0), cols_(0), p_(0) {}
    MatPolyFp(int rows, int cols, long p)
        : rows_(rows), cols_(cols), p_(p), e_(rows * cols, PolyFp(p)) {}
    static MatPolyFp identity(int n, long p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long modulus() const { return p_; }
    PolyFp& at(int i, int j) { return e_[i * cols_ + j]; }
    const PolyFp& at(int i, int j) const { return e_[i * cols_ + j]; }

    bool is_zero() const;
    MatPolyFp operator+(const MatPolyFp& o) const;
    MatPolyFp operator-(const MatPolyFp& o) const;
    MatPolyFp operator*(const MatPolyFp& o) const;
    MatPolyFp scaled(const PolyFp& f) const;
    MatPolyFp scaled(long a) const;
    MatPolyFp derivative() const;
    bool operator==(const MatPolyFp& o) const = default;

private:
    int rows_, cols_;
    long p_;
    std::vector<PolyFp> e_;
};

/// Characteristic polynomial det(xI - M) by the Berkowitz algorithm
/// (division-free, valid over F_p[t] for any p). Returned coefficients are
/// ordered leading-first: out[i] is the coefficient of x^(n-i), out[0] = 1.
std::vector<PolyFp> char_poly_berkowitz(const MatPolyFp& m);

/// M nilpotent over F_p(t), i.e. char poly equals x^n.
bool is_nilpotent(const MatPolyFp& m);

} // namespace rigidconv

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rigidconv/polyq.hpp"
#include "rigidconv/rational.hpp"

namespace rigidconv {

using VecQ = std::vector<Rational>;

/// Dense matrix over Q, row-major.
class MatQ {
public:
    MatQ() : rows_(0), cols_(0) {}
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}
    static MatQ identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    Rational& at(int i, int j) { return e_[i * cols_ + j]; }
    const Rational& at(int i, int j) const { return e_[i * cols_ + j]; }

    bool is_zero() const;
    MatQ operator+(const MatQ& o) const;
    MatQ operator-(const MatQ& o) const;
    MatQ operator*(const MatQ& o) const;
    MatQ operator-() const;
    MatQ scaled(const Rational& a) const;
    VecQ apply(const VecQ& v) const;
    Rational trace() const;
    bool operator==(const MatQ& o) const = default;

private:
    int rows_, cols_;
    std::vector<Rational> e_;
};

/// In-place reduced row echelon form. Pivot selection is deterministic:
/// columns left to right, first unused row with a nonzero entry.
/// Returns the pivot column indices.
std::vector<int> rref_in_place(MatQ& m);

int rank(const MatQ& m);
bool is_invertible(const MatQ& m);
MatQ inverse(const MatQ& m);

/// Basis of the right null space, reduced-echelon convention with
/// deterministic pivot order; empty for injective input.
std::vector<VecQ> kernel_basis(const MatQ& m);

/// det(xI - M), monic of degree n, by Faddeev-LeVerrier (exact over Q).
PolyQ char_poly(const MatQ& m);

/// Full multiset of eigenvalues (value, multiplicity) when the spectrum is
/// rational, found by rational-root search on the primitive integer form of
/// the characteristic polynomial. Throws non_rational_spectrum otherwise.
/// Sorted by (multiplicity desc, height asc, value asc).
std::vector<std::pair<Rational, int>> rational_eigenvalues(const MatQ& m);
std::vector<std::pair<Rational, int>> rational_roots_full(const PolyQ& f);

/// Invertible S with S*A[k] = B[k]*S for all k, if one can be exhibited.
/// Returns nullopt when no intertwiner space exists (or conjugacy
/// invariants rule it out); throws indeterminate_conjugacy when a nonzero
/// intertwiner space exists but the bounded scan finds no invertible
/// element. The returned S is re-verified before returning.
std::optional<MatQ> simultaneous_conjugacy(std::span<const MatQ> a, std::span<const MatQ> b);

/// Solution-space dimension of XA = AX.
int centralizer_dimension(const MatQ& a);

} // namespace rigidconv

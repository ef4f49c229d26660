#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidconv/matq.hpp"

namespace rigidconv {

/// First-order system y' = sum_i A_i/(t - q_i) y with constant residue
/// matrices; regular singular at the q_i and at infinity. The residue at
/// infinity is -(A_1 + ... + A_r), never stored.
struct FuchsianSystem {
    int rank = 0;                  // n
    std::vector<Rational> points;  // q_1..q_r, pairwise distinct
    std::vector<MatQ> residues;    // A_1..A_r, each n x n

    int num_points() const { return (int)points.size(); }
};

/// Checks all type invariants; identity on valid inputs.
void validate(const FuchsianSystem& f);

MatQ infinity_residue(const FuchsianSystem& f);

/// Rank-one system with single point q and residue (lambda); the matrix
/// form of d + lambda d(t-q)/(t-q) with solution (t-q)^lambda.
FuchsianSystem kummer(const Rational& q, const Rational& lambda);

/// Tensoring with a rank-one flat bundle: shifts residue i by alpha_i * I.
struct RankOneTwist {
    std::vector<Rational> alphas;
};

FuchsianSystem twist(const FuchsianSystem& f, const RankOneTwist& t);
RankOneTwist negated(const RankOneTwist& t);

/// Burnside criterion: the algebra generated by {I, A_1..A_r} spans M_n.
bool is_absolutely_irreducible(const FuchsianSystem& f);

/// A singular point of the system: a finite q or the point at infinity.
struct PointRef {
    bool at_infinity = false;
    Rational value;
    static PointRef infinity() { return {true, Rational(0)}; }
    static PointRef finite(const Rational& q) { return {false, q}; }
    std::string str() const { return at_infinity ? "inf" : value.str(); }
};

/// Eigenvalue data of the residue at one point; eigenvalues absent when the
/// spectrum is not rational (flag, not an error).
struct LocalSpectrum {
    PointRef point;
    std::optional<std::vector<std::pair<Rational, int>>> eigenvalues;
};

LocalSpectrum local_spectrum(const FuchsianSystem& f, const PointRef& at);

/// No two distinct residue eigenvalues differ by a nonzero integer, at any
/// singular point (zero residues are not singular). Throws
/// non_rational_spectrum when a relevant spectrum is not rational.
bool is_non_resonant(const FuchsianSystem& f);

/// Katz index iota = (2-m) n^2 + sum over the m singular points of the
/// centralizer dimension of the residue. Requires non-resonance.
int rigidity_index(const FuchsianSystem& f);

/// Rigid in the computable sense: absolutely irreducible with index 2.
bool is_rigid(const FuchsianSystem& f);

/// Simultaneous conjugacy of residue tuples, points matched after sorting.
bool is_isomorphic(const FuchsianSystem& f, const FuchsianSystem& g);

} // namespace rigidconv

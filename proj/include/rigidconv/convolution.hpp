#pragma once

#include "rigidconv/fuchsian.hpp"

namespace rigidconv {

/// Intermediate data of one middle convolution: the big block matrices
/// B_1..B_r on Q^(rn), the invariant subspaces K and L, and the coordinate
/// choice for the quotient.
struct ConvolutionWorkspace {
    Rational lambda;
    std::vector<MatQ> blocks;       // B_k, rn x rn, zero outside block-row k
    std::vector<VecQ> k_basis;      // block embeddings of ker(A_k)
    std::vector<VecQ> l_basis;      // diagonal embeddings of ker(A_1+..+A_r + lambda I)
    std::vector<int> quotient_coords; // complement coordinates (non-pivot, index order)
    std::vector<int> kernel_dims;   // dim ker(A_k) per finite point
};

/// Un-quotiented convolution: rank rn system on the same points whose
/// residues are the block matrices themselves. Serves as the oracle for the
/// quotiented construction.
FuchsianSystem naive_convolution(const FuchsianSystem& f, const Rational& lambda);

std::vector<VecQ> subspace_K(const FuchsianSystem& f);
std::vector<VecQ> subspace_L(const FuchsianSystem& f, const Rational& lambda);

/// Middle convolution mc_lambda: the induced action of the B_k on
/// Q^(rn)/(K+L). Keeps every point (zero residues are pruned separately).
/// Verifies on every invocation: K+L is B_k-invariant, the output rank
/// matches the mc_rank formula, and the trace identity
/// tr(out_k) = tr(A_k) + lambda (n - dim ker A_k).
std::pair<FuchsianSystem, ConvolutionWorkspace>
middle_convolution(const FuchsianSystem& f, const Rational& lambda);

/// rn - sum_k dim ker(A_k) - dim ker(A_1+...+A_r + lambda I), without
/// building the quotient.
int mc_rank(const FuchsianSystem& f, const Rational& lambda);

/// Drops (point, residue) pairs with zero residue.
FuchsianSystem prune_apparent(const FuchsianSystem& f);

enum class RoundTrip { isomorphic, mismatch, skipped };

/// Whether mc_{-lambda}(mc_lambda(F)) is isomorphic to F. Preconditions are
/// checked by rank (F absolutely irreducible, every residue invertible, the
/// lambda-shifted sums invertible in both directions); returns skipped when
/// they fail rather than asserting a theorem outside its hypotheses.
RoundTrip round_trip_check(const FuchsianSystem& f, const Rational& lambda);

} // namespace rigidconv

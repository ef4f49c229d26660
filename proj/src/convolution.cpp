#include "rigidconv/convolution.hpp"

#include <algorithm>

namespace rigidconv {

namespace {

void require_non_integer(const Rational& lambda) {
    if (lambda.is_integer())
        throw DomainError(Errc::integer_parameter,
                          "convolution parameter " + lambda.str() + " is an integer");
}

MatQ residue_sum(const FuchsianSystem& f) {
    MatQ sum(f.rank, f.rank);
    for (const auto& a : f.residues) sum = sum + a;
    return sum;
}

std::vector<MatQ> build_blocks(const FuchsianSystem& f, const Rational& lambda) {
    int n = f.rank, r = f.num_points();
    std::vector<MatQ> blocks;
    blocks.reserve(r);
    for (int k = 0; k < r; k++) {
        MatQ b(r * n, r * n);
        for (int j = 0; j < r; j++)
            for (int x = 0; x < n; x++)
                for (int y = 0; y < n; y++) b.at(k * n + x, j * n + y) = f.residues[j].at(x, y);
        for (int x = 0; x < n; x++) b.at(k * n + x, k * n + x) += lambda;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

// Membership test helper: RREF rows spanning a subspace of Q^dim.
struct SubspaceSpan {
    MatQ rows;
    std::vector<int> pivots;

    explicit SubspaceSpan(const std::vector<VecQ>& columns, int dim) : rows(0, dim) {
        MatQ m((int)columns.size(), dim);
        for (size_t i = 0; i < columns.size(); i++)
            for (int j = 0; j < dim; j++) m.at((int)i, j) = columns[i][j];
        pivots = rref_in_place(m);
        MatQ kept((int)pivots.size(), dim);
        for (int i = 0; i < (int)pivots.size(); i++)
            for (int j = 0; j < dim; j++) kept.at(i, j) = m.at(i, j);
        rows = std::move(kept);
    }

    bool contains(const VecQ& v) const {
        VecQ w = v;
        for (size_t r = 0; r < pivots.size(); r++) {
            const Rational& x = w[pivots[r]];
            if (x.is_zero()) continue;
            Rational fct = x;
            for (int c = 0; c < rows.cols(); c++) w[c] -= fct * rows.at((int)r, c);
        }
        for (const auto& x : w)
            if (!x.is_zero()) return false;
        return true;
    }
};

} // namespace

FuchsianSystem naive_convolution(const FuchsianSystem& f, const Rational& lambda) {
    validate(f);
    require_non_integer(lambda);
    if (f.num_points() < 1)
        throw DomainError(Errc::precondition, "convolution needs at least one point");
    FuchsianSystem out;
    out.rank = f.rank * f.num_points();
    out.points = f.points;
    out.residues = build_blocks(f, lambda);
    validate(out);
    return out;
}

std::vector<VecQ> subspace_K(const FuchsianSystem& f) {
    validate(f);
    int n = f.rank, r = f.num_points();
    std::vector<VecQ> cols;
    for (int k = 0; k < r; k++)
        for (const auto& v : kernel_basis(f.residues[k])) {
            VecQ big(r * n, Rational(0));
            for (int x = 0; x < n; x++) big[k * n + x] = v[x];
            cols.push_back(std::move(big));
        }
    return cols;
}

std::vector<VecQ> subspace_L(const FuchsianSystem& f, const Rational& lambda) {
    validate(f);
    int n = f.rank, r = f.num_points();
    MatQ shifted = residue_sum(f);
    for (int i = 0; i < n; i++) shifted.at(i, i) += lambda;
    std::vector<VecQ> cols;
    for (const auto& v : kernel_basis(shifted)) {
        VecQ big(r * n, Rational(0));
        for (int k = 0; k < r; k++)
            for (int x = 0; x < n; x++) big[k * n + x] = v[x];
        cols.push_back(std::move(big));
    }
    return cols;
}

int mc_rank(const FuchsianSystem& f, const Rational& lambda) {
    validate(f);
    require_non_integer(lambda);
    int n = f.rank, r = f.num_points();
    int dims = 0;
    for (const auto& a : f.residues) dims += (int)kernel_basis(a).size();
    MatQ shifted = residue_sum(f);
    for (int i = 0; i < n; i++) shifted.at(i, i) += lambda;
    dims += (int)kernel_basis(shifted).size();
    return r * n - dims;
}

std::pair<FuchsianSystem, ConvolutionWorkspace>
middle_convolution(const FuchsianSystem& f, const Rational& lambda) {
    validate(f);
    require_non_integer(lambda);
    if (f.num_points() < 1)
        throw DomainError(Errc::precondition, "convolution needs at least one point");

    const int n = f.rank, r = f.num_points(), big = r * n;

    ConvolutionWorkspace ws;
    ws.lambda = lambda;
    ws.blocks = build_blocks(f, lambda);
    ws.k_basis = subspace_K(f);
    ws.l_basis = subspace_L(f, lambda);
    for (const auto& a : f.residues) ws.kernel_dims.push_back((int)kernel_basis(a).size());

    std::vector<VecQ> span_cols = ws.k_basis;
    span_cols.insert(span_cols.end(), ws.l_basis.begin(), ws.l_basis.end());
    const int d = (int)span_cols.size();

    // K+L must be invariant under every block.
    SubspaceSpan span(span_cols, big);
    for (const auto& b : ws.blocks)
        for (const auto& c : span_cols)
            if (!span.contains(b.apply(c)))
                throw DomainError(Errc::invariance_violation, "K+L is not block-invariant");

    if (big - d <= 0)
        throw DomainError(Errc::empty_quotient,
                          "quotient is zero-dimensional (punctual image)");

    // complement coordinates: non-pivots of the echelonized K+L matrix
    std::vector<bool> is_pivot(big, false);
    for (int c : span.pivots) is_pivot[c] = true;
    for (int c = 0; c < big; c++)
        if (!is_pivot[c]) ws.quotient_coords.push_back(c);

    // basis change S = [K u L basis | complement unit columns]
    MatQ s(big, big);
    for (int j = 0; j < d; j++)
        for (int i = 0; i < big; i++) s.at(i, j) = span_cols[j][i];
    for (size_t j = 0; j < ws.quotient_coords.size(); j++)
        s.at(ws.quotient_coords[j], d + (int)j) = Rational(1);
    MatQ s_inv = inverse(s);

    FuchsianSystem out;
    out.rank = big - d;
    out.points = f.points;
    for (int k = 0; k < r; k++) {
        MatQ conj = s_inv * ws.blocks[k] * s;
        // invariance makes the lower-left block vanish; the quotient action
        // is the lower-right block
        for (int i = d; i < big; i++)
            for (int j = 0; j < d; j++)
                if (!conj.at(i, j).is_zero())
                    throw DomainError(Errc::invariance_violation,
                                      "conjugated block is not triangular");
        MatQ q(out.rank, out.rank);
        for (int i = 0; i < out.rank; i++)
            for (int j = 0; j < out.rank; j++) q.at(i, j) = conj.at(d + i, d + j);
        out.residues.push_back(std::move(q));
    }
    validate(out);

    // rank agreement with the closed formula
    if (out.rank != mc_rank(f, lambda))
        throw DomainError(Errc::invariance_violation, "quotient dimension disagrees with mc_rank");
    // trace identity per point
    for (int k = 0; k < r; k++) {
        Rational expected =
            f.residues[k].trace() + lambda * Rational((long)(n - ws.kernel_dims[k]));
        if (!(out.residues[k].trace() == expected))
            throw DomainError(Errc::invariance_violation, "trace identity violated at point " +
                                                              f.points[k].str());
    }
    return {std::move(out), std::move(ws)};
}

FuchsianSystem prune_apparent(const FuchsianSystem& f) {
    validate(f);
    FuchsianSystem out;
    out.rank = f.rank;
    for (size_t i = 0; i < f.points.size(); i++) {
        if (f.residues[i].is_zero()) continue;
        out.points.push_back(f.points[i]);
        out.residues.push_back(f.residues[i]);
    }
    return out;
}

RoundTrip round_trip_check(const FuchsianSystem& f, const Rational& lambda) {
    validate(f);
    require_non_integer(lambda);
    if (!is_absolutely_irreducible(f)) return RoundTrip::skipped;
    for (const auto& a : f.residues)
        if (!is_invertible(a)) return RoundTrip::skipped;
    MatQ shifted = residue_sum(f);
    for (int i = 0; i < f.rank; i++) shifted.at(i, i) += lambda;
    if (!is_invertible(shifted)) return RoundTrip::skipped;

    auto [g, ws] = middle_convolution(f, lambda);
    // the reverse step must land back on the original rank, else the
    // classical hypotheses fail
    if (mc_rank(g, -lambda) != f.rank) return RoundTrip::skipped;
    auto [h, ws2] = middle_convolution(g, -lambda);
    return is_isomorphic(prune_apparent(h), prune_apparent(f)) ? RoundTrip::isomorphic
                                                               : RoundTrip::mismatch;
}

} // namespace rigidconv

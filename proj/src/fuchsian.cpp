#include "rigidconv/fuchsian.hpp"

#include <algorithm>

namespace rigidconv {

void validate(const FuchsianSystem& f) {
    if (f.rank <= 0) throw DomainError(Errc::shape_mismatch, "rank must be positive");
    if (f.points.size() != f.residues.size())
        throw DomainError(Errc::shape_mismatch, "points and residues counts differ");
    for (size_t i = 0; i < f.points.size(); i++)
        for (size_t j = i + 1; j < f.points.size(); j++)
            if (f.points[i] == f.points[j])
                throw DomainError(Errc::duplicate_points,
                                  "duplicate point " + f.points[i].str());
    for (size_t i = 0; i < f.residues.size(); i++)
        if (f.residues[i].rows() != f.rank || f.residues[i].cols() != f.rank)
            throw DomainError(Errc::shape_mismatch,
                              "residue " + std::to_string(i) + " is not " +
                                  std::to_string(f.rank) + "x" + std::to_string(f.rank));
}

MatQ infinity_residue(const FuchsianSystem& f) {
    MatQ sum(f.rank, f.rank);
    for (const auto& a : f.residues) sum = sum + a;
    return -sum;
}

FuchsianSystem kummer(const Rational& q, const Rational& lambda) {
    FuchsianSystem f;
    f.rank = 1;
    f.points = {q};
    MatQ a(1, 1);
    a.at(0, 0) = lambda;
    f.residues = {a};
    return f;
}

FuchsianSystem twist(const FuchsianSystem& f, const RankOneTwist& t) {
    if (t.alphas.size() != f.points.size())
        throw DomainError(Errc::shape_mismatch, "twist length differs from point count");
    FuchsianSystem g = f;
    for (size_t i = 0; i < g.residues.size(); i++)
        for (int d = 0; d < g.rank; d++) g.residues[i].at(d, d) += t.alphas[i];
    return g;
}

RankOneTwist negated(const RankOneTwist& t) {
    RankOneTwist out;
    out.alphas.reserve(t.alphas.size());
    for (const auto& a : t.alphas) out.alphas.push_back(-a);
    return out;
}

namespace {

// Span-closure state: RREF rows over Q^(n^2) plus the matrices they came from.
struct SpanClosure {
    int n;
    MatQ rows; // RREF'd so far
    std::vector<int> pivots;
    explicit SpanClosure(int n_) : n(n_), rows(0, n_ * n_) {}

    // Returns true if m enlarged the span.
    bool insert(const MatQ& m) {
        VecQ v(n * n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) v[i * n + j] = m.at(i, j);
        // reduce against existing rows
        for (size_t r = 0; r < pivots.size(); r++) {
            const Rational& x = v[pivots[r]];
            if (x.is_zero()) continue;
            Rational fct = x;
            for (int c = 0; c < n * n; c++) v[c] -= fct * rows.at((int)r, c);
        }
        int piv = -1;
        for (int c = 0; c < n * n; c++)
            if (!v[c].is_zero()) {
                piv = c;
                break;
            }
        if (piv < 0) return false;
        Rational inv = Rational(1) / v[piv];
        for (int c = 0; c < n * n; c++) v[c] *= inv;
        // append and back-substitute into earlier rows
        MatQ grown((int)pivots.size() + 1, n * n);
        for (int r = 0; r < (int)pivots.size(); r++) {
            Rational fct = rows.at(r, piv);
            for (int c = 0; c < n * n; c++) grown.at(r, c) = rows.at(r, c) - fct * v[c];
        }
        for (int c = 0; c < n * n; c++) grown.at((int)pivots.size(), c) = v[c];
        rows = std::move(grown);
        pivots.push_back(piv);
        return true;
    }
    int dimension() const { return (int)pivots.size(); }
};

} // namespace

bool is_absolutely_irreducible(const FuchsianSystem& f) {
    validate(f);
    int n = f.rank;
    SpanClosure span(n);
    std::vector<MatQ> work;
    auto add = [&](const MatQ& m) {
        if (span.insert(m)) work.push_back(m);
    };
    add(MatQ::identity(n));
    for (const auto& a : f.residues) add(a);
    // close the span under right multiplication by the generators
    for (size_t i = 0; i < work.size() && span.dimension() < n * n; i++)
        for (const auto& a : f.residues) {
            add(work[i] * a);
            if (span.dimension() == n * n) break;
        }
    return span.dimension() == n * n;
}

LocalSpectrum local_spectrum(const FuchsianSystem& f, const PointRef& at) {
    validate(f);
    MatQ residue;
    if (at.at_infinity) {
        residue = infinity_residue(f);
    } else {
        auto it = std::find(f.points.begin(), f.points.end(), at.value);
        if (it == f.points.end())
            throw DomainError(Errc::unknown_point, at.value.str() + " is not a singular point");
        residue = f.residues[it - f.points.begin()];
    }
    LocalSpectrum s;
    s.point = at;
    try {
        s.eigenvalues = rational_eigenvalues(residue);
    } catch (const DomainError& e) {
        if (e.code() != Errc::non_rational_spectrum) throw;
        s.eigenvalues = std::nullopt;
    }
    return s;
}

namespace {

// Residues at the genuinely singular points (nonzero residues, infinity
// included when its residue is nonzero).
std::vector<MatQ> singular_residues(const FuchsianSystem& f) {
    std::vector<MatQ> out;
    for (const auto& a : f.residues)
        if (!a.is_zero()) out.push_back(a);
    MatQ inf = infinity_residue(f);
    if (!inf.is_zero()) out.push_back(inf);
    return out;
}

} // namespace

bool is_non_resonant(const FuchsianSystem& f) {
    validate(f);
    for (const auto& a : singular_residues(f)) {
        auto eigs = rational_eigenvalues(a); // throws non_rational_spectrum
        for (size_t i = 0; i < eigs.size(); i++)
            for (size_t j = 0; j < eigs.size(); j++) {
                if (i == j) continue;
                Rational d = eigs[i].first - eigs[j].first;
                if (!d.is_zero() && d.is_integer()) return false;
            }
    }
    return true;
}

int rigidity_index(const FuchsianSystem& f) {
    if (!is_non_resonant(f)) throw DomainError(Errc::resonant, "resonant eigenvalue difference");
    auto sing = singular_residues(f);
    int m = (int)sing.size();
    int idx = (2 - m) * f.rank * f.rank;
    for (const auto& a : sing) idx += centralizer_dimension(a);
    return idx;
}

bool is_rigid(const FuchsianSystem& f) {
    return is_absolutely_irreducible(f) && rigidity_index(f) == 2;
}

bool is_isomorphic(const FuchsianSystem& f, const FuchsianSystem& g) {
    validate(f);
    validate(g);
    if (f.rank != g.rank || f.points.size() != g.points.size()) return false;

    std::vector<size_t> fi(f.points.size()), gi(g.points.size());
    for (size_t i = 0; i < fi.size(); i++) fi[i] = i, gi[i] = i;
    auto by_point = [](const std::vector<Rational>& pts) {
        return [&pts](size_t a, size_t b) { return pts[a] < pts[b]; };
    };
    std::sort(fi.begin(), fi.end(), by_point(f.points));
    std::sort(gi.begin(), gi.end(), by_point(g.points));

    std::vector<MatQ> a, b;
    for (size_t k = 0; k < fi.size(); k++) {
        if (!(f.points[fi[k]] == g.points[gi[k]])) return false;
        a.push_back(f.residues[fi[k]]);
        b.push_back(g.residues[gi[k]]);
    }
    return simultaneous_conjugacy(a, b).has_value();
}

} // namespace rigidconv

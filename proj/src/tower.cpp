#include "rigidconv/tower.hpp"

namespace rigidconv {

MatPolyQ MatPolyQ::identity(int n) {
    MatPolyQ m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = PolyQ::constant(Rational(1));
    return m;
}

bool MatPolyQ::is_zero() const {
    for (const auto& f : e_)
        if (!f.is_zero()) return false;
    return true;
}

MatPolyQ MatPolyQ::operator+(const MatPolyQ& o) const {
    MatPolyQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

MatPolyQ MatPolyQ::operator-(const MatPolyQ& o) const {
    MatPolyQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

MatPolyQ MatPolyQ::operator*(const MatPolyQ& o) const {
    MatPolyQ m(rows_, o.cols_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            const PolyQ& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; j++) m.at(i, j) = m.at(i, j) + a * o.at(k, j);
        }
    return m;
}

MatPolyQ MatPolyQ::scaled(const PolyQ& f) const {
    MatPolyQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] * f;
    return m;
}

MatPolyQ MatPolyQ::scaled(const Rational& a) const {
    MatPolyQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i].scaled(a);
    return m;
}

MatPolyQ MatPolyQ::derivative() const {
    MatPolyQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i].derivative();
    return m;
}

DerivativeTower build_tower(const FuchsianSystem& f, int depth) {
    validate(f);
    if (depth < 1) throw DomainError(Errc::precondition, "tower depth must be >= 1");
    const int n = f.rank, r = f.num_points();

    DerivativeTower tw;
    tw.depth = depth;
    tw.D = PolyQ::from_roots(f.points);

    // N = sum_k A_k prod_{j!=k} (t - q_j)
    tw.N = MatPolyQ(n, n);
    for (int k = 0; k < r; k++) {
        std::vector<Rational> others;
        for (int j = 0; j < r; j++)
            if (j != k) others.push_back(f.points[j]);
        PolyQ partial = PolyQ::from_roots(others);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                tw.N.at(i, j) = tw.N.at(i, j) + partial.scaled(f.residues[k].at(i, j));
    }

    tw.P.reserve(depth + 1);
    tw.P.push_back(MatPolyQ::identity(n));
    PolyQ dprime = tw.D.derivative();
    for (int s = 0; s < depth; s++) {
        const MatPolyQ& ps = tw.P.back();
        MatPolyQ next = ps.derivative().scaled(tw.D) - ps.scaled(dprime.scaled(Rational((long)s))) +
                        tw.N * ps;
        tw.P.push_back(std::move(next));
    }
    return tw;
}

} // namespace rigidconv

#include "rigidconv/matq.hpp"

#include <algorithm>

namespace rigidconv {

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = Rational(1);
    return m;
}

bool MatQ::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

MatQ MatQ::operator+(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DomainError(Errc::shape_mismatch, "matrix addition shapes differ");
    MatQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

MatQ MatQ::operator-(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DomainError(Errc::shape_mismatch, "matrix subtraction shapes differ");
    MatQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

MatQ MatQ::operator*(const MatQ& o) const {
    if (cols_ != o.rows_)
        throw DomainError(Errc::shape_mismatch, "matrix product shapes differ");
    MatQ m(rows_, o.cols_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            const Rational& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; j++) m.at(i, j) += a * o.at(k, j);
        }
    return m;
}

MatQ MatQ::operator-() const {
    MatQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = -e_[i];
    return m;
}

MatQ MatQ::scaled(const Rational& a) const {
    MatQ m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] * a;
    return m;
}

VecQ MatQ::apply(const VecQ& v) const {
    if ((int)v.size() != cols_)
        throw DomainError(Errc::shape_mismatch, "matrix-vector shapes differ");
    VecQ out(rows_, Rational(0));
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

Rational MatQ::trace() const {
    if (!is_square()) throw DomainError(Errc::not_square, "trace of non-square matrix");
    Rational t(0);
    for (int i = 0; i < rows_; i++) t += at(i, i);
    return t;
}

std::vector<int> rref_in_place(MatQ& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); col++) {
        int sel = -1;
        for (int i = row; i < m.rows(); i++)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); j++) std::swap(m.at(sel, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (int j = col; j < m.cols(); j++) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); i++) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Rational f = m.at(i, col);
            for (int j = col; j < m.cols(); j++) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        row++;
    }
    return pivots;
}

int rank(const MatQ& m) {
    MatQ c = m;
    return (int)rref_in_place(c).size();
}

bool is_invertible(const MatQ& m) {
    return m.is_square() && rank(m) == m.rows();
}

MatQ inverse(const MatQ& m) {
    if (!m.is_square()) throw DomainError(Errc::not_square, "inverse of non-square matrix");
    int n = m.rows();
    MatQ aug(n, 2 * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    auto piv = rref_in_place(aug);
    if ((int)piv.size() != n || piv[n - 1] != n - 1)
        throw DomainError(Errc::invariance_violation, "inverse of singular matrix");
    MatQ out(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.at(i, j) = aug.at(i, n + j);
    return out;
}

std::vector<VecQ> kernel_basis(const MatQ& m) {
    MatQ r = m;
    auto pivots = rref_in_place(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<VecQ> basis;
    for (int free = 0; free < m.cols(); free++) {
        if (is_pivot[free]) continue;
        VecQ v(m.cols(), Rational(0));
        v[free] = Rational(1);
        for (size_t k = 0; k < pivots.size(); k++) v[pivots[k]] = -r.at((int)k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

PolyQ char_poly(const MatQ& m) {
    if (!m.is_square()) throw DomainError(Errc::not_square, "char_poly of non-square matrix");
    int n = m.rows();
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = Rational(1);
    MatQ mk = m;
    for (int k = 1; k <= n; k++) {
        Rational ck = -(mk.trace() / Rational((long)k));
        c[n - k] = ck;
        if (k < n) {
            MatQ shifted = mk;
            for (int i = 0; i < n; i++) shifted.at(i, i) += ck;
            mk = m * shifted;
        }
    }
    return PolyQ(std::move(c));
}

std::vector<std::pair<Rational, int>> rational_roots_full(const PolyQ& f) {
    if (f.is_zero()) throw DomainError(Errc::zero_input, "roots of zero polynomial");
    std::vector<std::pair<Rational, int>> roots;

    // factor out x^k first
    PolyQ g = f;
    int zero_mult = 0;
    while (g.degree() > 0 && g.coeff(0).is_zero()) {
        g = g.deflate(Rational(0));
        zero_mult++;
    }
    if (zero_mult) roots.emplace_back(Rational(0), zero_mult);

    if (g.degree() > 0) {
        // primitive integer form: scale by the denominator lcm
        Int l = g.denominator_lcm();
        Int a0 = g.coeff(0).numerator() * (l / g.coeff(0).denominator());
        Int an = g.leading().numerator() * (l / g.leading().denominator());
        auto nums = divisors(a0);
        auto dens = divisors(an);
        std::vector<Rational> candidates;
        for (const auto& num : nums)
            for (const auto& den : dens) {
                Rational r(num, den);
                if (r.numerator() != num) continue; // not in lowest terms, seen already
                candidates.push_back(r);
                candidates.push_back(-r);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        for (const auto& cand : candidates) {
            if (g.degree() <= 0) break;
            int mult = 0;
            while (g.degree() > 0 && g.eval(cand).is_zero()) {
                g = g.deflate(cand);
                mult++;
            }
            if (mult) roots.emplace_back(cand, mult);
        }
        if (g.degree() > 0)
            throw DomainError(Errc::non_rational_spectrum,
                              "polynomial has a non-rational factor of degree " +
                                  std::to_string(g.degree()));
    }

    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        Int ha = a.first.height(), hb = b.first.height();
        if (ha != hb) return ha < hb;
        return a.first < b.first;
    });
    return roots;
}

std::vector<std::pair<Rational, int>> rational_eigenvalues(const MatQ& m) {
    return rational_roots_full(char_poly(m));
}

namespace {

// Stacked linear system for S A_k = B_k S in the n^2 unknowns S[i][j].
std::vector<VecQ> intertwiner_space(std::span<const MatQ> a, std::span<const MatQ> b) {
    int n = a[0].rows();
    int rows = (int)a.size() * n * n;
    MatQ sys(rows, n * n);
    int row = 0;
    for (size_t k = 0; k < a.size(); k++) {
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                // (S A_k - B_k S)[i][j] = sum_l S[i][l] A_k[l][j] - B_k[i][l] S[l][j]
                for (int l = 0; l < n; l++) {
                    sys.at(row, i * n + l) += a[k].at(l, j);
                    sys.at(row, l * n + j) -= b[k].at(i, l);
                }
                row++;
            }
    }
    return kernel_basis(sys);
}

MatQ unvec(const VecQ& v, int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) m.at(i, j) = v[i * n + j];
    return m;
}

bool verify_conjugacy(const MatQ& s, std::span<const MatQ> a, std::span<const MatQ> b) {
    if (!is_invertible(s)) return false;
    for (size_t k = 0; k < a.size(); k++)
        if (!(s * a[k] == b[k] * s)) return false;
    return true;
}

} // namespace

std::optional<MatQ> simultaneous_conjugacy(std::span<const MatQ> a, std::span<const MatQ> b) {
    if (a.size() != b.size())
        throw DomainError(Errc::shape_mismatch, "tuple lengths differ");
    if (a.empty()) return MatQ::identity(0);
    int n = a[0].rows();
    for (size_t k = 0; k < a.size(); k++)
        if (!a[k].is_square() || !b[k].is_square() || a[k].rows() != n || b[k].rows() != n)
            throw DomainError(Errc::shape_mismatch, "tuple entries must be square of equal size");

    // conjugacy invariants rule out cheaply
    for (size_t k = 0; k < a.size(); k++)
        if (!(char_poly(a[k]) == char_poly(b[k]))) return std::nullopt;

    auto space = intertwiner_space(a, b);
    if (space.empty()) return std::nullopt;

    for (const auto& v : space) {
        MatQ s = unvec(v, n);
        if (verify_conjugacy(s, a, b)) return s;
    }
    // all -1/0/+1 combinations of up to the first 3 basis vectors
    size_t m = std::min<size_t>(space.size(), 3);
    int total = 1;
    for (size_t i = 0; i < m; i++) total *= 3;
    for (int code = 1; code < total; code++) {
        VecQ v(n * n, Rational(0));
        int c = code;
        for (size_t i = 0; i < m; i++) {
            int d = c % 3;
            c /= 3;
            if (d == 0) continue;
            Rational w(d == 1 ? 1 : -1);
            for (int j = 0; j < n * n; j++) v[j] += w * space[i][j];
        }
        MatQ s = unvec(v, n);
        if (verify_conjugacy(s, a, b)) return s;
    }
    throw DomainError(Errc::indeterminate_conjugacy,
                      "nonzero intertwiner space but no invertible element found in scan");
}

int centralizer_dimension(const MatQ& a) {
    if (!a.is_square()) throw DomainError(Errc::not_square, "centralizer of non-square matrix");
    std::vector<MatQ> one{a};
    return (int)intertwiner_space(one, one).size();
}

} // namespace rigidconv

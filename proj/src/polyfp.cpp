#include "rigidconv/polyfp.hpp"

#include "rigidconv/polyq.hpp"

namespace rigidconv {

long Fp::pow(long a, long e) const {
    long r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

long Fp::inv(long a) const {
    if (a % p == 0) throw DomainError(Errc::zero_input, "inverse of 0 mod p");
    return pow(a, p - 2);
}

long Fp::reduce(const Int& n) const {
    Int r = n % p;
    long v = (long)r.get_si();
    return v < 0 ? v + p : v;
}

long Fp::reduce(const Rational& x) const {
    long den = reduce(x.denominator());
    if (den == 0)
        throw DomainError(Errc::bad_prime,
                          "denominator of " + x.str() + " vanishes mod " + std::to_string(p));
    return mul(reduce(x.numerator()), inv(den));
}

void PolyFp::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::constant(long p, long a) {
    PolyFp f(p);
    a %= p;
    if (a < 0) a += p;
    if (a) f.c_ = {a};
    return f;
}

PolyFp PolyFp::reduce(const PolyQ& f, long p) {
    Fp fp(p);
    std::vector<long> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); i++) c[i] = fp.reduce(f.coeff(i));
    return PolyFp(p, std::move(c));
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
    Fp fp(p_);
    std::vector<long> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = fp.add(coeff(i), o.coeff(i));
    return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
    Fp fp(p_);
    std::vector<long> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = fp.sub(coeff(i), o.coeff(i));
    return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (is_zero() || o.is_zero()) return PolyFp(p_);
    Fp fp(p_);
    std::vector<long> c(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); i++) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); j++)
            c[i + j] = fp.add(c[i + j], fp.mul(c_[i], o.c_[j]));
    }
    return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::scaled(long a) const {
    Fp fp(p_);
    a %= p_;
    if (a < 0) a += p_;
    std::vector<long> c(c_.size());
    for (size_t i = 0; i < c_.size(); i++) c[i] = fp.mul(c_[i], a);
    return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::derivative() const {
    if (c_.size() <= 1) return PolyFp(p_);
    Fp fp(p_);
    std::vector<long> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); i++) c[i - 1] = fp.mul(c_[i], (long)(i % p_));
    return PolyFp(p_, std::move(c));
}

std::string PolyFp::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
            s += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return s;
}

MatPolyFp MatPolyFp::identity(int n, long p) {
    MatPolyFp m(n, n, p);
    for (int i = 0; i < n; i++) m.at(i, i) = PolyFp::constant(p, 1);
    return m;
}

bool MatPolyFp::is_zero() const {
    for (const auto& f : e_)
        if (!f.is_zero()) return false;
    return true;
}

MatPolyFp MatPolyFp::operator+(const MatPolyFp& o) const {
    MatPolyFp m(rows_, cols_, p_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

MatPolyFp MatPolyFp::operator-(const MatPolyFp& o) const {
    MatPolyFp m(rows_, cols_, p_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

MatPolyFp MatPolyFp::operator*(const MatPolyFp& o) const {
    MatPolyFp m(rows_, o.cols_, p_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            const PolyFp& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; j++) m.at(i, j) = m.at(i, j) + a * o.at(k, j);
        }
    return m;
}

MatPolyFp MatPolyFp::scaled(const PolyFp& f) const {
    MatPolyFp m(rows_, cols_, p_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i] * f;
    return m;
}

MatPolyFp MatPolyFp::scaled(long a) const {
    MatPolyFp m(rows_, cols_, p_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i].scaled(a);
    return m;
}

MatPolyFp MatPolyFp::derivative() const {
    MatPolyFp m(rows_, cols_, p_);
    for (size_t i = 0; i < e_.size(); i++) m.e_[i] = e_[i].derivative();
    return m;
}

std::vector<PolyFp> char_poly_berkowitz(const MatPolyFp& m) {
    if (m.rows() != m.cols()) throw DomainError(Errc::not_square, "char_poly of non-square matrix");
    const int n = m.rows();
    const long p = m.modulus();
    const PolyFp one = PolyFp::constant(p, 1);

    std::vector<PolyFp> c{one, m.at(0, 0).scaled(-1)}; // char poly of the 1x1 block
    for (int r = 2; r <= n; r++) {
        // q[0] = 1, q[1] = -a_rr, q[k] = -(R . M'^{k-2} . S) for k = 2..r,
        // with M' the (r-1)x(r-1) block, S the column above a_rr, R the row left of it.
        std::vector<PolyFp> q(r + 1, PolyFp(p));
        q[0] = one;
        q[1] = m.at(r - 1, r - 1).scaled(-1);
        std::vector<PolyFp> v(r - 1);
        for (int i = 0; i < r - 1; i++) v[i] = m.at(i, r - 1);
        for (int k = 2; k <= r; k++) {
            PolyFp dot(p);
            for (int i = 0; i < r - 1; i++) dot = dot + m.at(r - 1, i) * v[i];
            q[k] = dot.scaled(-1);
            if (k < r) {
                std::vector<PolyFp> nv(r - 1, PolyFp(p));
                for (int i = 0; i < r - 1; i++)
                    for (int j = 0; j < r - 1; j++) nv[i] = nv[i] + m.at(i, j) * v[j];
                v = std::move(nv);
            }
        }
        // Toeplitz product: next[i] = sum_j q[i-j] * c[j]
        std::vector<PolyFp> next(r + 1, PolyFp(p));
        for (int i = 0; i <= r; i++)
            for (int j = 0; j < (int)c.size(); j++) {
                int k = i - j;
                if (k < 0 || k > r) continue;
                next[i] = next[i] + q[k] * c[j];
            }
        c = std::move(next);
    }
    return c;
}

bool is_nilpotent(const MatPolyFp& m) {
    auto c = char_poly_berkowitz(m);
    for (size_t i = 1; i < c.size(); i++)
        if (!c[i].is_zero()) return false;
    return true;
}

} // namespace rigidconv

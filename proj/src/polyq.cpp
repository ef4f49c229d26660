#include "rigidconv/polyq.hpp"

namespace rigidconv {

namespace {
const Rational kZero{};
}

void PolyQ::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyQ PolyQ::constant(const Rational& a) {
    PolyQ p;
    if (!a.is_zero()) p.c_ = {a};
    return p;
}

PolyQ PolyQ::monomial(int degree, const Rational& a) {
    PolyQ p;
    if (!a.is_zero()) {
        p.c_.assign(degree + 1, Rational(0));
        p.c_[degree] = a;
    }
    return p;
}

PolyQ PolyQ::from_roots(const std::vector<Rational>& roots) {
    PolyQ p = constant(Rational(1));
    for (const auto& r : roots) {
        PolyQ lin(std::vector<Rational>{-r, Rational(1)});
        p = p * lin;
    }
    return p;
}

const Rational& PolyQ::coeff(size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

Rational PolyQ::leading() const {
    if (is_zero()) throw DomainError(Errc::zero_input, "leading coefficient of zero polynomial");
    return c_.back();
}

PolyQ PolyQ::operator-() const {
    PolyQ p;
    p.c_.reserve(c_.size());
    for (const auto& a : c_) p.c_.push_back(-a);
    return p;
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    PolyQ p;
    p.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < p.c_.size(); i++) p.c_[i] = coeff(i) + o.coeff(i);
    p.normalize();
    return p;
}

PolyQ PolyQ::operator-(const PolyQ& o) const {
    PolyQ p;
    p.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < p.c_.size(); i++) p.c_[i] = coeff(i) - o.coeff(i);
    p.normalize();
    return p;
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    PolyQ p;
    if (is_zero() || o.is_zero()) return p;
    p.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); i++)
        for (size_t j = 0; j < o.c_.size(); j++)
            p.c_[i + j] += c_[i] * o.c_[j];
    p.normalize();
    return p;
}

PolyQ PolyQ::scaled(const Rational& a) const {
    PolyQ p;
    if (a.is_zero()) return p;
    p.c_.reserve(c_.size());
    for (const auto& x : c_) p.c_.push_back(x * a);
    return p;
}

PolyQ PolyQ::derivative() const {
    PolyQ p;
    if (c_.size() <= 1) return p;
    p.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); i++) p.c_[i - 1] = c_[i] * Rational((long)i);
    p.normalize();
    return p;
}

Rational PolyQ::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

PolyQ PolyQ::deflate(const Rational& root) const {
    if (is_zero()) throw DomainError(Errc::zero_input, "deflate zero polynomial");
    // synthetic division by (x - root)
    std::vector<Rational> q(c_.size() - 1);
    Rational carry = c_.back();
    for (size_t i = c_.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c_[i] + carry * root;
    }
    if (!carry.is_zero())
        throw DomainError(Errc::invariance_violation, "deflate: nonzero remainder");
    return PolyQ(std::move(q));
}

Int PolyQ::denominator_lcm() const {
    Int l(1);
    for (const auto& a : c_) {
        Int d = a.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

std::string PolyQ::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += c_[i].str();
        } else {
            if (!(c_[i] == Rational(1))) s += c_[i].str() + "*";
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace rigidconv

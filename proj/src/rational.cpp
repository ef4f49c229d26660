#include "rigidconv/rational.hpp"

#include <algorithm>

namespace rigidconv {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::zero_input: return "ZeroInput";
        case Errc::not_square: return "NotSquare";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::duplicate_points: return "DuplicatePoints";
        case Errc::unknown_point: return "UnknownPoint";
        case Errc::non_rational_spectrum: return "NonRationalSpectrum";
        case Errc::resonant: return "Resonant";
        case Errc::not_rigid: return "NotRigid";
        case Errc::not_irreducible: return "NotIrreducible";
        case Errc::stuck: return "Stuck";
        case Errc::integer_parameter: return "IntegerParameter";
        case Errc::indeterminate_conjugacy: return "IndeterminateConjugacy";
        case Errc::bad_prime: return "BadPrime";
        case Errc::symbol_residue: return "SymbolResidue";
        case Errc::invariance_violation: return "InvarianceViolation";
        case Errc::replay_mismatch: return "ReplayMismatch";
        case Errc::empty_quotient: return "EmptyQuotient";
        case Errc::precondition: return "Precondition";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError(Errc::zero_input, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw DomainError(Errc::zero_input, "zero denominator");
    q_ = mpq_class(num) / mpq_class(den);
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    // Accept the typographic minus U+2212 as a leading sign.
    for (size_t i = 0; i < text.size();) {
        if (i + 2 < text.size() && (unsigned char)text[i] == 0xE2 &&
            (unsigned char)text[i + 1] == 0x88 && (unsigned char)text[i + 2] == 0x92) {
            s += '-';
            i += 3;
        } else {
            s += text[i++];
        }
    }
    // strip surrounding whitespace
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("", "empty rational");
    s = s.substr(b, e - b + 1);

    auto slash = s.find('/');
    std::string nums = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string dens = (slash == std::string::npos) ? "1" : s.substr(slash + 1);

    auto check_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); i++)
            if (!isdigit((unsigned char)t[i])) return false;
        return true;
    };
    if (!check_int(nums) || !check_int(dens))
        throw ParseError("", "malformed rational '" + text + "'");

    Int num(nums), den(dens);
    if (sgn(den) == 0) throw ParseError("", "zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Int Rational::height() const {
    return abs(q_.get_num()) + abs(q_.get_den());
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError(Errc::zero_input, "division by zero");
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

long p_adic_valuation(long p, const Int& n) {
    if (sgn(n) == 0) throw DomainError(Errc::zero_input, "valuation of zero");
    Int rem;
    Int pz(p);
    mp_bitcnt_t v = mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return (long)v;
}

long p_adic_valuation(long p, const Rational& x) {
    if (x.is_zero()) throw DomainError(Errc::zero_input, "valuation of zero");
    return p_adic_valuation(p, x.numerator()) - p_adic_valuation(p, x.denominator());
}

std::vector<long> primes_in(long lo, long hi) {
    std::vector<long> out;
    if (hi < 2) return out;
    std::vector<bool> sieve(hi + 1, true);
    sieve[0] = sieve[1] = false;
    for (long i = 2; i * i <= hi; i++)
        if (sieve[i])
            for (long j = i * i; j <= hi; j += i) sieve[j] = false;
    for (long i = std::max(lo, 2L); i <= hi; i++)
        if (sieve[i]) out.push_back(i);
    return out;
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's variant; n odd composite, not a prime power of small primes.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xc0ffee);
    while (true) {
        Int c = rng.get_z_range(n - 3) + 1;
        Int x = rng.get_z_range(n - 2) + 2;
        Int y = x, d = 1;
        Int diff;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x - y;
            if (sgn(diff) == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(Int n, std::vector<std::pair<Int, int>>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc.emplace_back(n, 1);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, acc);
    factor_into(n / d, acc);
}

} // namespace

std::vector<std::pair<Int, int>> factor(const Int& n0) {
    Int n = abs(n0);
    if (sgn(n) == 0) throw DomainError(Errc::zero_input, "factor(0)");
    std::vector<std::pair<Int, int>> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        Int pz(p);
        long v = 0;
        while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
            n /= pz;
            v++;
        }
        if (v) out.emplace_back(pz, (int)v);
    }
    // trial division to 1e6, then rho on what remains
    for (long p = 17; p <= 1000000 && n > 1; p += 2) {
        if (Int(p) * p > n) break;
        Int pz(p);
        long v = 0;
        while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
            n /= pz;
            v++;
        }
        if (v) out.emplace_back(pz, (int)v);
    }
    if (n > 1) {
        std::vector<std::pair<Int, int>> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            int e = 0;
            while (j < rest.size() && rest[j].first == rest[i].first) {
                e += rest[j].second;
                j++;
            }
            out.emplace_back(rest[i].first, e);
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> divisors(const Int& n) {
    auto f = factor(n);
    std::vector<Int> out{Int(1)};
    for (auto& [p, e] : f) {
        size_t base = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; k++) {
            pk *= p;
            for (size_t i = 0; i < base; i++) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long digit_sum(long s, long p) {
    long acc = 0;
    while (s > 0) {
        acc += s % p;
        s /= p;
    }
    return acc;
}

long factorial_valuation(long s, long p) {
    return (s - digit_sum(s, p)) / (p - 1);
}

} // namespace rigidconv

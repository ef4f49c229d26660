#include "rigidconv/probes.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>

#include "rigidconv/convolution.hpp"

namespace rigidconv {

long gauss_valuation(const PolyQ& f, long p) {
    if (f.is_zero()) throw DomainError(Errc::zero_input, "Gauss norm of zero polynomial");
    bool first = true;
    long v = 0;
    for (const auto& a : f.coeffs()) {
        if (a.is_zero()) continue;
        long va = p_adic_valuation(p, a);
        if (first || va < v) v = va;
        first = false;
    }
    return v;
}

long gauss_valuation(const PolyQ& num, const PolyQ& den, long p) {
    return gauss_valuation(num, p) - gauss_valuation(den, p);
}

namespace {

// Valuation of a whole matrix of polynomials: min over nonzero entries.
std::optional<long> matrix_gauss_valuation(const MatPolyQ& m, long p) {
    std::optional<long> v;
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) {
            if (m.at(i, j).is_zero()) continue;
            long e = gauss_valuation(m.at(i, j), p);
            if (!v || e < *v) v = e;
        }
    return v;
}

std::set<long> denominator_primes(const FuchsianSystem& f) {
    std::set<long> out;
    auto add = [&out](const Int& den) {
        if (den == 1) return;
        for (auto& [p, e] : factor(den)) out.insert((long)p.get_si());
    };
    for (const auto& q : f.points) add(q.denominator());
    for (const auto& a : f.residues)
        for (int i = 0; i < a.rows(); i++)
            for (int j = 0; j < a.cols(); j++) add(a.at(i, j).denominator());
    return out;
}

} // namespace

PrimeRadiusEstimate prime_radius(const DerivativeTower& tw, long p, int win_lo, int win_hi) {
    PrimeRadiusEstimate est;
    est.p = p;
    long vd = tw.D.is_zero() ? 0 : gauss_valuation(tw.D, p);
    double best = 0.0;
    for (int s = win_lo; s <= win_hi && s <= tw.depth; s++) {
        auto vp = matrix_gauss_valuation(tw.P[s], p);
        if (!vp) continue; // A_[s] = 0 contributes nothing
        long v = *vp - (long)s * vd - factorial_valuation(s, p);
        est.per_s.emplace_back(s, v);
        if (v < 0) best = std::max(best, (double)(-v) * std::log((double)p) / s);
    }
    est.windowed_log = best;
    return est;
}

namespace {

RhoEstimate rho_impl(const FuchsianSystem& f, int depth, int win_lo, int win_hi,
                     long extra_prime_bound, int threads, bool parallel) {
    validate(f);
    if (depth < 4) throw DomainError(Errc::precondition, "rho depth must be >= 4");
    if (win_lo == 0 && win_hi == 0) {
        win_lo = (depth + 1) / 2;
        win_hi = depth;
    }
    if (win_lo < 1 || win_hi > depth || win_lo > win_hi)
        throw DomainError(Errc::precondition, "window must lie inside [1, depth]");

    DerivativeTower tw = build_tower(f, depth);

    long bound = std::max<long>(depth, extra_prime_bound);
    std::set<long> cand_set;
    for (long p : primes_in(2, bound)) cand_set.insert(p);
    for (long p : denominator_primes(f)) cand_set.insert(p);
    std::vector<long> candidates(cand_set.begin(), cand_set.end());

    std::vector<double> per_prime(candidates.size(), 0.0);
    if (parallel) {
        int k = resolve_threads(threads);
        std::atomic<bool> failed{false};
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(k > 0 ? k : omp_get_max_threads())
        for (size_t i = 0; i < candidates.size(); i++) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                per_prime[i] = prime_radius(tw, candidates[i], win_lo, win_hi).windowed_log;
            } catch (...) {
#pragma omp critical
                {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        }
        if (failed) std::rethrow_exception(err);
    } else {
        for (size_t i = 0; i < candidates.size(); i++)
            per_prime[i] = prime_radius(tw, candidates[i], win_lo, win_hi).windowed_log;
    }

    RhoEstimate est;
    est.depth = depth;
    est.win_lo = win_lo;
    est.win_hi = win_hi;
    double total = 0.0;
    for (size_t i = 0; i < candidates.size(); i++) {
        if (per_prime[i] > 0.0) {
            est.contributions.emplace_back(candidates[i], per_prime[i]);
            total += per_prime[i];
        }
    }
    est.total = total;
    return est;
}

} // namespace

RhoEstimate rho_truncated(const FuchsianSystem& f, int depth, int win_lo, int win_hi,
                          long extra_prime_bound, int threads) {
    return rho_impl(f, depth, win_lo, win_hi, extra_prime_bound, threads, true);
}

RhoEstimate rho_truncated_serial(const FuchsianSystem& f, int depth, int win_lo, int win_hi,
                                 long extra_prime_bound) {
    return rho_impl(f, depth, win_lo, win_hi, extra_prime_bound, 0, false);
}

HBound h_bound(const Rational& lambda) {
    if (lambda.is_integer())
        throw DomainError(Errc::integer_parameter, "h_bound needs lambda outside Z");
    HBound h;
    for (auto& [p, e] : factor(lambda.denominator())) {
        long pl = (long)p.get_si();
        // ord_p lambda = -e < 0 here
        Rational coeff = Rational(1, pl - 1) + Rational((long)e);
        h.terms.emplace_back(pl, coeff);
    }
    std::sort(h.terms.begin(), h.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double v = 0.0;
    for (auto& [p, c] : h.terms) v += c.to_double() * std::log((double)p);
    h.value = v;
    return h;
}

bool is_good_prime(const FuchsianSystem& f, long p, const std::optional<Rational>& lambda) {
    auto unit_den = [p](const Rational& x) { return p_adic_valuation(p, x.denominator()) == 0; };
    for (const auto& q : f.points)
        if (!unit_den(q)) return false;
    for (const auto& a : f.residues)
        for (int i = 0; i < a.rows(); i++)
            for (int j = 0; j < a.cols(); j++)
                if (!a.at(i, j).is_zero() && !unit_den(a.at(i, j))) return false;
    for (size_t i = 0; i < f.points.size(); i++)
        for (size_t j = i + 1; j < f.points.size(); j++)
            if (p_adic_valuation(p, f.points[i] - f.points[j]) != 0) return false;
    if (lambda && !lambda->is_zero() && p_adic_valuation(p, *lambda) < 0) return false;
    return true;
}

std::vector<long> good_primes(const FuchsianSystem& f, long lo, long hi,
                              const std::optional<Rational>& lambda) {
    validate(f);
    std::vector<long> out;
    for (long p : primes_in(lo, hi))
        if (is_good_prime(f, p, lambda)) out.push_back(p);
    return out;
}

PCurvature pcurvature(const FuchsianSystem& f, long p) {
    validate(f);
    if (!is_good_prime(f, p))
        throw DomainError(Errc::bad_prime, std::to_string(p) + " is not a good prime");

    const int n = f.rank, r = f.num_points();
    Fp fp(p);

    PolyFp dbar = PolyFp::reduce(PolyQ::from_roots(f.points), p);
    PolyFp dbar_prime = dbar.derivative();

    // cleared numerator N of A = N / D
    MatPolyFp nbar(n, n, p);
    for (int k = 0; k < r; k++) {
        std::vector<Rational> others;
        for (int j = 0; j < r; j++)
            if (j != k) others.push_back(f.points[j]);
        PolyFp partial = PolyFp::reduce(PolyQ::from_roots(others), p);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                long a = fp.reduce(f.residues[k].at(i, j));
                nbar.at(i, j) = nbar.at(i, j) + partial.scaled(a);
            }
    }

    // symbol triangle with denominators cleared: C_{s,j} = Q_{s,j} / D^s,
    // Q_{s+1,j} = Q_{s,j-1} D + Q_{s,j}' D - s Q_{s,j} D' - N Q_{s,j}
    std::vector<MatPolyFp> row{MatPolyFp::identity(n, p)};
    for (long s = 0; s < p; s++) {
        std::vector<MatPolyFp> next((size_t)s + 2, MatPolyFp(n, n, p));
        for (long j = 0; j <= s; j++) {
            MatPolyFp term = row[j].derivative().scaled(dbar) -
                             row[j].scaled(dbar_prime).scaled(s % p) - nbar * row[j];
            next[j] = next[j] + term;
            next[j + 1] = next[j + 1] + row[j].scaled(dbar);
        }
        row = std::move(next);
    }
    for (long j = 1; j < p; j++)
        if (!row[j].is_zero())
            throw DomainError(Errc::symbol_residue,
                              "middle symbol coefficient C_{p," + std::to_string(j) +
                                  "} nonzero at p = " + std::to_string(p));

    PCurvature psi;
    psi.p = p;
    psi.num = row[0];
    psi.den = dbar;
    return psi;
}

const char* pstatus_name(PStatus s) {
    switch (s) {
        case PStatus::zero: return "zero";
        case PStatus::nilpotent: return "nilpotent";
        case PStatus::non_nilpotent: return "non_nilpotent";
        case PStatus::bad_prime: return "bad_prime";
    }
    return "?";
}

PCurvatureReport classify_prime(const FuchsianSystem& f, long p) {
    PCurvatureReport rep;
    rep.p = p;
    if (!is_good_prime(f, p)) {
        rep.status = PStatus::bad_prime;
        return rep;
    }
    PCurvature psi = pcurvature(f, p);
    if (psi.num.is_zero()) {
        rep.status = PStatus::zero;
        return rep;
    }
    auto cp = char_poly_berkowitz(psi.num);
    rep.status = PStatus::nilpotent;
    for (size_t i = 1; i < cp.size(); i++) {
        if (cp[i].is_zero()) continue;
        rep.status = PStatus::non_nilpotent;
        rep.witness_degree = (int)(cp.size() - 1 - i);
        rep.witness_poly = cp[i].str();
        break;
    }
    return rep;
}

std::vector<PCurvatureReport> nilpotency_sweep_serial(const FuchsianSystem& f, long lo, long hi) {
    validate(f);
    std::vector<long> ps = primes_in(lo, hi);
    std::vector<PCurvatureReport> out(ps.size());
    for (size_t i = 0; i < ps.size(); i++) out[i] = classify_prime(f, ps[i]);
    return out;
}

std::vector<PCurvatureReport> nilpotency_sweep(const FuchsianSystem& f, long lo, long hi,
                                               int threads) {
    validate(f);
    std::vector<long> ps = primes_in(lo, hi);
    std::vector<PCurvatureReport> out(ps.size());
    int k = resolve_threads(threads);
    std::atomic<bool> failed{false};
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(k > 0 ? k : omp_get_max_threads())
    for (size_t i = 0; i < ps.size(); i++) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            out[i] = classify_prime(f, ps[i]);
        } catch (...) {
#pragma omp critical
            {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        }
    }
    if (failed) std::rethrow_exception(err);
    return out;
}

SweepSummary summarize(const std::vector<PCurvatureReport>& reports) {
    SweepSummary s;
    for (const auto& r : reports) switch (r.status) {
            case PStatus::zero: s.zero++; break;
            case PStatus::nilpotent: s.nilpotent++; break;
            case PStatus::non_nilpotent: s.non_nilpotent++; break;
            case PStatus::bad_prime: s.bad++; break;
        }
    return s;
}

double SweepSummary::nilpotent_fraction() const {
    int g = good();
    return g == 0 ? 0.0 : (double)(zero + nilpotent) / g;
}

InequalityReport inequality_report(const FuchsianSystem& f, const Rational& lambda, int depth,
                                   int threads) {
    validate(f);
    InequalityReport rep;
    rep.depth = depth;
    rep.n = f.rank;
    rep.rho_input = rho_truncated(f, depth, 0, 0, 0, threads).total;
    try {
        auto [g, ws] = middle_convolution(f, lambda);
        FuchsianSystem pruned = prune_apparent(g);
        rep.rho_convolved =
            pruned.points.empty() ? 0.0 : rho_truncated(pruned, depth, 0, 0, 0, threads).total;
    } catch (const DomainError& e) {
        if (e.code() != Errc::empty_quotient) throw;
        rep.rho_convolved = 0.0; // punctual image: nothing left to measure
    }
    rep.h_lambda = h_bound(lambda).value;
    rep.bound = (double)(f.rank * f.rank + 1) * (rep.rho_input + rep.h_lambda);
    rep.holds = rep.rho_convolved <= rep.bound + 1e-12;
    return rep;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const char* env = std::getenv("RIGIDCONV_THREADS");
    if (env && *env) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return (int)v;
    }
    return 0; // OpenMP default
}

} // namespace rigidconv

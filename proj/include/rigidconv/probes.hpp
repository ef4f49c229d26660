#pragma once

#include <optional>

#include "rigidconv/polyfp.hpp"
#include "rigidconv/tower.hpp"

namespace rigidconv {

/// Gauss valuation of a nonzero polynomial at p: min over coefficient
/// valuations; the Gauss norm is p^(-v). Throws zero_input on 0.
long gauss_valuation(const PolyQ& f, long p);
/// Ratio form: valuation of num/den via the quotient of norms.
long gauss_valuation(const PolyQ& num, const PolyQ& den, long p);

/// Per-prime data behind one rho contribution: the valuation of
/// A_[s]/s! for each s in the window, and the windowed log-defect
/// max_s (1/s) log max{1, p^(-v_s)}.
struct PrimeRadiusEstimate {
    long p = 0;
    // (s, valuation of A_[s]/s! at p); entries with zero A_[s] are omitted
    std::vector<std::pair<int, long>> per_s;
    double windowed_log = 0.0;
};

PrimeRadiusEstimate prime_radius(const DerivativeTower& tw, long p, int win_lo, int win_hi);

/// Truncated global inverse radius: sum over candidate primes of the
/// windowed log-defect. Candidates are the primes <= max(depth, pmax)
/// together with every prime dividing an input denominator; primes outside
/// that set contribute 0 for s <= depth.
struct RhoEstimate {
    int depth = 0;
    int win_lo = 0, win_hi = 0;
    std::vector<std::pair<long, double>> contributions; // positive only, sorted by p
    double total = 0.0;
};

RhoEstimate rho_truncated(const FuchsianSystem& f, int depth, int win_lo = 0, int win_hi = 0,
                          long extra_prime_bound = 0, int threads = 0);
RhoEstimate rho_truncated_serial(const FuchsianSystem& f, int depth, int win_lo = 0,
                                 int win_hi = 0, long extra_prime_bound = 0);

/// H(lambda) = sum over primes with ord_p(lambda) < 0 of
/// (1/(p-1) - ord_p lambda) log p, as an exact term list plus its value.
struct HBound {
    std::vector<std::pair<long, Rational>> terms;
    double value = 0.0;
};

HBound h_bound(const Rational& lambda);

/// Primes in [lo, hi] at which the system reduces faithfully: no input
/// denominator vanishes, all point differences are p-adic units, and
/// ord_p(lambda) >= 0 when lambda is given.
std::vector<long> good_primes(const FuchsianSystem& f, long lo, long hi,
                              const std::optional<Rational>& lambda = std::nullopt);
bool is_good_prime(const FuchsianSystem& f, long p,
                   const std::optional<Rational>& lambda = std::nullopt);

/// p-curvature psi = C_{p,0}, the linear part of (d/dt - A)^p over F_p(t),
/// stored with denominators cleared as psi = num / D^p. The full symbol
/// triangle C_{s,j} is computed and the middle coefficients C_{p,j},
/// 1 <= j <= p-1, are checked to vanish (throws symbol_residue otherwise).
struct PCurvature {
    long p = 0;
    MatPolyFp num; // psi * D^p
    PolyFp den;    // D mod p (denominator is den^p)
};

PCurvature pcurvature(const FuchsianSystem& f, long p);

enum class PStatus { zero, nilpotent, non_nilpotent, bad_prime };

const char* pstatus_name(PStatus s);

struct PCurvatureReport {
    long p = 0;
    PStatus status = PStatus::bad_prime;
    // for non_nilpotent: first nonzero char poly coefficient below the top
    int witness_degree = -1;     // degree in x of that coefficient
    std::string witness_poly;    // its value in F_p[t]
};

PCurvatureReport classify_prime(const FuchsianSystem& f, long p);

struct SweepSummary {
    int zero = 0, nilpotent = 0, non_nilpotent = 0, bad = 0;
    int total() const { return zero + nilpotent + non_nilpotent + bad; }
    int good() const { return zero + nilpotent + non_nilpotent; }
    /// Fraction of good primes with zero-or-nilpotent p-curvature; the
    /// density proxy for "a.e. nilpotent" (evidence, not proof).
    double nilpotent_fraction() const;
};

/// Per-prime verdicts over all primes in [lo, hi], sorted by p; bad primes
/// reported as bad_prime. The parallel version fans the primes out over
/// OpenMP workers; output is identical to the serial reference for every
/// thread count.
std::vector<PCurvatureReport> nilpotency_sweep(const FuchsianSystem& f, long lo, long hi,
                                               int threads = 0);
std::vector<PCurvatureReport> nilpotency_sweep_serial(const FuchsianSystem& f, long lo, long hi);

SweepSummary summarize(const std::vector<PCurvatureReport>& reports);

/// Truncated check of the convolution radius inequality
/// rho(mc_lambda F) <= (n^2+1) (rho(F) + H(lambda)); report-only since
/// truncations are not the limsup.
struct InequalityReport {
    int depth = 0;
    int n = 0;
    double rho_input = 0.0;
    double rho_convolved = 0.0;
    double h_lambda = 0.0;
    double bound = 0.0;
    bool holds = false;
};

InequalityReport inequality_report(const FuchsianSystem& f, const Rational& lambda, int depth,
                                   int threads = 0);

/// Worker count for prime sweeps: explicit value, or RIGIDCONV_THREADS when
/// requested == 0 (0/unset means the OpenMP default).
int resolve_threads(int requested);

} // namespace rigidconv

#pragma once

#include "rigidconv/convolution.hpp"
#include "rigidconv/probes.hpp"

namespace rigidconv {

/// One rank-reduction step: twist, convolve with lambda, prune.
struct KatzStep {
    RankOneTwist twist;
    Rational lambda;
    int rank_before = 0;
    int rank_after = 0;
    // points removed because their residue became zero, with their index in
    // the pre-prune point list (needed to undo the prune on replay)
    std::vector<std::pair<int, Rational>> pruned_points;
};

struct KatzTrace {
    FuchsianSystem input;
    std::vector<KatzStep> steps;
    FuchsianSystem terminal;
};

/// Errors raised mid-reduction carry the partial trace.
class KatzError : public DomainError {
public:
    KatzError(const DomainError& e, KatzTrace partial)
        : DomainError(e), partial_(std::move(partial)) {}
    const KatzTrace& partial() const { return partial_; }

private:
    KatzTrace partial_;
};

/// alpha_i = -(max-multiplicity eigenvalue of A_i); twisting by this makes
/// the chosen eigenvalue 0 at each finite point, maximizing dim ker.
RankOneTwist select_twist(const FuchsianSystem& f);

/// First eigenvalue of the infinity residue (in the deterministic order)
/// that is not an integer and strictly drops the rank under mc. Throws
/// stuck when no candidate qualifies.
Rational select_lambda(const FuchsianSystem& twisted, int original_rank);

std::pair<KatzStep, FuchsianSystem> katz_step(const FuchsianSystem& f);

/// Iterate katz_step to rank one. Terminates in < rank(F) steps; the
/// rigidity index is re-asserted = 2 and absolute irreducibility re-checked
/// at every intermediate.
KatzTrace katz_reduce(const FuchsianSystem& f);

/// Starting from the terminal, undo each step in reverse (un-prune,
/// mc_{-lambda}, inverse twist). Returns the reconstructed system; throws
/// replay_mismatch when it fails the isomorphism check against the input.
FuchsianSystem replay(const KatzTrace& trace);

/// Evidence channels of the rigid-equivalence theorem at desk scale.
struct HarnessSystemReport {
    std::string role; // "input", "step k", "terminal"
    int rank = 0;
    SweepSummary sweep;
    double rho_total = 0.0;
    bool rho_stable = false; // unchanged when the extra prime bound doubles
};

struct HarnessReport {
    std::vector<HarnessSystemReport> systems;
    bool nilpotent_channel = false; // all good primes zero-or-nilpotent, all systems
    bool type_g_channel = false;    // rho finite and stable, all systems
    bool terminal_channel = false;  // terminal rank-one has all-zero p-curvature
    bool agree = false;
    std::vector<KatzStep> steps;
};

HarnessReport equivalence_harness(const FuchsianSystem& f, long prime_lo, long prime_hi,
                                  int depth, int threads = 0);

} // namespace rigidconv

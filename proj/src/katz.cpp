#include "rigidconv/katz.hpp"

#include <algorithm>

namespace rigidconv {

RankOneTwist select_twist(const FuchsianSystem& f) {
    validate(f);
    RankOneTwist t;
    for (const auto& a : f.residues) {
        auto eigs = rational_eigenvalues(a); // throws non_rational_spectrum
        t.alphas.push_back(-eigs.front().first); // order already (mult desc, height, value)
    }
    return t;
}

Rational select_lambda(const FuchsianSystem& twisted, int original_rank) {
    validate(twisted);
    auto eigs = rational_eigenvalues(infinity_residue(twisted));
    for (const auto& [cand, mult] : eigs) {
        if (cand.is_integer()) continue;
        int out = mc_rank(twisted, cand);
        if (out >= 1 && out < original_rank) return cand;
    }
    throw DomainError(Errc::stuck,
                      "no non-integral infinity eigenvalue drops the rank "
                      "(non-rigid, resonant, or reducible input)");
}

std::pair<KatzStep, FuchsianSystem> katz_step(const FuchsianSystem& f) {
    validate(f);
    if (f.rank <= 1)
        throw DomainError(Errc::precondition, "katz_step requires rank > 1");
    if (!is_absolutely_irreducible(f))
        throw DomainError(Errc::not_irreducible, "input is not absolutely irreducible");
    int idx = rigidity_index(f); // throws resonant / non_rational_spectrum
    if (idx != 2)
        throw DomainError(Errc::not_rigid,
                          "rigidity index is " + std::to_string(idx) + ", expected 2");

    KatzStep step;
    step.rank_before = f.rank;
    step.twist = select_twist(f);
    FuchsianSystem tw = twist(f, step.twist);
    step.lambda = select_lambda(tw, f.rank);

    // the selected lambda realizes its full multiplicity as kernel dimension
    {
        MatQ shifted = -infinity_residue(tw);
        for (int i = 0; i < tw.rank; i++) shifted.at(i, i) += step.lambda;
        auto eigs = rational_eigenvalues(infinity_residue(tw));
        int mult = 0;
        for (auto& [e, m] : eigs)
            if (e == step.lambda) mult = m;
        if ((int)kernel_basis(shifted).size() != mult)
            throw DomainError(Errc::invariance_violation,
                              "selected lambda eigenvalue is not semisimple");
    }

    auto [conv, ws] = middle_convolution(tw, step.lambda);
    FuchsianSystem next;
    next.rank = conv.rank;
    for (size_t i = 0; i < conv.points.size(); i++) {
        if (conv.residues[i].is_zero()) {
            step.pruned_points.emplace_back((int)i, conv.points[i]);
        } else {
            next.points.push_back(conv.points[i]);
            next.residues.push_back(conv.residues[i]);
        }
    }
    step.rank_after = next.rank;
    if (step.rank_after >= step.rank_before)
        throw DomainError(Errc::stuck, "convolution did not drop the rank");
    return {std::move(step), std::move(next)};
}

KatzTrace katz_reduce(const FuchsianSystem& f) {
    validate(f);
    KatzTrace trace;
    trace.input = f;
    trace.terminal = f;
    while (trace.terminal.rank > 1) {
        try {
            auto [step, next] = katz_step(trace.terminal);
            trace.steps.push_back(step);
            trace.terminal = next;
            if (trace.terminal.rank > 1) {
                if (!is_absolutely_irreducible(trace.terminal))
                    throw DomainError(Errc::invariance_violation,
                                      "irreducibility lost across a step");
                if (rigidity_index(trace.terminal) != 2)
                    throw DomainError(Errc::invariance_violation,
                                      "rigidity index left 2 across a step");
            }
        } catch (const DomainError& e) {
            throw KatzError(e, trace);
        }
    }
    return trace;
}

FuchsianSystem replay(const KatzTrace& trace) {
    FuchsianSystem cur = trace.terminal;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        // undo the prune: reinsert zero residues at their recorded positions
        FuchsianSystem unpruned;
        unpruned.rank = cur.rank;
        int total = (int)cur.points.size() + (int)it->pruned_points.size();
        size_t kept = 0, removed = 0;
        for (int i = 0; i < total; i++) {
            if (removed < it->pruned_points.size() && it->pruned_points[removed].first == i) {
                unpruned.points.push_back(it->pruned_points[removed].second);
                unpruned.residues.push_back(MatQ(cur.rank, cur.rank));
                removed++;
            } else {
                unpruned.points.push_back(cur.points[kept]);
                unpruned.residues.push_back(cur.residues[kept]);
                kept++;
            }
        }
        auto [back, ws] = middle_convolution(unpruned, -it->lambda);
        cur = twist(back, negated(it->twist));
    }
    if (!is_isomorphic(prune_apparent(cur), prune_apparent(trace.input)))
        throw DomainError(Errc::replay_mismatch,
                          "replayed system is not isomorphic to the input");
    return cur;
}

HarnessReport equivalence_harness(const FuchsianSystem& f, long prime_lo, long prime_hi,
                                  int depth, int threads) {
    validate(f);
    if (f.rank > 1) {
        if (!is_absolutely_irreducible(f))
            throw DomainError(Errc::not_irreducible, "harness input is not absolutely irreducible");
        int idx = rigidity_index(f);
        if (idx != 2)
            throw DomainError(Errc::not_rigid,
                              "rigidity index is " + std::to_string(idx) + ", expected 2");
    }

    KatzTrace trace = katz_reduce(f);

    // chain: input, every intermediate, terminal
    std::vector<std::pair<std::string, FuchsianSystem>> chain;
    chain.emplace_back("input", f);
    {
        FuchsianSystem cur = f;
        for (size_t i = 0; i < trace.steps.size(); i++) {
            cur = katz_step(cur).second; // deterministic, reproduces the trace
            chain.emplace_back(i + 1 == trace.steps.size() ? "terminal"
                                                           : "step " + std::to_string(i + 1),
                               cur);
        }
        if (trace.steps.empty()) chain.emplace_back("terminal", f);
    }

    HarnessReport rep;
    rep.steps = trace.steps;
    bool nilp = true, typeg = true;
    for (auto& [role, sys] : chain) {
        HarnessSystemReport r;
        r.role = role;
        r.rank = sys.rank;
        auto reports = nilpotency_sweep(sys, prime_lo, prime_hi, threads);
        r.sweep = summarize(reports);
        if (r.sweep.non_nilpotent > 0) nilp = false;
        auto rho1 = rho_truncated(sys, depth, 0, 0, 0, threads);
        auto rho2 = rho_truncated(sys, depth, 0, 0, 2 * std::max<long>(depth, prime_hi), threads);
        r.rho_total = rho1.total;
        r.rho_stable = rho1.total == rho2.total;
        if (!r.rho_stable) typeg = false;
        rep.systems.push_back(std::move(r));
    }
    rep.nilpotent_channel = nilp;
    rep.type_g_channel = typeg;
    // decisive rank-one verdict: vanishing p-curvature at every good prime
    const auto& term = rep.systems.back();
    rep.terminal_channel = term.rank == 1 && term.sweep.nilpotent == 0 &&
                           term.sweep.non_nilpotent == 0;
    rep.agree = rep.nilpotent_channel && rep.type_g_channel && rep.terminal_channel;
    return rep;
}

} // namespace rigidconv

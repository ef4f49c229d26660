#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rigidconv/katz.hpp"
#include "rigidconv/systemio.hpp"

using namespace rigidconv;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SystemDocument load(const std::string& path) {
    return parse_document(read_file(path));
}

// Plain-text rendering of the same JSON payload.
void render_table(const json& j, std::ostream& os, const std::string& prefix = "") {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it->is_object() || it->is_array()) {
                render_table(*it, os, key);
            } else {
                os << key << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); i++) {
            std::string key = prefix + "[" + std::to_string(i) + "]";
            if (j[i].is_object() || j[i].is_array()) {
                render_table(j[i], os, key);
            } else {
                os << key << ": " << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump())
                   << "\n";
            }
        }
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

void emit(const json& j, const std::string& format) {
    if (format == "table")
        render_table(j, std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

json sweep_json(const std::vector<PCurvatureReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json e;
        e["p"] = r.p;
        e["status"] = pstatus_name(r.status);
        if (r.status == PStatus::non_nilpotent) {
            e["witness_degree"] = r.witness_degree;
            e["witness"] = r.witness_poly;
        }
        arr.push_back(e);
    }
    return arr;
}

json summary_json(const SweepSummary& s) {
    json j;
    j["zero"] = s.zero;
    j["nilpotent"] = s.nilpotent;
    j["non_nilpotent"] = s.non_nilpotent;
    j["bad_prime"] = s.bad;
    // density proxy over the swept range; evidence, not proof
    j["nilpotent_fraction"] = s.nilpotent_fraction();
    j["label"] = "heuristic";
    return j;
}

json steps_json(const std::vector<KatzStep>& steps) {
    json arr = json::array();
    for (const auto& s : steps) {
        json e;
        json alphas = json::array();
        for (const auto& a : s.twist.alphas) alphas.push_back(a.str());
        e["alphas"] = alphas;
        e["lambda"] = s.lambda.str();
        e["rank_before"] = s.rank_before;
        e["rank_after"] = s.rank_after;
        json pruned = json::array();
        for (const auto& [idx, q] : s.pruned_points) pruned.push_back(q.str());
        e["pruned_points"] = pruned;
        arr.push_back(e);
    }
    return arr;
}

struct Range {
    long lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    auto pos = text.find("..");
    try {
        if (pos != std::string::npos)
            return {std::stol(text.substr(0, pos)), std::stol(text.substr(pos + 2))};
    } catch (const std::exception&) {
    }
    throw ParseError("", "range must be LO..HI, got '" + text + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for Fuchsian systems: middle convolution, "
                 "p-curvature sweeps, truncated inverse radii, Katz reduction"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));

    std::string file, lambda_s, alphas_s, primes_s = "2..50", window_s, name;
    int smax = 64;
    long pmax = 0;
    bool do_replay = false, do_prune = false;

    auto* c_validate = app.add_subcommand("validate", "check a system file and re-emit it");
    c_validate->add_option("file", file)->required();

    auto* c_mc = app.add_subcommand("mc", "middle convolution mc_lambda");
    c_mc->add_option("file", file)->required();
    c_mc->add_option("--lambda", lambda_s, "rational parameter outside Z")->required();
    c_mc->add_flag("--prune", do_prune, "drop points whose residue became zero");

    auto* c_twist = app.add_subcommand("twist", "shift residues by scalars");
    c_twist->add_option("file", file)->required();
    c_twist->add_option("--alphas", alphas_s, "comma-separated rationals, one per point")
        ->required();

    auto* c_pcurv = app.add_subcommand("pcurvature", "nilpotency sweep over a prime range");
    c_pcurv->add_option("file", file)->required();
    c_pcurv->add_option("--primes", primes_s, "prime range LO..HI");

    auto* c_rho = app.add_subcommand("rho", "truncated global inverse radius");
    c_rho->add_option("file", file)->required();
    c_rho->add_option("--smax", smax, "tower depth");
    c_rho->add_option("--window", window_s, "window LO..HI inside [1, smax]");
    c_rho->add_option("--pmax", pmax, "extra candidate prime bound");

    auto* c_hbound = app.add_subcommand("hbound", "the Kummer-kernel bound H(lambda)");
    c_hbound->add_option("--lambda", lambda_s)->required();

    auto* c_rig = app.add_subcommand("rigidity", "irreducibility, resonance, rigidity index");
    c_rig->add_option("file", file)->required();

    auto* c_katz = app.add_subcommand("katz", "reduce a rigid system to rank one");
    c_katz->add_option("file", file)->required();
    c_katz->add_flag("--replay", do_replay, "verify the trace by replaying it backwards");

    auto* c_check = app.add_subcommand("check", "equivalence harness over a rigid system");
    c_check->add_option("file", file)->required();
    c_check->add_option("--primes", primes_s, "prime range LO..HI");
    c_check->add_option("--smax", smax, "tower depth");

    auto* c_ineq = app.add_subcommand("inequality", "truncated convolution radius inequality");
    c_ineq->add_option("file", file)->required();
    c_ineq->add_option("--lambda", lambda_s)->required();
    c_ineq->add_option("--smax", smax, "tower depth");

    auto* c_examples = app.add_subcommand("examples", "list or emit the shipped corpus");
    c_examples->add_option("name", name, "corpus entry to emit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    int threads = resolve_threads(0);

    try {
        if (*c_validate) {
            SystemDocument doc = load(file);
            json out;
            out["valid"] = true;
            out["system"] = document_json(doc);
            emit(out, format);
        } else if (*c_mc) {
            SystemDocument doc = load(file);
            Rational lam = Rational::parse(lambda_s);
            auto [g, ws] = middle_convolution(doc.system, lam);
            json out;
            out["lambda"] = lam.str();
            out["input_rank"] = doc.system.rank;
            out["k_dim"] = (long)ws.k_basis.size();
            out["l_dim"] = (long)ws.l_basis.size();
            json apparent = json::array();
            for (size_t i = 0; i < g.points.size(); i++)
                if (g.residues[i].is_zero()) apparent.push_back(g.points[i].str());
            out["apparent_points"] = apparent;
            SystemDocument res;
            res.system = do_prune ? prune_apparent(g) : g;
            out["output"] = document_json(res);
            emit(out, format);
        } else if (*c_twist) {
            SystemDocument doc = load(file);
            RankOneTwist t;
            std::stringstream ss(alphas_s);
            std::string item;
            while (std::getline(ss, item, ',')) t.alphas.push_back(Rational::parse(item));
            SystemDocument res;
            res.system = twist(doc.system, t);
            json out;
            out["output"] = document_json(res);
            emit(out, format);
        } else if (*c_pcurv) {
            SystemDocument doc = load(file);
            Range r = parse_range(primes_s);
            auto reports = nilpotency_sweep(doc.system, r.lo, r.hi, threads);
            json out;
            out["primes"] = sweep_json(reports);
            out["summary"] = summary_json(summarize(reports));
            emit(out, format);
        } else if (*c_rho) {
            SystemDocument doc = load(file);
            int wlo = 0, whi = 0;
            if (!window_s.empty()) {
                Range w = parse_range(window_s);
                wlo = (int)w.lo;
                whi = (int)w.hi;
            }
            auto est = rho_truncated(doc.system, smax, wlo, whi, pmax, threads);
            json out;
            out["smax"] = est.depth;
            out["window"] = json::array({est.win_lo, est.win_hi});
            json contrib = json::array();
            for (auto& [p, v] : est.contributions) {
                json e;
                e["p"] = p;
                e["value"] = v;
                contrib.push_back(e);
            }
            out["contributions"] = contrib;
            out["total"] = est.total;
            emit(out, format);
        } else if (*c_hbound) {
            Rational lam = Rational::parse(lambda_s);
            HBound h = h_bound(lam);
            json out;
            json terms = json::array();
            for (auto& [p, c] : h.terms) terms.push_back(json::array({p, c.str()}));
            out["terms"] = terms;
            out["value"] = h.value;
            emit(out, format);
        } else if (*c_rig) {
            SystemDocument doc = load(file);
            json out;
            out["irreducible"] = is_absolutely_irreducible(doc.system);
            bool nonres = is_non_resonant(doc.system);
            out["non_resonant"] = nonres;
            if (nonres) {
                int idx = rigidity_index(doc.system);
                out["rigidity_index"] = idx;
                out["rigid"] = out["irreducible"].get<bool>() && idx == 2;
            }
            emit(out, format);
        } else if (*c_katz) {
            SystemDocument doc = load(file);
            KatzTrace trace = katz_reduce(doc.system);
            json out;
            out["steps"] = steps_json(trace.steps);
            SystemDocument term;
            term.system = trace.terminal;
            out["terminal"] = document_json(term);
            if (do_replay) {
                replay(trace); // throws on mismatch
                out["replay"] = "isomorphic";
            }
            emit(out, format);
        } else if (*c_check) {
            SystemDocument doc = load(file);
            Range r = parse_range(primes_s);
            HarnessReport rep = equivalence_harness(doc.system, r.lo, r.hi, smax, threads);
            json out;
            json systems = json::array();
            for (const auto& s : rep.systems) {
                json e;
                e["role"] = s.role;
                e["rank"] = s.rank;
                e["sweep"] = summary_json(s.sweep);
                e["rho_total"] = s.rho_total;
                e["rho_stable"] = s.rho_stable;
                systems.push_back(e);
            }
            out["systems"] = systems;
            out["steps"] = steps_json(rep.steps);
            out["nilpotent_channel"] = rep.nilpotent_channel;
            out["type_g_channel"] = rep.type_g_channel;
            out["terminal_channel"] = rep.terminal_channel;
            out["agree"] = rep.agree;
            emit(out, format);
        } else if (*c_ineq) {
            SystemDocument doc = load(file);
            Rational lam = Rational::parse(lambda_s);
            auto rep = inequality_report(doc.system, lam, smax, threads);
            json out;
            out["smax"] = rep.depth;
            out["n"] = rep.n;
            out["rho_input"] = rep.rho_input;
            out["rho_convolved"] = rep.rho_convolved;
            out["h_lambda"] = rep.h_lambda;
            out["bound"] = rep.bound;
            out["holds"] = rep.holds;
            emit(out, format);
        } else if (*c_examples) {
            if (name.empty()) {
                json out;
                json entries = json::array();
                for (const auto& d : corpus()) {
                    json e;
                    e["name"] = d.name;
                    e["description"] = d.description;
                    e["rank"] = d.system.rank;
                    entries.push_back(e);
                }
                out["entries"] = entries;
                emit(out, format);
            } else {
                emit(document_json(corpus_get(name)), format);
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const KatzError& e) {
        std::cerr << "error: " << e.what() << " (after " << e.partial().steps.size()
                  << " completed steps)\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

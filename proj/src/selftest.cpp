#include "tfz/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "tfz/amgm.hpp"
#include "tfz/resolution.hpp"
#include "tfz/rng.hpp"
#include "tfz/solvers.hpp"
#include "tfz/soundness.hpp"

namespace tfz {

namespace {

SuiteResult make(const std::string& module, const std::string& inv, bool pass, const std::string& detail) {
    return {module, inv, pass, detail};
}

SuiteResult totality_suite(int per_problem, std::uint64_t seed) {
    static const std::vector<std::pair<std::string, std::string>> kinds = {
        {"lossy", ""},         {"lossy", "bijective"},   {"empty-child", "standard"}, {"empty-child", "prime"},
        {"empty-child", "with_height"}, {"nephew", ""},  {"nephew", "inverse"},       {"dlo", ""},
        {"amgm", ""},          {"metered-line", "sink"}, {"metered-line", "end"},     {"sink-of-dag", ""},
        {"weak-pigeon", ""},   {"btree-leaf", ""},       {"lossy+line", ""}};
    Rng rng(seed);
    int empty = 0, total = 0;
    std::string first;
    for (const auto& [p, v] : kinds) {
        for (int k = 0; k < per_problem; ++k) {
            GenSpec s;
            s.problem = p;
            s.variant = v;
            s.seed = rng();
            s.mode = k % 2 ? "planted" : "uniform";
            s.size = rng.uniform(2, 12);
            if (p == "weak-pigeon") s.size = rng.uniform(1, 6);
            if (p == "amgm") s.size = rng.uniform(1, 3);
            Generated g = gen_instance(s);
            ++total;
            if (brute_solve(g.instance).empty()) {
                ++empty;
                if (first.empty()) first = p + " seed " + std::to_string(s.seed);
            }
        }
    }
    return make("problems", "totality", empty == 0,
                std::to_string(total) + " instances, " + std::to_string(empty) + " without solutions" +
                    (first.empty() ? "" : " (first: " + first + ")"));
}

SuiteResult soundness_suite(Index count, std::uint64_t seed) {
    Index fails = 0, sols = 0;
    std::string first;
    for (const auto& rule : rule_names()) {
        if (rule == "identity") continue;
        auto rep = soundness_sweep(rule, count, seed);
        fails += rep.failures;
        sols += rep.target_solutions;
        if (!rep.notes.empty() && first.empty()) first = rep.notes.front();
    }
    return make("reductions", "back-map soundness", fails == 0,
                std::to_string(sols) + " target solutions, " + std::to_string(fails) + " failures" +
                    (first.empty() ? "" : " (" + first + ")"));
}

using Checker = std::function<bool(const Instance&, const Solution&)>;

Checker checker_for(const std::string& mutate) {
    if (mutate.empty()) return [](const Instance& i, const Solution& s) { return verify(i, s); };
    const auto& known = verifier_mutations();
    if (std::find(known.begin(), known.end(), mutate) == known.end())
        throw UsageError("unknown verifier mutation '" + mutate + "'");
    return [mutate](const Instance& i, const Solution& s) {
        bool ok = verify(i, s);
        return s.problem + "." + s.variant == mutate ? !ok : ok;
    };
}

SuiteResult zero_error_suite(int runs, std::uint64_t seed, const std::string& mutate) {
    Checker check = checker_for(mutate);
    Rng rng(seed);
    int bad = 0, hits = 0;
    static const char* problems[] = {"lossy", "empty-child", "nephew", "btree-leaf"};
    for (int k = 0; k < runs; ++k) {
        GenSpec s;
        s.problem = problems[k % 4];
        s.seed = rng();
        s.size = rng.uniform(1, 32);
        s.mode = (k / 4) % 2 ? "planted" : "uniform";
        Generated g = gen_instance(s);
        RandomizedOutcome o = solve_random(g.instance, rng);
        if (o.result) {
            ++hits;
            if (!check(g.instance, *o.result)) ++bad;
        }
    }
    return make("tfzpp-solvers", "zero-error", bad == 0,
                std::to_string(runs) + " runs, " + std::to_string(hits) + " non-bottom, " + std::to_string(bad) +
                    " invalid" + (mutate.empty() ? "" : " (mutated verifier " + mutate + ")"));
}

SuiteResult btreeleaf_bound_suite(int instances, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 1;
    for (int k = 0; k < instances; ++k) {
        Index V = rng.uniform(1, 512);
        BTreeLeafInstance I = random_btreeleaf(V, rng);
        Index words = Index{1} << btreeleaf_word_length(V), good = 0;
        QueryLedger L;
        for (Index w = 1; w <= words; ++w) good += btreeleaf_walk(I, w, L).leaf;
        worst = std::min(worst, static_cast<double>(good) / static_cast<double>(words));
    }
    std::ostringstream os;
    os << instances << " instances, worst solution-word fraction " << worst;
    return make("tfzpp-solvers", "btreeleaf >= 5/6", worst >= 5.0 / 6.0, os.str());
}

SuiteResult find_children_suite(int instances, std::uint64_t seed) {
    Rng rng(seed);
    int bad = 0, checked = 0;
    for (int k = 0; k < instances; ++k) {
        GenSpec s;
        s.problem = "nephew";
        s.seed = rng();
        s.size = rng.uniform(1, 32);
        s.mode = k % 2 ? "planted" : "uniform";
        NephewInstance I = std::get<NephewInstance>(gen_instance(s).instance);
        auto lvl = compute_levels(I.f);
        QueryLedger L;
        auto f = [&](Index x) { return I.f(x, L); };
        for (Index v = 1; v <= I.V; ++v) {
            Children c = find_children(I, v, L);
            if (c.leaf) continue;
            ++checked;
            bool ok = c.a != c.b && f(c.a) != f(c.b) && f(f(c.a)) == f(v) && f(f(c.b)) == f(v);
            if (lvl[v] >= 2) ok = ok && lvl[c.a] == lvl[v] + 1 && lvl[c.b] == lvl[v] + 1;
            bad += !ok;
        }
    }
    return make("reductions", "find_children properties", bad == 0,
                std::to_string(checked) + " non-bottom outputs, " + std::to_string(bad) + " violations");
}

SuiteResult resolution_suite(int cnfs, std::uint64_t seed) {
    Rng rng(seed);
    int bad = 0;
    for (int k = 0; k < cnfs; ++k) {
        Cnf F;
        do {
            F.n = static_cast<int>(rng.uniform(2, 8));
            F.clauses.clear();
            for (int c = 0; c < 5 * F.n; ++c) {
                std::vector<Literal> lits;
                for (int t = 0; t < 3; ++t) {
                    int v = static_cast<int>(rng.uniform(1, F.n));
                    lits.push_back(rng.coin() ? v : -v);
                }
                try {
                    F.clauses.push_back(make_clause(lits));
                } catch (const UsageError&) {
                }
            }
        } while (!brute_unsat(F));
        // query variables in order until a clause is falsified
        DecisionTree T;
        std::function<int(int, Assignment)> build = [&](int v, Assignment x) -> int {
            Assignment mask = (Assignment{1} << (v - 1)) - 1;
            for (std::size_t c = 0; c < F.clauses.size(); ++c) {
                bool decided = true;
                for (Literal l : F.clauses[c]) decided = decided && std::abs(l) < v;
                if (decided && falsifies(x & mask, F.clauses[c])) return T.leaf(static_cast<int>(c));
            }
            int lo = build(v + 1, x), hi = build(v + 1, x | (Assignment{1} << (v - 1)));
            return T.query(v, lo, hi);
        };
        T.root = build(1, 0);
        auto P = dt_to_proof(T, F);
        auto chk = verify_tree_resolution(P, F);
        auto T2 = proof_to_dt(P, F);
        if (!chk.ok || chk.depth > T.depth() || !solves_search(T2, F) || !verify_tree_resolution(dt_to_proof(T2, F), F).ok)
            ++bad;
    }
    return make("resolution", "dt <-> proof round trip", bad == 0,
                std::to_string(cnfs) + " unsat CNFs, " + std::to_string(bad) + " failures");
}

SuiteResult amgm_layout_suite() {
    AmgmParams p = toy_amgm_params();
    NwEngine E(p.nw);
    AmgmLayout lay = amgm_layout(E, p.c_num * p.N * p.N / p.c_den);
    std::ostringstream os;
    os << "|Y|/|X| = " << lay.ratio() << ", max |range(Decomp)| = " << lay.Kc << " of " << E.messages();
    return make("nw-prg", "amgm toy layout", lay.ratio() < 1 && static_cast<Word>(lay.Kc) < E.messages(), os.str());
}

}  // namespace

std::vector<NwParams> default_nw_param_sets() {
    return {{2, 2, 3, 0.25}, {2, 3, 3, 0.5}, {3, 3, 3, 0.25}, {4, 2, 4, 0.125}};
}

SuiteResult nw_dichotomy_suite(const NwParams& p, int samples, std::uint64_t seed) {
    NwEngine E(p);
    Rng rng(seed);
    int certified = 0, compressed = 0, bad = 0;
    for (int t = 0; t < samples; ++t) {
        std::vector<bool> S(static_cast<std::size_t>(E.outputs()));
        double size = 0;
        for (std::size_t i = 0; i < S.size(); ++i) size += (S[i] = rng.coin());
        for (Word f = 0; f < E.messages(); ++f) {
            ApproxResult r = certify_approx(E, f, S);
            if (r.certified) {
                ++certified;
                double err = std::fabs(static_cast<double>(r.hits) / static_cast<double>(E.seeds()) -
                                       size / static_cast<double>(E.outputs()));
                bad += err > p.eps + 1e-12;
            } else if (r.advice) {
                ++compressed;
                auto back = decomp(E, *r.advice, S);
                bad += !back || *back != f;
            } else {
                ++bad;
            }
        }
    }
    bool short_advice = E.advice_bits() <= E.advice_bits_bound(kAdviceBoundConstant);
    std::ostringstream os;
    os << "n=" << p.n << " m=" << p.m << " rho=" << p.rho << " eps=" << p.eps << ": " << certified << " certified, "
       << compressed << " compressed, " << bad << " bad; advice " << E.advice_bits() << " bits <= "
       << E.advice_bits_bound(kAdviceBoundConstant);
    if (!short_advice) os << " VIOLATED";
    return {"nw-prg", "dichotomy", bad == 0 && short_advice, os.str()};
}

const std::vector<std::string>& verifier_mutations() {
    static const std::vector<std::string> m = {"lossy.s1", "empty-child.s1", "empty-child.s2", "nephew.s1",
                                               "nephew.s2", "btree-leaf.s1"};
    return m;
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt) {
    checker_for(opt.mutate);
    bool q = opt.quick;
    std::vector<SuiteResult> out;
    out.push_back(totality_suite(q ? 4 : 40, opt.seed));
    out.push_back(soundness_suite(q ? 10 : 200, opt.seed));
    out.push_back(find_children_suite(q ? 20 : 200, opt.seed));
    out.push_back(zero_error_suite(q ? 400 : 10000, opt.seed, opt.mutate));
    out.push_back(btreeleaf_bound_suite(q ? 10 : 100, opt.seed));
    out.push_back(resolution_suite(q ? 10 : 100, opt.seed));
    for (const auto& p : default_nw_param_sets()) out.push_back(nw_dichotomy_suite(p, q ? 3 : 20, opt.seed));
    out.push_back(amgm_layout_suite());
    return out;
}

}  // namespace tfz

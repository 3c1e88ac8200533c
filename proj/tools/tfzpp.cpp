#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tfz/bench.hpp"
#include "tfz/nw.hpp"
#include "tfz/resolution.hpp"
#include "tfz/selftest.hpp"
#include "tfz/serialize.hpp"
#include "tfz/solvers.hpp"

using namespace tfz;

namespace {

// Exit codes: 0 success, 1 semantic failure, 2 usage or parse error.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class SemanticFailure : public Error {
public:
    using Error::Error;
};

Index env_cap(const char* var, Index fallback) {
    const char* v = std::getenv(var);
    if (!v || !*v) return fallback;
    try {
        Index x = std::stoll(v);
        if (x < 1) throw UsageError(std::string(var) + " must be positive");
        return x;
    } catch (const std::logic_error&) {
        throw UsageError(std::string(var) + " is not an integer");
    }
}

Index brute_cap() { return env_cap("TFZ_BRUTE_CAP", kDefaultBruteCap); }
Index materialize_cap() { return env_cap("TFZ_MATERIALIZE_CAP", Index{1} << 16); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json ledger_json(const QueryLedger& L) {
    Json j{{"total", L.total()}, {"per_oracle", Json::object()}};
    for (const auto& [name, k] : L.counts()) j["per_oracle"][name] = k;
    return j;
}

// An instance file holds either an explicit instance or a recipe.
struct Loaded {
    Json json;
    Instance instance;
    std::optional<Recipe> recipe;
};

Loaded load_instance(const std::string& path) {
    Loaded out;
    out.json = read_json_file(path);
    if (is_recipe(out.json)) {
        out.recipe = recipe_from_json(out.json);
        out.instance = replay(*out.recipe).target;
    } else {
        out.instance = instance_from_json(out.json);
    }
    return out;
}

// Clause text of each solution variant, used to explain rejections.
std::string clause_text(const std::string& problem, const std::string& variant) {
    static const std::map<std::string, std::string> text = {
        {"lossy.s1", "x in [M] with f(g(x)) != x"},
        {"lossy.s2", "y in [N] with g(f(y)) != y (bijective instances)"},
        {"empty-child.s1", "u with F(L(u)) != u, or F(R(u)) != u, or L(u) = R(u) != u"},
        {"empty-child.s2", "u = 1 with L(1) = 1, R(1) = 1 or F(1) != 1"},
        {"empty-child.s2a", "u = 1 with L(1) = 1 or R(1) = 1"},
        {"empty-child.s3", "u != 1 whose parent F(u) has neither child equal to u"},
        {"empty-child.s4", "u whose height is inconsistent with its parent's"},
        {"nephew.s1", "u with f(f(g(u))) != f(u)"},
        {"nephew.s2", "u with f(g(u)) = u"},
        {"nephew.s3", "u with f_inv(u) = w != bottom and f(w) != u"},
        {"nephew.s4", "u with f_inv(u) = bottom and f(f(u)) != f(u)"},
        {"dlo.s1", "x, y, z with x < y < z < x"},
        {"dlo.s2", "x < y whose median m fails x < m < y"},
        {"amgm.s1", "x in [P] with G(F(x)) != x"},
        {"amgm.s2", "x in [P] with F(x) = (a, b) not coloured (0, 1)"},
        {"metered-line.s1", "x = 1 with P(1) != 1, S(1) = 1 or V(1) != 1"},
        {"metered-line.s2", "x with P(S(x)) != x"},
        {"metered-line.s3", "x != 1 with V(x) = 1"},
        {"metered-line.s4", "x with V(x) > 0 and V(S(x)) != V(x) + 1, or V(x) > 1 and V(P(x)) != V(x) - 1"},
        {"metered-line.s5", "x != 1 with S(P(x)) != x"},
        {"metered-line.s6", "x with V(x) > 0 and V(S(x)) != V(x) + 1"},
        {"sink-of-dag.s1", "v = 1 with succ(1) = 1"},
        {"sink-of-dag.s2", "v with w = succ(v) != v and succ(w) = w"},
        {"sink-of-dag.s3", "v with w = succ(v) != v and pot(w) <= pot(v)"},
        {"weak-pigeon.s1", "x != y with h(x) = h(y)"},
        {"btree-leaf.s1", "a word whose walk from v* ends at a leaf"},
    };
    std::string key = problem + "." + variant;
    if (problem == "lossy+line") {
        auto dot = variant.find('.');
        if (dot != std::string::npos)
            key = (variant.substr(0, dot) == "line" ? "metered-line" : "lossy") + variant.substr(dot);
    }
    auto it = text.find(key);
    return it == text.end() ? "(no clause text)" : it->second;
}

std::string witness_string(const Solution& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < s.witness.size(); ++k) os << (k ? ", " : "") << s.witness[k];
    os << ")";
    return os.str();
}

int cmd_gen(const GenSpec& spec, const std::string& out, std::string manifest) {
    Generated g = gen_instance(spec);
    Json inst = instance_to_json(g.instance);
    write_json_file(out, inst);
    if (manifest.empty() && !out.empty() && out != "-") manifest = out + ".manifest.json";
    if (!manifest.empty()) {
        Json m{{"spec",
                {{"problem", spec.problem},
                 {"size", spec.size},
                 {"mode", spec.mode},
                 {"seed", spec.seed},
                 {"variant", spec.variant},
                 {"M", spec.M},
                 {"c", {spec.c_num, spec.c_den}},
                 {"med", spec.med}}},
               {"digest", digest(inst)},
               {"planted", nullptr}};
        if (g.planted) {
            m["planted"] = Json::array();
            for (const auto& s : *g.planted) m["planted"].push_back(solution_to_json(s));
        }
        write_json_file(manifest, m);
    }
    return kOk;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
    Loaded in = load_instance(inst_path);
    Solution s = solution_from_json(read_json_file(sol_path));
    QueryLedger L;
    std::string name = problem_name(in.instance);
    bool ok = verify(in.instance, s, L);
    Json report{{"command", "verify"},
                {"instance_digest", digest(in.json)},
                {"solution", solution_to_json(s)},
                {"valid", ok},
                {"ledger", ledger_json(L)}};
    if (!ok) {
        std::string why = "clause " + s.variant + ": " + clause_text(name, s.variant) + "; witness " +
                          witness_string(s) + " does not satisfy it";
        report["explanation"] = why;
        std::cerr << "invalid: " << why << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return ok ? kOk : kFail;
}

int cmd_solve(const std::string& inst_path, bool brute, bool random, std::uint64_t trials, std::uint64_t seed,
              const std::string& out, bool all) {
    if (brute == random) throw UsageError("choose exactly one of --brute and --random");
    auto t0 = std::chrono::steady_clock::now();
    Loaded in = load_instance(inst_path);
    Json report{{"command", brute ? "solve --brute" : "solve --random"}, {"instance_digest", digest(in.json)}};
    std::vector<Solution> found;
    if (brute) {
        Index cap = brute_cap();
        if (instance_size(in.instance) > cap)
            throw SemanticFailure("instance size " + std::to_string(instance_size(in.instance)) +
                                  " exceeds the brute-force cap " + std::to_string(cap));
        found = brute_solve(in.instance, cap);
        if (!all && found.size() > 1) found.resize(1);
    } else {
        if (!has_random_solver(in.instance))
            throw UsageError("no randomized solver for " + problem_name(in.instance));
        Rng base(seed);
        std::uint64_t used = 0, queries = 0;
        std::optional<RandomizedOutcome> hit;
        for (std::uint64_t k = 0; k < trials && !hit; ++k) {
            Rng r = base.split(k);
            RandomizedOutcome o = solve_random(in.instance, r);
            ++used;
            queries += o.queries_used;
            if (o.result) hit = o;
        }
        report["trials_used"] = used;
        report["mean_queries"] = used ? static_cast<double>(queries) / static_cast<double>(used) : 0.0;
        auto [lo, hi] = wilson95(hit ? 1 : 0, used);
        report["success_rate"] = used ? (hit ? 1.0 : 0.0) / static_cast<double>(used) : 0.0;
        report["ci95"] = {lo, hi};
        report["seed"] = seed;
        if (hit) found.push_back(*hit->result);
    }
    // Every emitted solution goes back through the verifier.
    for (const auto& s : found) {
        QueryLedger L;
        if (!verify(in.instance, s, L)) throw Error("solver emitted a solution that fails verification");
    }
    report["solutions"] = Json::array();
    for (const auto& s : found) report["solutions"].push_back(solution_to_json(s));
    report["wall_seconds"] = seconds_since(t0);
    std::cerr << report.dump(2) << "\n";
    if (found.empty()) throw SemanticFailure(brute ? "no solution found" : "trial cap exhausted");
    write_json_file(out, all ? report["solutions"] : solution_to_json(found.front()));
    return kOk;
}

RuleOptions rule_options(Index target_M, int coin, Index start) {
    RuleOptions o;
    o.target_M = target_M;
    o.coin = coin;
    o.start = start;
    return o;
}

// Appends rules to an instance or recipe file and writes the target, materialized when small.
int cmd_reduce(const std::string& from, const std::vector<std::string>& rules, const RuleOptions& opt,
               const std::string& out, const std::string& back, bool force_recipe) {
    if (rules.empty()) throw UsageError("no rule given");
    Json src = read_json_file(from);
    Recipe r;
    if (is_recipe(src)) {
        r = recipe_from_json(src);
        for (const auto& x : rules) r.rules.push_back(x);
    } else {
        instance_from_json(src);
        r.source = src;
        r.rules = rules;
        r.options = opt;
    }
    Reduction red = replay(r);
    if (!back.empty()) {
        Json sj = read_json_file(back);
        Solution t = solution_from_json(sj);
        if (!verify(red.target, t)) throw SemanticFailure("target solution " + to_string(t) + " does not verify");
        QueryLedger L;
        Solution s = red.map_back(t, L);
        if (!verify(red.source, s)) throw Error("back-map produced an invalid source solution");
        std::cerr << Json{{"command", "back"}, {"rules", r.rules}, {"ledger", ledger_json(L)}}.dump(2) << "\n";
        write_json_file(out, solution_to_json(s));
        return kOk;
    }
    if (!force_recipe && instance_size(red.target) <= materialize_cap()) {
        write_json_file(out, instance_to_json(red.target));
    } else {
        write_json_file(out, recipe_to_json(r));
    }
    return kOk;
}

// Later recipes must start from what the earlier ones produce.
int cmd_chain(const std::vector<std::string>& files, const std::string& out) {
    if (files.size() < 2) throw UsageError("chain needs at least two recipe files");
    Json first = read_json_file(files[0]);
    if (!is_recipe(first)) throw UsageError(files[0] + " is not a recipe");
    Recipe acc = recipe_from_json(first);
    for (std::size_t k = 1; k < files.size(); ++k) {
        Json next = read_json_file(files[k]);
        if (!is_recipe(next)) throw UsageError(files[k] + " is not a recipe");
        Recipe r = recipe_from_json(next);
        Json prefix = recipe_to_json(acc);
        bool matches = r.source == prefix;
        if (!matches) {
            Reduction red = replay(acc);
            if (instance_size(red.target) <= materialize_cap()) matches = r.source == instance_to_json(red.target);
        }
        if (!matches) throw UsageError(files[k] + " does not start from the target of the preceding recipes");
        for (const auto& x : r.rules) acc.rules.push_back(x);
    }
    replay(acc);
    write_json_file(out, recipe_to_json(acc));
    return kOk;
}

int cmd_bench(const BenchOptions& opt, const std::string& format, const std::string& out, bool check) {
    auto rows = run_bench(opt);
    std::string text;
    if (format == "csv")
        text = bench_csv(rows);
    else if (format == "json")
        text = bench_json(rows) + "\n";
    else
        throw UsageError("unknown format '" + format + "'");
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write " + out);
        f << text;
    }
    if (check)
        for (const auto& r : rows)
            if (!r.within_bound) return kFail;
    return kOk;
}

int report_suites(const std::vector<SuiteResult>& results, bool json) {
    bool ok = true;
    Json j = Json::array();
    for (const auto& r : results) {
        ok = ok && r.pass;
        if (json)
            j.push_back({{"module", r.module}, {"invariant", r.invariant}, {"pass", r.pass}, {"detail", r.detail}});
        else
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.module << "/" << r.invariant << "  " << r.detail << "\n";
    }
    if (json) std::cout << j.dump(2) << "\n";
    return ok ? kOk : kFail;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
    return s;
}

// Accepts the TOML subset of flat tables: each [section] holds n, m, rho, eps.
int cmd_prg_selftest(const std::string& params, int samples, std::uint64_t seed, bool json) {
    std::vector<NwParams> sets;
    if (params.empty()) {
        sets = default_nw_param_sets();
    } else {
        boost::property_tree::ptree pt;
        try {
            boost::property_tree::read_ini(params, pt);
        } catch (const boost::property_tree::ptree_error& e) {
            throw UsageError(std::string("cannot parse params: ") + e.what());
        }
        auto num = [](const boost::property_tree::ptree& t, const char* k, double dflt) {
            auto v = t.get_optional<std::string>(k);
            if (!v) return dflt;
            try {
                return std::stod(unquote(*v));
            } catch (const std::logic_error&) {
                throw UsageError(std::string("params: '") + k + "' is not a number");
            }
        };
        samples = static_cast<int>(num(pt, "samples", samples));
        seed = static_cast<std::uint64_t>(num(pt, "seed", static_cast<double>(seed)));
        for (const auto& [name, t] : pt) {
            if (t.empty()) continue;
            for (const char* k : {"n", "m", "rho", "eps"})
                if (!t.get_optional<std::string>(k))
                    throw UsageError("params section [" + name + "] is missing '" + k + "'");
            NwParams p;
            p.n = static_cast<int>(num(t, "n", 0));
            p.m = static_cast<int>(num(t, "m", 0));
            p.rho = num(t, "rho", 0);
            p.eps = num(t, "eps", 0);
            if (p.n < 1 || p.n > 6 || p.m < 1 || p.m > 8 || p.rho <= 1 || p.eps <= 0 || p.eps >= 1)
                throw UsageError("params section [" + name + "] is outside the toy range");
            sets.push_back(p);
        }
        if (sets.empty()) throw UsageError("params file has no parameter sections");
    }
    std::vector<SuiteResult> results;
    for (const auto& p : sets) results.push_back(nw_dichotomy_suite(p, samples, seed));
    return report_suites(results, json);
}

Cnf read_cnf(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return parse_dimacs(f);
}

int cmd_proof_verify(const std::string& cnf, const std::string& proof, const std::string& b) {
    Cnf F = read_cnf(cnf);
    std::optional<Cnf> B;
    if (!b.empty()) B = read_cnf(b);
    Json pj = read_json_file(proof);
    if (pj.contains("proof")) {
        if (pj.contains("B")) B = cnf_from_json(pj.at("B"));
        pj = pj.at("proof");
    }
    TreeResolutionProof P = proof_from_json(pj);
    ProofCheck c = verify_tree_resolution(P, F, B ? &*B : nullptr);
    Json r{{"command", "proof verify"}, {"ok", c.ok}, {"size", c.size}, {"width", c.width}, {"depth", c.depth}};
    if (B) r["b_width"] = B->width();
    if (!c.ok) {
        r["error"] = c.error;
        r["bad_node"] = c.bad_node;
    }
    std::cout << r.dump(2) << "\n";
    return c.ok ? kOk : kFail;
}

int cmd_proof_convert(const std::string& cnf, const std::string& tree, const std::string& proof,
                      const std::string& b, const std::string& out) {
    if (tree.empty() == proof.empty()) throw UsageError("give exactly one of --tree and --proof");
    Cnf F = read_cnf(cnf);
    if (!tree.empty()) {
        DecisionTree T = tree_from_json(read_json_file(tree));
        if (!solves_search(T, F)) throw SemanticFailure("tree does not solve the false-clause search problem");
        Cnf B;
        B.n = F.n;
        TreeResolutionProof P = dt_to_proof(T, F, &B);
        if (!verify_tree_resolution(P, F, &B).ok) throw Error("conversion produced an invalid proof");
        Json j = proof_to_json(P);
        if (!B.clauses.empty()) j = Json{{"proof", j}, {"B", cnf_to_json(B)}};
        write_json_file(out, j);
        return kOk;
    }
    Json pj = read_json_file(proof);
    std::optional<Cnf> B;
    if (!b.empty()) B = read_cnf(b);
    if (pj.contains("proof")) {
        if (pj.contains("B")) B = cnf_from_json(pj.at("B"));
        pj = pj.at("proof");
    }
    TreeResolutionProof P = proof_from_json(pj);
    ProofCheck c = verify_tree_resolution(P, F, B ? &*B : nullptr);
    if (!c.ok) throw SemanticFailure("invalid proof: " + c.error);
    write_json_file(out, tree_to_json(proof_to_dt(P, F, B ? &*B : nullptr)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tfzpp: black-box total search problems, reductions and solvers"};
    app.require_subcommand(1);

    GenSpec spec;
    std::string out = "-", manifest;
    std::string c_ratio = "2/1";
    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("--problem", spec.problem, "problem name")->required();
    gen->add_option("--size", spec.size, "N or V (n for weak-pigeon)");
    gen->add_option("--mode", spec.mode, "uniform | planted | structured");
    gen->add_option("--seed", spec.seed);
    gen->add_option("--variant", spec.variant);
    gen->add_option("--M", spec.M, "lossy codomain size (default 2N)");
    gen->add_option("--c", c_ratio, "amgm constant as num/den");
    gen->add_option("--med", spec.med, "dlo structured median: median | lower");
    gen->add_option("--out", out);
    gen->add_option("--manifest", manifest, "defaults to <out>.manifest.json");

    std::string inst_path, sol_path;
    auto* ver = app.add_subcommand("verify", "check a solution");
    ver->add_option("--instance", inst_path)->required();
    ver->add_option("--solution", sol_path)->required();

    bool brute = false, random = false, all = false;
    std::uint64_t trials = 64, seed = 1;
    auto* sol = app.add_subcommand("solve", "brute-force or randomized solving");
    sol->add_option("--instance", inst_path)->required();
    sol->add_flag("--brute", brute);
    sol->add_flag("--random", random);
    sol->add_flag("--all", all, "emit every solution (brute)");
    sol->add_option("--trials", trials);
    sol->add_option("--seed", seed);
    sol->add_option("--out", out);

    std::string from, back;
    std::vector<std::string> rules;
    Index target_M = 0, start = 1;
    int coin = 0;
    bool force_recipe = false;
    auto* red = app.add_subcommand("reduce", "apply reduction rules; --back maps a target solution back");
    red->add_option("--from", from)->required();
    red->add_option("--rule", rules, "repeat to compose")->required();
    red->add_option("--target-M", target_M);
    red->add_option("--coin", coin);
    red->add_option("--start", start);
    red->add_option("--back", back, "target solution file");
    red->add_flag("--recipe", force_recipe, "always emit a recipe");
    red->add_option("--out", out);

    std::vector<std::string> files;
    auto* chn = app.add_subcommand("chain", "compose recipe files, or extend an instance with rules");
    chn->add_option("files", files, "recipe files in order");
    chn->add_option("--from", from);
    chn->add_option("--rule", rules);
    chn->add_option("--target-M", target_M);
    chn->add_option("--coin", coin);
    chn->add_option("--start", start);
    chn->add_option("--back", back);
    chn->add_option("--out", out);

    BenchOptions bopt;
    std::string format = "csv";
    bool check = false;
    auto* ben = app.add_subcommand("bench", "query counts and success rates");
    ben->add_option("--suite", bopt.suite)->required();
    ben->add_option("--format", format, "csv | json");
    ben->add_option("--trials", bopt.trials);
    ben->add_option("--instances", bopt.instances);
    ben->add_option("--seed", bopt.seed);
    ben->add_option("--threads", bopt.threads);
    ben->add_flag("--check", check, "exit 1 if a row breaks its bound");
    ben->add_option("--out", out);

    SelftestOptions sopt;
    bool json = false;
    auto* st = app.add_subcommand("selftest", "run every invariant suite");
    st->add_flag("--quick", sopt.quick);
    st->add_option("--seed", sopt.seed);
    st->add_flag("--json", json);
    st->add_option("--mutate", sopt.mutate, "negate one verifier (problem.variant) to check that the suite notices")
        ->check(CLI::IsMember(verifier_mutations()));

    std::string params;
    int samples = 20;
    auto* prg = app.add_subcommand("prg", "Nisan-Wigderson engine");
    prg->require_subcommand(1);
    auto* prg_st = prg->add_subcommand("selftest", "dichotomy suite");
    prg_st->add_option("--params", params, "TOML/INI file with one [section] per parameter set");
    prg_st->add_option("--samples", samples);
    prg_st->add_option("--seed", seed);
    prg_st->add_flag("--json", json);

    std::string cnf, proof_path, tree_path, b_path;
    auto* prf = app.add_subcommand("proof", "tree-resolution proofs");
    prf->require_subcommand(1);
    auto* pv = prf->add_subcommand("verify", "check a proof against a DIMACS CNF");
    pv->add_option("--cnf", cnf)->required();
    pv->add_option("--proof", proof_path)->required();
    pv->add_option("--b", b_path, "auxiliary CNF B");
    auto* pc = prf->add_subcommand("convert", "decision tree <-> proof");
    pc->add_option("--cnf", cnf)->required();
    pc->add_option("--tree", tree_path);
    pc->add_option("--proof", proof_path);
    pc->add_option("--b", b_path);
    pc->add_option("--out", out);

    auto* rl = app.add_subcommand("rules", "list reduction rules and bench suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            auto slash = c_ratio.find('/');
            try {
                spec.c_num = std::stoll(c_ratio.substr(0, slash));
                spec.c_den = slash == std::string::npos ? 1 : std::stoll(c_ratio.substr(slash + 1));
            } catch (const std::logic_error&) {
                throw UsageError("--c must look like num/den");
            }
            return cmd_gen(spec, out, manifest);
        }
        if (*ver) return cmd_verify(inst_path, sol_path);
        if (*sol) return cmd_solve(inst_path, brute, random, trials, seed, out, all);
        if (*red) return cmd_reduce(from, rules, rule_options(target_M, coin, start), out, back, force_recipe);
        if (*chn) {
            if (!from.empty()) {
                if (!files.empty()) throw UsageError("give either recipe files or --from with --rule");
                return cmd_reduce(from, rules, rule_options(target_M, coin, start), out, back, true);
            }
            return cmd_chain(files, out);
        }
        if (*ben) return cmd_bench(bopt, format, out, check);
        if (*st) return report_suites(run_selftest(sopt), json);
        if (*prg_st) return cmd_prg_selftest(params, samples, seed, json);
        if (*pv) return cmd_proof_verify(cnf, proof_path, b_path);
        if (*pc) return cmd_proof_convert(cnf, tree_path, proof_path, b_path, out);
        if (*rl) {
            for (const auto& r : rule_names()) std::cout << "rule " << r << "\n";
            for (const auto& s : bench_suites()) std::cout << "suite " << s << "\n";
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const SemanticFailure& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kOk;
}

#include "tfz/bench.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tfz/rng.hpp"
#include "tfz/solvers.hpp"

namespace tfz {

std::vector<FiniteFunction> oracles_of(const Instance& inst) {
    std::vector<FiniteFunction> out;
    if (auto* p = std::get_if<LossyInstance>(&inst)) out = {p->f, p->g};
    if (auto* p = std::get_if<EmptyChildInstance>(&inst)) {
        out = {p->F, p->L, p->R};
        if (p->H) out.push_back(*p->H);
    }
    if (auto* p = std::get_if<NephewInstance>(&inst)) {
        out = {p->f, p->g};
        if (p->f_inv) out.push_back(*p->f_inv);
    }
    if (auto* p = std::get_if<DloInstance>(&inst)) out = {p->order, p->med};
    if (auto* p = std::get_if<AmgmInstance>(&inst)) out = {p->C, p->F, p->G};
    if (auto* p = std::get_if<MeteredLineInstance>(&inst)) out = {p->S, p->P, p->V};
    if (auto* p = std::get_if<SinkOfDagInstance>(&inst)) out = {p->succ, p->pot};
    if (auto* p = std::get_if<WeakPigeonInstance>(&inst)) out = {p->h};
    if (auto* p = std::get_if<BTreeLeafInstance>(&inst)) out = {p->Lp, p->Rp};
    if (auto* p = std::get_if<LossyLineInstance>(&inst))
        out = {p->lossy.f, p->lossy.g, p->line.S, p->line.P, p->line.V};
    return out;
}

std::uint64_t max_eval_queries(const Instance& target, Index point_cap) {
    std::uint64_t worst = 0;
    for (const auto& fn : oracles_of(target)) {
        Index n = std::min(fn.domain_size(), point_cap);
        for (Index x = 1; x <= n; ++x) {
            QueryLedger L;
            fn(x, L);
            worst = std::max(worst, L.total());
        }
    }
    return worst;
}

std::uint64_t ec_prime_budget(Index V) { return 3 * static_cast<std::uint64_t>(ceil_log2(V) + 1); }

double dlo_budget(Index N) { return kDloBudgetConstant * dlo_depth(N); }

double stretch_budget(Index N, Index M0, Index target_M) {
    double eps = static_cast<double>(M0 - N) / static_cast<double>(N);
    double k = std::ceil(std::log2(static_cast<double>(target_M) / static_cast<double>(N)) / eps - 1e-9);
    return kStretchBudgetConstant * std::max(1.0, k);
}

std::pair<double, double> wilson95(std::uint64_t s, std::uint64_t n) {
    if (n == 0) return {0, 1};
    double z = 1.959963984540054, p = static_cast<double>(s) / static_cast<double>(n), nn = static_cast<double>(n);
    double den = 1 + z * z / nn;
    double mid = (p + z * z / (2 * nn)) / den;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / den;
    return {std::max(0.0, mid - half), std::min(1.0, mid + half)};
}

const std::vector<std::string>& bench_suites() {
    static const std::vector<std::string> s = {"empty", "btreeleaf", "solvers", "ec_prime_depth", "dlo_queries",
                                               "stretch_queries"};
    return s;
}

namespace {

struct Tally {
    std::uint64_t trials = 0, successes = 0, queries = 0, max_queries = 0;
    void add(const RandomizedOutcome& o) {
        ++trials;
        successes += o.result.has_value();
        queries += o.queries_used;
        max_queries = std::max(max_queries, o.queries_used);
    }
    void merge(const Tally& t) {
        trials += t.trials;
        successes += t.successes;
        queries += t.queries;
        max_queries = std::max(max_queries, t.max_queries);
    }
};

// Instances are generated up front; trials fan out over threads with split seeds.
BenchRow solver_row(const std::string& suite, const std::string& problem, const std::string& method, Index size,
                    const std::vector<Instance>& insts, const BenchOptions& opt, std::uint64_t stream) {
    Rng base = Rng(opt.seed).split(stream);
    std::vector<Tally> parts(std::max(1u, opt.threads));
    std::uint64_t total = opt.trials * insts.size();
    auto work = [&](unsigned w) {
        for (std::uint64_t k = w; k < total; k += parts.size()) {
            Rng r = base.split(k);
            parts[w].add(solve_random(insts[k % insts.size()], r));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < parts.size(); ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
    Tally all;
    for (const auto& p : parts) all.merge(p);
    BenchRow row;
    row.suite = suite;
    row.problem = problem;
    row.method = method;
    row.size = size;
    row.instances = insts.size();
    row.trials = all.trials;
    row.successes = all.successes;
    row.success_rate = all.trials ? static_cast<double>(all.successes) / static_cast<double>(all.trials) : 0;
    std::tie(row.ci95_lo, row.ci95_hi) = wilson95(all.successes, all.trials);
    row.mean_queries = all.trials ? static_cast<double>(all.queries) / static_cast<double>(all.trials) : 0;
    row.max_queries = all.max_queries;
    return row;
}

Instance generate(const std::string& problem, Index size, const std::string& mode, const std::string& variant,
                  std::uint64_t seed) {
    GenSpec s;
    s.problem = problem;
    s.size = size;
    s.mode = mode;
    s.variant = variant;
    s.seed = seed;
    return gen_instance(s).instance;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    const std::string& suite = opt.suite;
    Rng rng(opt.seed);
    if (suite == "empty") return rows;
    if (suite == "btreeleaf") {
        std::uint64_t stream = 0;
        for (Index V : {15, 63, 255, 1023, 4095}) {
            std::vector<Instance> insts;
            for (std::uint64_t k = 0; k < opt.instances; ++k) insts.push_back(random_btreeleaf(V, rng));
            BenchRow row = solver_row(suite, "btree-leaf", "solve_btreeleaf_random", V, insts, opt, stream++);
            row.bound = kBTreeLeafSuccess;
            row.within_bound = row.ci95_hi >= row.bound;
            rows.push_back(row);
        }
        return rows;
    }
    if (suite == "solvers") {
        struct Case {
            std::string problem, mode, variant;
            Index size;
        };
        std::vector<Case> cases = {{"lossy", "uniform", "", 16},        {"lossy", "planted", "", 16},
                                   {"empty-child", "planted", "", 31},  {"empty-child", "structured", "", 31},
                                   {"nephew", "planted", "", 64},       {"nephew", "uniform", "", 64},
                                   {"btree-leaf", "uniform", "", 255}};
        std::uint64_t stream = 100;
        for (const auto& c : cases) {
            std::vector<Instance> insts;
            for (std::uint64_t k = 0; k < opt.instances; ++k)
                insts.push_back(generate(c.problem, c.size, c.mode, c.variant, rng()));
            BenchRow row = solver_row(suite, c.problem, "random/" + c.mode, c.size, insts, opt, stream++);
            if (c.problem != "empty-child") {
                row.bound = declared_success(insts.front());
                row.within_bound = row.ci95_hi >= row.bound;
            }
            rows.push_back(row);
        }
        return rows;
    }
    if (suite == "ec_prime_depth" || suite == "dlo_queries" || suite == "stretch_queries") {
        std::vector<Index> sizes = suite == "ec_prime_depth" ? std::vector<Index>{8, 32, 128, 512, 2048}
                                   : suite == "dlo_queries"  ? std::vector<Index>{2, 3, 4, 6, 8, 12}
                                                             : std::vector<Index>{2, 4, 8, 16, 32};
        for (Index n : sizes) {
            BenchRow row;
            row.suite = suite;
            row.size = n;
            for (std::uint64_t k = 0; k < opt.instances; ++k) {
                Reduction r;
                if (suite == "ec_prime_depth") {
                    row.problem = "empty-child";
                    row.method = "ec_prime_to_lossy";
                    r = ec_prime_to_lossy(std::get<EmptyChildInstance>(
                        generate("empty-child", n, k % 2 ? "planted" : "uniform", "prime", rng())));
                    row.bound = static_cast<double>(ec_prime_budget(n));
                } else if (suite == "dlo_queries") {
                    row.problem = "dlo";
                    row.method = "dlo_to_lossy";
                    r = dlo_to_lossy(std::get<DloInstance>(generate("dlo", n, k % 2 ? "planted" : "uniform", "", rng())));
                    row.bound = dlo_budget(n);
                } else {
                    row.problem = "lossy";
                    row.method = "lossy_stretch";
                    GenSpec s;
                    s.problem = "lossy";
                    s.size = n;
                    s.M = n + std::max<Index>(1, n / 4);
                    s.seed = rng();
                    auto src = std::get<LossyInstance>(gen_instance(s).instance);
                    r = lossy_stretch(src, 8 * n);
                    row.bound = stretch_budget(n, s.M, 8 * n);
                }
                std::uint64_t q = max_eval_queries(r.target);
                row.max_queries = std::max(row.max_queries, q);
                row.mean_queries += static_cast<double>(q);
                ++row.instances;
            }
            row.mean_queries /= static_cast<double>(std::max<std::uint64_t>(1, row.instances));
            row.within_bound = static_cast<double>(row.max_queries) <= row.bound;
            rows.push_back(row);
        }
        return rows;
    }
    throw UsageError("unknown bench suite '" + suite + "'");
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "suite,problem,method,size,instances,trials,successes,success_rate,ci95_lo,ci95_hi,mean_queries,max_queries,"
          "bound,within_bound\n";
    for (const auto& r : rows)
        os << r.suite << "," << r.problem << "," << r.method << "," << r.size << "," << r.instances << "," << r.trials
           << "," << r.successes << "," << r.success_rate << "," << r.ci95_lo << "," << r.ci95_hi << ","
           << r.mean_queries << "," << r.max_queries << "," << r.bound << "," << (r.within_bound ? 1 : 0) << "\n";
    return os.str();
}

std::string bench_json(const std::vector<BenchRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"suite", r.suite},
                       {"problem", r.problem},
                       {"method", r.method},
                       {"size", r.size},
                       {"instances", r.instances},
                       {"trials", r.trials},
                       {"success_rate", r.success_rate},
                       {"ci95", {r.ci95_lo, r.ci95_hi}},
                       {"mean_queries", r.mean_queries},
                       {"max_queries", r.max_queries},
                       {"bound", r.bound},
                       {"within_bound", r.within_bound}});
    return out.dump(2);
}

}  // namespace tfz

#include "tfz/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace tfz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json fn_to_json(const FiniteFunction& f, Index cap) {
    if (f.domain_size() > cap)
        throw UsageError("oracle " + f.name() + " has domain " + std::to_string(f.domain_size()) +
                         " above the serialization cap");
    QueryLedger L;
    FiniteFunction t = f.is_table() ? f : f.materialize(L);
    return Json(t.table_values());
}

FiniteFunction fn_from_json(const Json& j, const std::string& key, const std::string& name, Index domain,
                            Index codomain) {
    if (!j.contains(key)) throw UsageError("missing table '" + key + "'");
    const Json& t = j.at(key);
    auto values = (t.is_array() ? t : t.at("values")).get<std::vector<Index>>();
    Index cod = t.is_array() ? codomain : t.at("codomain").get<Index>();
    if (static_cast<Index>(values.size()) != domain)
        throw UsageError("table '" + key + "' has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(domain));
    if (cod != codomain)
        throw UsageError("table '" + key + "' has codomain " + std::to_string(cod) + ", expected " +
                         std::to_string(codomain));
    for (Index v : values)
        if (v < 1 || v > cod)
            throw UsageError("table '" + key + "' has value " + std::to_string(v) + " outside [1, " +
                             std::to_string(cod) + "]");
    return FiniteFunction::table(name, std::move(values), cod);
}

Index positive(const Json& j, const char* key) {
    Index v = j.at(key).get<Index>();
    if (v < 1) throw UsageError(std::string("field '") + key + "' must be positive");
    return v;
}

Json line_to_json(const MeteredLineInstance& I, Index cap) {
    return Json{{"problem", "metered-line"},
                {"N", I.N},
                {"variant", I.variant == LineVariant::end ? "end" : "sink"},
                {"tables", {{"S", fn_to_json(I.S, cap)}, {"P", fn_to_json(I.P, cap)}, {"V", fn_to_json(I.V, cap)}}}};
}

Json lossy_to_json(const LossyInstance& I, Index cap) {
    return Json{{"problem", "lossy"},
                {"N", I.N},
                {"M", I.M},
                {"bijective", I.bijective},
                {"tables", {{"f", fn_to_json(I.f, cap)}, {"g", fn_to_json(I.g, cap)}}}};
}

LossyInstance lossy_from_json(const Json& j) {
    LossyInstance I;
    I.N = positive(j, "N");
    I.M = positive(j, "M");
    if (I.M <= I.N) throw UsageError("lossy needs N < M");
    I.bijective = j.value("bijective", false);
    const Json& t = j.at("tables");
    I.f = fn_from_json(t, "f", "f", I.N, I.M);
    I.g = fn_from_json(t, "g", "g", I.M, I.N);
    return I;
}

MeteredLineInstance line_from_json(const Json& j) {
    MeteredLineInstance I;
    I.N = positive(j, "N");
    std::string v = j.value("variant", "sink");
    if (v != "sink" && v != "end") throw UsageError("metered-line variant must be sink or end");
    I.variant = v == "end" ? LineVariant::end : LineVariant::sink;
    const Json& t = j.at("tables");
    I.S = fn_from_json(t, "S", "S", I.N, I.N);
    I.P = fn_from_json(t, "P", "P", I.N, I.N);
    I.V = fn_from_json(t, "V", "V", I.N, I.N + 1);
    return I;
}

}  // namespace

static Json flat_to_json(const Instance& inst, Index cap) {
    return std::visit(
        overloaded{
            [&](const LossyInstance& I) { return lossy_to_json(I, cap); },
            [&](const EmptyChildInstance& I) {
                Json t{{"F", fn_to_json(I.F, cap)}, {"L", fn_to_json(I.L, cap)}, {"R", fn_to_json(I.R, cap)}};
                if (I.H) t["H"] = fn_to_json(*I.H, cap);
                return Json{{"problem", "empty-child"}, {"V", I.V}, {"variant", to_string(I.variant)}, {"tables", t}};
            },
            [&](const NephewInstance& I) {
                Json t{{"f", fn_to_json(I.f, cap)}, {"g", fn_to_json(I.g, cap)}};
                if (I.f_inv) t["finv"] = fn_to_json(*I.f_inv, cap);
                return Json{{"problem", "nephew"}, {"V", I.V}, {"tables", t}};
            },
            [&](const DloInstance& I) {
                return Json{{"problem", "dlo"},
                            {"N", I.N},
                            {"literal_s2", I.literal_s2},
                            {"tables", {{"order", fn_to_json(I.order, cap)}, {"med", fn_to_json(I.med, cap)}}}};
            },
            [&](const AmgmInstance& I) {
                return Json{{"problem", "amgm"},
                            {"N", I.N},
                            {"c_num", I.c_num},
                            {"c_den", I.c_den},
                            {"tables",
                             {{"C", fn_to_json(I.C, cap)}, {"F", fn_to_json(I.F, cap)}, {"G", fn_to_json(I.G, cap)}}}};
            },
            [&](const MeteredLineInstance& I) { return line_to_json(I, cap); },
            [&](const SinkOfDagInstance& I) {
                return Json{{"problem", "sink-of-dag"},
                            {"N", I.N},
                            {"tables", {{"succ", fn_to_json(I.succ, cap)}, {"pot", fn_to_json(I.pot, cap)}}}};
            },
            [&](const WeakPigeonInstance& I) {
                return Json{{"problem", "weak-pigeon"}, {"n", I.n}, {"tables", {{"h", fn_to_json(I.h, cap)}}}};
            },
            [&](const BTreeLeafInstance& I) {
                return Json{{"problem", "btree-leaf"},
                            {"V", I.V},
                            {"v_star", I.v_star},
                            {"promise_checked", I.promise_checked},
                            {"tables", {{"Lp", fn_to_json(I.Lp, cap)}, {"Rp", fn_to_json(I.Rp, cap)}}}};
            },
            [&](const LossyLineInstance& I) {
                return Json{{"problem", "lossy+line"}, {"lossy", lossy_to_json(I.lossy, cap)},
                            {"line", line_to_json(I.line, cap)}};
            },
        },
        inst);
}

static Instance flat_from_json(const Json& j) {
    try {
        std::string p = j.at("problem").get<std::string>();
        if (p == "lossy") return lossy_from_json(j);
        if (p == "metered-line") return line_from_json(j);
        if (p == "lossy+line") return LossyLineInstance{lossy_from_json(j.at("lossy")), line_from_json(j.at("line"))};
        const Json& t = j.at("tables");
        if (p == "empty-child") {
            EmptyChildInstance I;
            I.V = positive(j, "V");
            I.variant = ec_variant_from_string(j.value("variant", "standard"));
            I.F = fn_from_json(t, "F", "F", I.V, I.V);
            I.L = fn_from_json(t, "L", "L", I.V, I.V);
            I.R = fn_from_json(t, "R", "R", I.V, I.V);
            if (ec_has_heights(I.variant)) I.H = fn_from_json(t, "H", "H", I.V, I.V);
            return I;
        }
        if (p == "nephew") {
            NephewInstance I;
            I.V = positive(j, "V");
            I.f = fn_from_json(t, "f", "f", I.V, I.V);
            I.g = fn_from_json(t, "g", "g", I.V, I.V);
            if (t.contains("finv")) I.f_inv = fn_from_json(t, "finv", "finv", I.V, I.V + 1);
            return I;
        }
        if (p == "dlo") {
            DloInstance I;
            I.N = positive(j, "N");
            if (I.N < 2) throw UsageError("dlo needs N >= 2");
            I.literal_s2 = j.value("literal_s2", false);
            Index pairs = I.N * (I.N - 1) / 2;
            I.order = fn_from_json(t, "order", "order", pairs, 2);
            I.med = fn_from_json(t, "med", "med", pairs, I.N);
            return I;
        }
        if (p == "amgm") {
            AmgmInstance I;
            I.N = positive(j, "N");
            I.c_num = positive(j, "c_num");
            I.c_den = positive(j, "c_den");
            if (I.c_num <= I.c_den || (I.c_num * I.N * I.N) % I.c_den != 0)
                throw UsageError("amgm needs c > 1 with c N^2 integral");
            Index sq = 4 * I.N * I.N;
            I.C = fn_from_json(t, "C", "C", 2 * I.N, 2);
            I.F = fn_from_json(t, "F", "F", I.P(), sq);
            I.G = fn_from_json(t, "G", "G", sq, I.P());
            return I;
        }
        if (p == "sink-of-dag") {
            SinkOfDagInstance I;
            I.N = positive(j, "N");
            I.succ = fn_from_json(t, "succ", "succ", I.N, I.N);
            I.pot = fn_from_json(t, "pot", "pot", I.N, I.N);
            return I;
        }
        if (p == "weak-pigeon") {
            WeakPigeonInstance I;
            I.n = static_cast<int>(positive(j, "n"));
            if (I.n > 24) throw UsageError("weak-pigeon n too large");
            I.h = fn_from_json(t, "h", "h", Index{1} << I.n, Index{1} << (I.n - 1));
            return I;
        }
        if (p == "btree-leaf") {
            BTreeLeafInstance I;
            I.V = positive(j, "V");
            I.v_star = positive(j, "v_star");
            if (I.v_star > I.V) throw UsageError("v_star out of range");
            I.Lp = fn_from_json(t, "Lp", "Lp", I.V, I.V + 1);
            I.Rp = fn_from_json(t, "Rp", "Rp", I.V, I.V + 1);
            I.promise_checked = btreeleaf_promise_holds(I);
            return I;
        }
        throw UsageError("unknown problem '" + p + "'");
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed instance: ") + e.what());
    }
}

// The file layout keeps sizes under "params" and tables under "oracles"; the flat form is internal.
static Json shape(const Json& flat) {
    if (flat.contains("lossy"))
        return Json{{"problem", flat.at("problem")}, {"parts", {{"lossy", shape(flat.at("lossy"))}, {"line", shape(flat.at("line"))}}}};
    Json out{{"problem", flat.at("problem")}, {"params", Json::object()}, {"oracles", flat.at("tables")}};
    for (auto it = flat.begin(); it != flat.end(); ++it)
        if (it.key() != "problem" && it.key() != "tables") out["params"][it.key()] = it.value();
    return out;
}

static Json unshape(const Json& j) {
    if (!j.is_object()) throw UsageError("instance must be a JSON object");
    if (j.contains("parts"))
        return Json{{"problem", j.at("problem")}, {"lossy", unshape(j.at("parts").at("lossy"))}, {"line", unshape(j.at("parts").at("line"))}};
    if (!j.contains("oracles")) return j;
    Json out{{"problem", j.at("problem")}, {"tables", j.at("oracles")}};
    if (j.contains("params"))
        for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) out[it.key()] = it.value();
    return out;
}

Json instance_to_json(const Instance& inst, Index cap) { return shape(flat_to_json(inst, cap)); }

Instance instance_from_json(const Json& j) {
    try {
        return flat_from_json(unshape(j));
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed instance: ") + e.what());
    }
}

Json solution_to_json(const Solution& s) {
    return Json{{"problem", s.problem}, {"variant", s.variant}, {"witness", s.witness}};
}

Solution solution_from_json(const Json& j) {
    try {
        return Solution{j.at("problem").get<std::string>(), j.at("variant").get<std::string>(),
                        j.at("witness").get<std::vector<Index>>()};
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed solution: ") + e.what());
    }
}

Json recipe_to_json(const Recipe& r) {
    return Json{{"recipe",
                 {{"rules", r.rules},
                  {"options", {{"target_M", r.options.target_M}, {"coin", r.options.coin}, {"start", r.options.start}}},
                  {"source_digest", digest(r.source)},
                  {"source", r.source}}}};
}

bool is_recipe(const Json& j) { return j.is_object() && j.contains("recipe"); }

Recipe recipe_from_json(const Json& j) {
    try {
        const Json& r = j.at("recipe");
        Recipe out;
        out.source = r.at("source");
        out.rules = r.at("rules").get<std::vector<std::string>>();
        const Json& o = r.at("options");
        out.options.target_M = o.value("target_M", Index{0});
        out.options.coin = o.value("coin", 0);
        out.options.start = o.value("start", Index{1});
        if (r.contains("source_digest") && r.at("source_digest").get<std::string>() != digest(out.source))
            throw UsageError("recipe source digest mismatch");
        return out;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed recipe: ") + e.what());
    }
}

Reduction replay(const Recipe& r) {
    if (r.rules.empty()) throw UsageError("recipe has no rules");
    Instance src = instance_from_json(r.source);
    Reduction acc = apply_rule(r.rules[0], src, r.options);
    for (std::size_t k = 1; k < r.rules.size(); ++k) acc = chain(acc, apply_rule(r.rules[k], acc.target, r.options));
    return acc;
}

std::string digest(const Json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json tree_to_json(const DecisionTree& T) {
    std::function<Json(int)> rec = [&](int u) -> Json {
        const auto& nd = T.nodes[static_cast<std::size_t>(u)];
        if (nd.var == 0) return nd.label == DecisionTree::kBottom ? Json{{"leaf", nullptr}} : Json{{"leaf", nd.label}};
        return Json{{"var", nd.var}, {"lo", rec(nd.lo)}, {"hi", rec(nd.hi)}};
    };
    return rec(T.root);
}

DecisionTree tree_from_json(const Json& j) {
    DecisionTree T;
    std::function<int(const Json&)> rec = [&](const Json& n) -> int {
        if (n.contains("leaf")) return T.leaf(n.at("leaf").is_null() ? DecisionTree::kBottom : n.at("leaf").get<int>());
        int v = n.at("var").get<int>();
        if (v < 1) throw UsageError("decision tree variable must be positive");
        int lo = rec(n.at("lo")), hi = rec(n.at("hi"));
        return T.query(v, lo, hi);
    };
    try {
        T.root = rec(j);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed decision tree: ") + e.what());
    }
    return T;
}

Json proof_to_json(const TreeResolutionProof& P) {
    std::function<Json(int)> rec = [&](int u) -> Json {
        const auto& nd = P.nodes[static_cast<std::size_t>(u)];
        Json out{{"clause", nd.clause}};
        if (nd.pivot == 0) {
            out["source"] = nd.source;
            if (nd.from_b) out["from_b"] = true;
        } else {
            out["pivot"] = nd.pivot;
            out["pos"] = rec(nd.pos);
            out["neg"] = rec(nd.neg);
        }
        return out;
    };
    return rec(P.root);
}

TreeResolutionProof proof_from_json(const Json& j) {
    TreeResolutionProof P;
    std::function<int(const Json&)> rec = [&](const Json& n) -> int {
        TreeResolutionProof::Node nd;
        nd.clause = n.at("clause").get<Clause>();
        if (n.contains("pivot")) {
            nd.pivot = n.at("pivot").get<int>();
            nd.pos = rec(n.at("pos"));
            nd.neg = rec(n.at("neg"));
        } else {
            nd.source = n.at("source").get<int>();
            nd.from_b = n.value("from_b", false);
        }
        P.nodes.push_back(nd);
        return static_cast<int>(P.nodes.size()) - 1;
    };
    try {
        P.root = rec(j);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed proof: ") + e.what());
    }
    return P;
}

Json cnf_to_json(const Cnf& F) { return Json{{"n", F.n}, {"clauses", F.clauses}}; }

Cnf cnf_from_json(const Json& j) {
    try {
        Cnf F;
        F.n = j.at("n").get<int>();
        for (const auto& c : j.at("clauses")) F.clauses.push_back(make_clause(c.get<std::vector<Literal>>()));
        return F;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed CNF: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::printf("%s\n", j.dump(2).c_str());
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace tfz

#include "tfz/problems.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tfz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_range(Index x, Index hi) { return x >= 1 && x <= hi; }

bool one_witness(const Solution& s, Index hi) { return s.witness.size() == 1 && in_range(s.witness[0], hi); }

[[noreturn]] void illegal(const std::string& problem, const std::string& tag) {
    throw UsageError("variant tag '" + tag + "' is not legal for " + problem);
}

bool verify_lossy(const LossyInstance& I, const Solution& s, QueryLedger& L) {
    if (s.variant == "s1") {
        if (!one_witness(s, I.M)) return false;
        Index x = s.witness[0];
        return I.f(I.g(x, L), L) != x;
    }
    if (s.variant == "s2" && I.bijective) {
        if (!one_witness(s, I.N)) return false;
        Index y = s.witness[0];
        return I.g(I.f(y, L), L) != y;
    }
    illegal("lossy", s.variant);
}

bool ec_s1(const EmptyChildInstance& I, Index u, QueryLedger& Lg) {
    Index l = I.L(u, Lg), r = I.R(u, Lg);
    if (I.F(l, Lg) != u) return true;
    if (I.F(r, Lg) != u) return true;
    return l == r && l != u;
}

bool verify_ec(const EmptyChildInstance& I, const Solution& s, QueryLedger& Lg) {
    const std::string& t = s.variant;
    if (t == "s1") {
        if (!one_witness(s, I.V)) return false;
        return ec_s1(I, s.witness[0], Lg);
    }
    if (t == "s2" && I.variant != EcVariant::prime) {
        if (!one_witness(s, I.V) || s.witness[0] != 1) return false;
        return I.L(1, Lg) == 1 || I.R(1, Lg) == 1 || I.F(1, Lg) != 1;
    }
    if (t == "s2a" && I.variant == EcVariant::prime) {
        if (!one_witness(s, I.V) || s.witness[0] != 1) return false;
        return I.L(1, Lg) == 1 || I.R(1, Lg) == 1;
    }
    if (t == "s3" && ec_is_binary(I.variant)) {
        if (!one_witness(s, I.V) || s.witness[0] == 1) return false;
        Index u = s.witness[0];
        Index p = I.F(u, Lg);
        return I.L(p, Lg) != u && I.R(p, Lg) != u;
    }
    if (t == "s4" && ec_has_heights(I.variant)) {
        if (!one_witness(s, I.V) || !I.H) return false;
        Index u = s.witness[0];
        const FiniteFunction& H = *I.H;
        if (I.variant == EcVariant::with_height_strict) {
            if (u == 1) return false;
            return H(u, Lg) <= H(I.F(u, Lg), Lg);
        }
        if (u == 1) return H(1, Lg) != 1;
        Index p = I.F(u, Lg);
        if (p == u) return false;
        return H(u, Lg) != H(p, Lg) + 1;
    }
    illegal("empty-child", t);
}

bool verify_nephew(const NephewInstance& I, const Solution& s, QueryLedger& L) {
    const std::string& t = s.variant;
    if (t == "s1" || t == "s2" || ((t == "s3" || t == "s4") && I.f_inv)) {
        if (!one_witness(s, I.V)) return false;
        Index u = s.witness[0];
        if (t == "s1") return I.f(I.f(I.g(u, L), L), L) != I.f(u, L);
        if (t == "s2") return I.f(I.g(u, L), L) == u;
        Index w = (*I.f_inv)(u, L);
        if (t == "s3") return w != bottom(I.V) && I.f(w, L) != u;
        if (w != bottom(I.V)) return false;
        Index fu = I.f(u, L);
        return I.f(fu, L) != fu;
    }
    illegal("nephew", t);
}

bool verify_dlo(const DloInstance& I, const Solution& s, QueryLedger& L) {
    if (s.variant == "s1") {
        if (s.witness.size() != 3) return false;
        Index x = s.witness[0], y = s.witness[1], z = s.witness[2];
        if (!in_range(x, I.N) || !in_range(y, I.N) || !in_range(z, I.N)) return false;
        return precedes(I, x, y, L) && precedes(I, y, z, L) && precedes(I, z, x, L);
    }
    if (s.variant == "s2") {
        if (s.witness.size() != 2) return false;
        Index x = s.witness[0], y = s.witness[1];
        if (!in_range(x, I.N) || !in_range(y, I.N)) return false;
        if (!precedes(I, x, y, L)) return false;
        Index m = median(I, x, y, L);
        bool left = precedes(I, x, m, L);
        bool right = precedes(I, m, y, L);
        if (I.literal_s2) return !left && !right;
        return !(left && right);
    }
    illegal("dlo", s.variant);
}

bool verify_amgm(const AmgmInstance& I, const Solution& s, QueryLedger& L) {
    Index P = I.P();
    if (s.variant == "s1") {
        if (!one_witness(s, P)) return false;
        Index x = s.witness[0];
        return I.G(I.F(x, L), L) != x;
    }
    if (s.variant == "s2") {
        if (!one_witness(s, P)) return false;
        auto [a, b] = pair_unindex(I.F(s.witness[0], L), 2 * I.N);
        return !(colour(I, a, L) == 0 && colour(I, b, L) == 1);
    }
    illegal("amgm", s.variant);
}

bool verify_line(const MeteredLineInstance& I, const Solution& s, QueryLedger& L) {
    const std::string& t = s.variant;
    bool end = I.variant == LineVariant::end;
    if (t != "s1" && t != "s2" && t != "s3" && t != "s4" && !(end && (t == "s5" || t == "s6")))
        illegal("metered-line", t);
    if (!one_witness(s, I.N)) return false;
    Index x = s.witness[0];
    if (t == "s1") return x == 1 && (I.P(1, L) != 1 || I.S(1, L) == 1 || meter(I, 1, L) != 1);
    if (t == "s2") return I.P(I.S(x, L), L) != x;
    if (t == "s3") return x != 1 && meter(I, x, L) == 1;
    if (t == "s5") return x != 1 && I.S(I.P(x, L), L) != x;
    Index v = meter(I, x, L);
    bool up = v > 0 && meter(I, I.S(x, L), L) - v != 1;
    if (t == "s6") return up;
    if (up) return true;
    return v > 1 && v - meter(I, I.P(x, L), L) != 1;
}

bool verify_dag(const SinkOfDagInstance& I, const Solution& s, QueryLedger& L) {
    const std::string& t = s.variant;
    if (t != "s1" && t != "s2" && t != "s3") illegal("sink-of-dag", t);
    if (!one_witness(s, I.N)) return false;
    Index v = s.witness[0];
    if (t == "s1") return v == 1 && I.succ(1, L) == 1;
    Index w = I.succ(v, L);
    if (w == v) return false;
    if (t == "s2") return I.succ(w, L) == w;
    return I.pot(w, L) <= I.pot(v, L);
}

bool verify_pigeon(const WeakPigeonInstance& I, const Solution& s, QueryLedger& L) {
    if (s.variant != "s1") illegal("weak-pigeon", s.variant);
    if (s.witness.size() != 2) return false;
    Index dom = Index{1} << I.n;
    Index x = s.witness[0], y = s.witness[1];
    if (!in_range(x, dom) || !in_range(y, dom) || x == y) return false;
    return I.h(x, L) == I.h(y, L);
}

bool verify_btree(const BTreeLeafInstance& I, const Solution& s, QueryLedger& L) {
    if (s.variant != "s1") illegal("btree-leaf", s.variant);
    Index words = Index{1} << btreeleaf_word_length(I.V);
    if (!one_witness(s, words)) return false;
    return btreeleaf_walk(I, s.witness[0], L).leaf;
}

bool verify_lossy_line(const LossyLineInstance& I, const Solution& s, QueryLedger& L) {
    auto dot = s.variant.find('.');
    if (dot == std::string::npos) illegal("lossy+line", s.variant);
    std::string part = s.variant.substr(0, dot);
    Solution inner{"", s.variant.substr(dot + 1), s.witness};
    if (part == "lossy") {
        inner.problem = "lossy";
        return verify_lossy(I.lossy, inner, L);
    }
    if (part == "line") {
        inner.problem = "metered-line";
        return verify_line(I.line, inner, L);
    }
    illegal("lossy+line", s.variant);
}

}  // namespace

bool ec_has_heights(EcVariant v) {
    return v == EcVariant::with_height || v == EcVariant::binary_with_height || v == EcVariant::with_height_strict;
}

bool ec_is_binary(EcVariant v) { return v == EcVariant::binary || v == EcVariant::binary_with_height; }

std::string to_string(EcVariant v) {
    switch (v) {
        case EcVariant::standard: return "standard";
        case EcVariant::prime: return "prime";
        case EcVariant::binary: return "binary";
        case EcVariant::with_height: return "with_height";
        case EcVariant::binary_with_height: return "binary_with_height";
        case EcVariant::with_height_strict: return "with_height_strict";
    }
    return "standard";
}

EcVariant ec_variant_from_string(const std::string& s) {
    for (auto v : {EcVariant::standard, EcVariant::prime, EcVariant::binary, EcVariant::with_height,
                   EcVariant::binary_with_height, EcVariant::with_height_strict})
        if (to_string(v) == s) return v;
    throw UsageError("unknown empty-child variant '" + s + "'");
}

std::string problem_name(const Instance& inst) {
    return std::visit(overloaded{
                          [](const LossyInstance&) { return std::string("lossy"); },
                          [](const EmptyChildInstance&) { return std::string("empty-child"); },
                          [](const NephewInstance&) { return std::string("nephew"); },
                          [](const DloInstance&) { return std::string("dlo"); },
                          [](const AmgmInstance&) { return std::string("amgm"); },
                          [](const MeteredLineInstance&) { return std::string("metered-line"); },
                          [](const SinkOfDagInstance&) { return std::string("sink-of-dag"); },
                          [](const WeakPigeonInstance&) { return std::string("weak-pigeon"); },
                          [](const BTreeLeafInstance&) { return std::string("btree-leaf"); },
                          [](const LossyLineInstance&) { return std::string("lossy+line"); },
                      },
                      inst);
}

std::string to_string(const Solution& s) {
    std::ostringstream os;
    os << s.problem << ":" << s.variant << "(";
    for (std::size_t k = 0; k < s.witness.size(); ++k) os << (k ? "," : "") << s.witness[k];
    os << ")";
    return os.str();
}

Index unordered_pair_index(Index x, Index y, Index N) {
    if (x > y) std::swap(x, y);
    // pairs (1,2)..(1,N), (2,3).. in order
    return (x - 1) * (2 * N - x) / 2 + (y - x);
}

bool precedes(const DloInstance& d, Index x, Index y, QueryLedger& L) {
    if (x == y) return false;
    Index bit = d.order(unordered_pair_index(x, y, d.N), L);
    return (bit == 1) == (x < y);
}

Index median(const DloInstance& d, Index x, Index y, QueryLedger& L) {
    if (x == y) return x;
    return d.med(unordered_pair_index(x, y, d.N), L);
}

Index meter(const MeteredLineInstance& m, Index x, QueryLedger& L) { return m.V(x, L) - 1; }

Index colour(const AmgmInstance& a, Index x, QueryLedger& L) { return a.C(x, L) - 1; }

std::vector<std::string> legal_variants(const Instance& inst) {
    return std::visit(
        overloaded{
            [](const LossyInstance& I) {
                return I.bijective ? std::vector<std::string>{"s1", "s2"} : std::vector<std::string>{"s1"};
            },
            [](const EmptyChildInstance& I) {
                std::vector<std::string> v{"s1", I.variant == EcVariant::prime ? "s2a" : "s2"};
                if (ec_is_binary(I.variant)) v.push_back("s3");
                if (ec_has_heights(I.variant)) v.push_back("s4");
                return v;
            },
            [](const NephewInstance& I) {
                return I.f_inv ? std::vector<std::string>{"s1", "s2", "s3", "s4"}
                               : std::vector<std::string>{"s1", "s2"};
            },
            [](const DloInstance&) { return std::vector<std::string>{"s1", "s2"}; },
            [](const AmgmInstance&) { return std::vector<std::string>{"s1", "s2"}; },
            [](const MeteredLineInstance& I) {
                std::vector<std::string> v{"s1", "s2", "s3", "s4"};
                if (I.variant == LineVariant::end) {
                    v.push_back("s5");
                    v.push_back("s6");
                }
                return v;
            },
            [](const SinkOfDagInstance&) { return std::vector<std::string>{"s1", "s2", "s3"}; },
            [](const WeakPigeonInstance&) { return std::vector<std::string>{"s1"}; },
            [](const BTreeLeafInstance&) { return std::vector<std::string>{"s1"}; },
            [](const LossyLineInstance& I) {
                std::vector<std::string> v{"lossy.s1"};
                if (I.lossy.bijective) v.push_back("lossy.s2");
                for (auto t : {"s1", "s2", "s3", "s4"}) v.push_back(std::string("line.") + t);
                if (I.line.variant == LineVariant::end) {
                    v.push_back("line.s5");
                    v.push_back("line.s6");
                }
                return v;
            },
        },
        inst);
}

bool verify(const Instance& inst, const Solution& s, QueryLedger& L) {
    std::string name = problem_name(inst);
    if (!s.problem.empty() && s.problem != name)
        throw UsageError("solution for '" + s.problem + "' given to a " + name + " instance");
    return std::visit(overloaded{
                          [&](const LossyInstance& I) { return verify_lossy(I, s, L); },
                          [&](const EmptyChildInstance& I) { return verify_ec(I, s, L); },
                          [&](const NephewInstance& I) { return verify_nephew(I, s, L); },
                          [&](const DloInstance& I) { return verify_dlo(I, s, L); },
                          [&](const AmgmInstance& I) { return verify_amgm(I, s, L); },
                          [&](const MeteredLineInstance& I) { return verify_line(I, s, L); },
                          [&](const SinkOfDagInstance& I) { return verify_dag(I, s, L); },
                          [&](const WeakPigeonInstance& I) { return verify_pigeon(I, s, L); },
                          [&](const BTreeLeafInstance& I) { return verify_btree(I, s, L); },
                          [&](const LossyLineInstance& I) { return verify_lossy_line(I, s, L); },
                      },
                      inst);
}

bool verify(const Instance& inst, const Solution& s) {
    QueryLedger L;
    return verify(inst, s, L);
}

bool nephew_checksol(const NephewInstance& inst, Index u, QueryLedger& L) {
    return nephew_solution_at(inst, u, L).has_value();
}

std::optional<Solution> nephew_solution_at(const NephewInstance& inst, Index u, QueryLedger& L) {
    std::vector<std::string> tags{"s1", "s2"};
    if (inst.f_inv) {
        tags.push_back("s3");
        tags.push_back("s4");
    }
    for (auto& t : tags) {
        Solution s{"nephew", t, {u}};
        if (verify_nephew(inst, s, L)) return s;
    }
    return std::nullopt;
}

Index instance_size(const Instance& inst) {
    return std::visit(overloaded{
                          [](const LossyInstance& I) { return I.N + I.M; },
                          [](const EmptyChildInstance& I) { return I.V * (I.H ? 4 : 3); },
                          [](const NephewInstance& I) { return I.V * (I.f_inv ? 3 : 2); },
                          [](const DloInstance& I) { return I.N * (I.N - 1); },
                          [](const AmgmInstance& I) { return 2 * I.N + I.P() + 4 * I.N * I.N; },
                          [](const MeteredLineInstance& I) { return 3 * I.N; },
                          [](const SinkOfDagInstance& I) { return 2 * I.N; },
                          [](const WeakPigeonInstance& I) { return Index{1} << I.n; },
                          [](const BTreeLeafInstance& I) { return 2 * I.V; },
                          [](const LossyLineInstance& I) { return I.lossy.N + I.lossy.M + 3 * I.line.N; },
                      },
                      inst);
}

namespace {

void add_if(const Instance& inst, std::vector<Solution>& out, const std::string& problem, const std::string& tag,
            std::vector<Index> w, QueryLedger& L) {
    Solution s{problem, tag, std::move(w)};
    if (verify(inst, s, L)) out.push_back(std::move(s));
}

}  // namespace

std::vector<Solution> brute_solve(const Instance& inst, Index cap) {
    Index size = instance_size(inst);
    if (size > cap)
        throw UsageError("instance size " + std::to_string(size) + " exceeds brute-force cap " + std::to_string(cap));
    std::vector<Solution> out;
    QueryLedger L;
    std::string name = problem_name(inst);
    if (auto* I = std::get_if<WeakPigeonInstance>(&inst)) {
        std::map<Index, std::vector<Index>> by_hole;
        Index dom = Index{1} << I->n;
        for (Index x = 1; x <= dom; ++x) by_hole[I->h(x, L)].push_back(x);
        for (auto& [hole, xs] : by_hole)
            for (std::size_t a = 0; a < xs.size(); ++a)
                for (std::size_t b = a + 1; b < xs.size(); ++b) out.push_back({name, "s1", {xs[a], xs[b]}});
    } else if (auto* D = std::get_if<DloInstance>(&inst)) {
        Index N = D->N;
        for (Index x = 1; x <= N; ++x)
            for (Index y = x + 1; y <= N; ++y)
                for (Index z = x + 1; z <= N; ++z)
                    if (z != y) add_if(inst, out, name, "s1", {x, y, z}, L);
        for (Index x = 1; x <= N; ++x)
            for (Index y = 1; y <= N; ++y)
                if (x != y) add_if(inst, out, name, "s2", {x, y}, L);
    } else {
        auto range_for = [&](const std::string& tag) -> Index {
            return std::visit(overloaded{
                                  [&](const LossyInstance& I) { return tag == "s1" ? I.M : I.N; },
                                  [](const EmptyChildInstance& I) { return I.V; },
                                  [](const NephewInstance& I) { return I.V; },
                                  [](const DloInstance& I) { return I.N; },
                                  [](const AmgmInstance& I) { return I.P(); },
                                  [](const MeteredLineInstance& I) { return I.N; },
                                  [](const SinkOfDagInstance& I) { return I.N; },
                                  [](const WeakPigeonInstance&) { return Index{0}; },
                                  [](const BTreeLeafInstance& I) {
                                      return Index{1} << btreeleaf_word_length(I.V);
                                  },
                                  [&](const LossyLineInstance& I) {
                                      if (tag == "lossy.s1") return I.lossy.M;
                                      if (tag == "lossy.s2") return I.lossy.N;
                                      return I.line.N;
                                  },
                              },
                              inst);
        };
        for (const auto& tag : legal_variants(inst)) {
            Index hi = range_for(tag);
            for (Index x = 1; x <= hi; ++x) add_if(inst, out, name, tag, {x}, L);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Index> compute_levels(const FiniteFunction& f) {
    Index V = f.domain_size();
    if (f.codomain_size() > V) throw UsageError("compute_levels needs f: [V] -> [V]");
    QueryLedger L;
    std::vector<Index> next(static_cast<std::size_t>(V + 1));
    for (Index v = 1; v <= V; ++v) next[v] = f(v, L);
    std::vector<Index> level(static_cast<std::size_t>(V + 1), -1);
    std::vector<int> state(static_cast<std::size_t>(V + 1), 0);  // 0 new, 1 on stack, 2 done
    std::vector<Index> stack;
    for (Index s = 1; s <= V; ++s) {
        if (state[s] == 2) continue;
        stack.clear();
        Index v = s;
        while (state[v] == 0) {
            state[v] = 1;
            stack.push_back(v);
            v = next[v];
        }
        if (state[v] == 1) {
            // v closes a new cycle: every stack entry from v onwards is on it
            auto it = std::find(stack.begin(), stack.end(), v);
            for (auto c = it; c != stack.end(); ++c) {
                level[*c] = 0;
                state[*c] = 2;
            }
            stack.erase(it, stack.end());
        }
        for (auto c = stack.rbegin(); c != stack.rend(); ++c) {
            level[*c] = level[next[*c]] + 1;
            state[*c] = 2;
        }
    }
    level[0] = 0;
    return level;
}

int btreeleaf_word_length(Index V) { return ceil_log2(V) + 1; }

WalkResult btreeleaf_walk(const BTreeLeafInstance& b, Index word, QueryLedger& L) {
    int len = btreeleaf_word_length(b.V);
    WalkResult w;
    Index bits = word - 1;
    Index cur = b.v_star;
    Index bot = bottom(b.V);
    for (int t = 0; t <= len; ++t) {
        w.visited.push_back(cur);
        Index l = b.Lp(cur, L), r = b.Rp(cur, L);
        if (l == bot && r == bot) {
            w.vertex = cur;
            w.leaf = true;
            return w;
        }
        if (l == bot || r == bot || l == r) w.promise_violation = true;
        if (t == len) break;
        bool right = (bits >> (len - 1 - t)) & 1;
        Index nxt = right ? r : l;
        if (nxt == bot) {
            w.vertex = cur;
            return w;
        }
        cur = nxt;
    }
    w.vertex = cur;
    return w;
}

bool btreeleaf_promise_holds(const BTreeLeafInstance& b) {
    QueryLedger L;
    Index bot = bottom(b.V);
    std::vector<char> seen(static_cast<std::size_t>(b.V + 1), 0);
    std::vector<Index> parent_count(static_cast<std::size_t>(b.V + 1), 0);
    std::vector<Index> todo{b.v_star};
    seen[b.v_star] = 1;
    while (!todo.empty()) {
        Index v = todo.back();
        todo.pop_back();
        Index l = b.Lp(v, L), r = b.Rp(v, L);
        if ((l == bot) != (r == bot)) return false;
        if (l == bot) continue;
        if (l == r) return false;
        for (Index c : {l, r}) {
            if (c == b.v_star) return false;
            if (++parent_count[c] > 1) return false;
            if (!seen[c]) {
                seen[c] = 1;
                todo.push_back(c);
            }
        }
    }
    return true;
}

}  // namespace tfz

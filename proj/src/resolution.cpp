#include "tfz/resolution.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace tfz {

namespace {

bool lit_less(Literal a, Literal b) {
    int va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
}

bool contains(const Clause& c, Literal l) {
    return std::binary_search(c.begin(), c.end(), l, lit_less);
}

int bit_of(Assignment x, int v) { return static_cast<int>((x >> (v - 1)) & 1); }

void check_enumerable(int n) {
    if (n < 0 || n > 24) throw UsageError("assignment enumeration needs 0 <= n <= 24");
}

}  // namespace

Clause make_clause(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end(), lit_less);
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t k = 0; k < lits.size(); ++k) {
        if (lits[k] == 0) throw UsageError("literal 0 is not a variable");
        if (k + 1 < lits.size() && lits[k] == -lits[k + 1])
            throw UsageError("clause contains variable " + std::to_string(std::abs(lits[k])) + " and its negation");
    }
    return lits;
}

bool falsifies(Assignment x, const Clause& c) {
    for (Literal l : c)
        if (bit_of(x, std::abs(l)) == (l > 0 ? 1 : 0)) return false;
    return true;
}

std::string to_string(const Clause& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k]);
    return s + ")";
}

std::size_t Cnf::width() const {
    std::size_t w = 0;
    for (const auto& c : clauses) w = std::max(w, c.size());
    return w;
}

std::vector<int> Cnf::falsified(Assignment x) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < clauses.size(); ++k)
        if (falsifies(x, clauses[k])) out.push_back(static_cast<int>(k));
    return out;
}

bool Cnf::satisfied_by(Assignment x) const {
    for (const auto& c : clauses)
        if (falsifies(x, c)) return false;
    return true;
}

Cnf parse_dimacs(std::istream& in) {
    Cnf F;
    std::string line;
    bool header = false;
    std::vector<Literal> cur;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok == "%") continue;
        if (tok == "p") {
            std::string fmt;
            long long m = 0;
            if (!(ls >> fmt >> F.n >> m) || fmt != "cnf" || F.n < 0 || m < 0)
                throw UsageError("bad DIMACS header: " + line);
            if (F.n > 64) throw UsageError("DIMACS: at most 64 variables are supported");
            expected = static_cast<std::size_t>(m);
            header = true;
            continue;
        }
        if (!header) throw UsageError("DIMACS clause before the header");
        std::istringstream ts(line);
        long long v;
        while (ts >> v) {
            if (v == 0) {
                F.clauses.push_back(make_clause(cur));
                cur.clear();
            } else {
                if (std::llabs(v) > F.n) throw UsageError("DIMACS literal out of range: " + std::to_string(v));
                cur.push_back(static_cast<Literal>(v));
            }
        }
        if (!ts.eof()) throw UsageError("DIMACS: unexpected token in: " + line);
    }
    if (!header) throw UsageError("DIMACS: missing header");
    if (!cur.empty()) F.clauses.push_back(make_clause(cur));
    if (F.clauses.size() != expected)
        throw UsageError("DIMACS: header announces " + std::to_string(expected) + " clauses, found " +
                         std::to_string(F.clauses.size()));
    return F;
}

void write_dimacs(std::ostream& out, const Cnf& F) {
    out << "p cnf " << F.n << " " << F.clauses.size() << "\n";
    for (const auto& c : F.clauses) {
        for (Literal l : c) out << l << " ";
        out << "0\n";
    }
}

bool brute_unsat(const Cnf& F) {
    check_enumerable(F.n);
    for (Assignment x = 0; x < (Assignment{1} << F.n); ++x)
        if (F.satisfied_by(x)) return false;
    return true;
}

SearchCnf search_of_cnf(const Cnf& F, Assignment x) {
    std::vector<Index> bits(static_cast<std::size_t>(F.n));
    for (int v = 1; v <= F.n; ++v) bits[static_cast<std::size_t>(v - 1)] = bit_of(x, v) + 1;
    return {F, FiniteFunction::table("x", bits, 2)};
}

bool search_cnf_verify(const SearchCnf& S, int clause, QueryLedger& L) {
    if (clause < 0 || clause >= static_cast<int>(S.F.clauses.size())) return false;
    for (Literal l : S.F.clauses[static_cast<std::size_t>(clause)])
        if (S.x(std::abs(l), L) - 1 == (l > 0 ? 1 : 0)) return false;
    return true;
}

std::vector<int> search_cnf_solutions(const SearchCnf& S) {
    std::vector<int> out;
    QueryLedger L;
    for (int k = 0; k < static_cast<int>(S.F.clauses.size()); ++k)
        if (search_cnf_verify(S, k, L)) out.push_back(k);
    return out;
}

int DecisionTree::leaf(int label) {
    nodes.push_back({0, -1, -1, label});
    return static_cast<int>(nodes.size()) - 1;
}

int DecisionTree::query(int var, int lo, int hi) {
    nodes.push_back({var, lo, hi, kBottom});
    return static_cast<int>(nodes.size()) - 1;
}

int DecisionTree::eval(Assignment x) const {
    int u = root;
    while (nodes[static_cast<std::size_t>(u)].var != 0) {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        u = bit_of(x, nd.var) ? nd.hi : nd.lo;
    }
    return nodes[static_cast<std::size_t>(u)].label;
}

int DecisionTree::eval(const FiniteFunction& x, QueryLedger& L) const {
    int u = root;
    while (nodes[static_cast<std::size_t>(u)].var != 0) {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        u = x(nd.var, L) == 2 ? nd.hi : nd.lo;
    }
    return nodes[static_cast<std::size_t>(u)].label;
}

int DecisionTree::depth() const {
    std::function<int(int)> rec = [&](int u) -> int {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        return nd.var == 0 ? 0 : 1 + std::max(rec(nd.lo), rec(nd.hi));
    };
    return nodes.empty() ? 0 : rec(root);
}

bool DecisionTree::repeats_variable() const {
    std::set<int> on_path;
    std::function<bool(int)> rec = [&](int u) -> bool {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        if (nd.var == 0) return false;
        if (!on_path.insert(nd.var).second) return true;
        bool r = rec(nd.lo) || rec(nd.hi);
        on_path.erase(nd.var);
        return r;
    };
    return !nodes.empty() && rec(root);
}

std::vector<std::pair<std::vector<Literal>, int>> DecisionTree::paths() const {
    std::vector<std::pair<std::vector<Literal>, int>> out;
    std::vector<Literal> path;
    std::function<void(int)> rec = [&](int u) {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        if (nd.var == 0) {
            out.emplace_back(path, nd.label);
            return;
        }
        path.push_back(-nd.var);
        rec(nd.lo);
        path.back() = nd.var;
        rec(nd.hi);
        path.pop_back();
    };
    if (!nodes.empty()) rec(root);
    return out;
}

VerifierFamily weak_pigeon_verifiers(int n) {
    if (n < 1 || n > 4) throw UsageError("weak-pigeon verifiers need 1 <= n <= 4");
    int b = n - 1;
    Index P = Index{1} << n;
    VerifierFamily R;
    R.n = static_cast<int>(P) * b;
    auto var = [b](Index x, int t) { return static_cast<int>((x - 1) * b + t + 1); };
    for (Index x = 1; x <= P; ++x) {
        for (Index y = x + 1; y <= P; ++y) {
            DecisionTree T;
            std::function<int(int)> build = [&](int t) -> int {
                if (t == b) return T.leaf(1);
                int same0 = build(t + 1), diff0 = T.leaf(0);
                int lo = T.query(var(y, t), same0, diff0);
                int diff1 = T.leaf(0), same1 = build(t + 1);
                int hi = T.query(var(y, t), diff1, same1);
                return T.query(var(x, t), lo, hi);
            };
            T.root = build(0);
            R.trees.push_back(T);
            R.outcome_names.push_back("collision " + std::to_string(x) + " " + std::to_string(y));
        }
    }
    return R;
}

Cnf cnf_of_search(const VerifierFamily& R, int depth_bound) {
    Cnf F;
    F.n = R.n;
    for (std::size_t k = 0; k < R.trees.size(); ++k) {
        const auto& T = R.trees[k];
        if (T.depth() > depth_bound)
            throw UsageError("verifier tree " + std::to_string(k) + " has depth " + std::to_string(T.depth()) +
                             " above the bound " + std::to_string(depth_bound));
        for (const auto& [path, label] : T.paths()) {
            if (label != 1) continue;
            std::vector<Literal> neg;
            for (Literal l : path) neg.push_back(-l);
            F.clauses.push_back(make_clause(neg));
        }
    }
    return F;
}

int TreeResolutionProof::depth() const {
    std::function<int(int)> rec = [&](int u) -> int {
        const Node& nd = nodes[static_cast<std::size_t>(u)];
        return nd.pivot == 0 ? 0 : 1 + std::max(rec(nd.pos), rec(nd.neg));
    };
    return nodes.empty() ? 0 : rec(root);
}

ProofCheck verify_tree_resolution(const TreeResolutionProof& P, const Cnf& F, const Cnf* B) {
    ProofCheck r;
    auto fail = [&r](int node, std::string why) {
        r.ok = false;
        r.bad_node = node;
        r.error = std::move(why);
        return r;
    };
    int count = static_cast<int>(P.nodes.size());
    if (P.root < 0 || P.root >= count) return fail(-1, "root index out of range");
    std::vector<int> seen(static_cast<std::size_t>(count), 0);
    std::vector<int> order{P.root};
    seen[static_cast<std::size_t>(P.root)] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& nd = P.nodes[static_cast<std::size_t>(order[k])];
        if (nd.pivot == 0) continue;
        for (int c : {nd.pos, nd.neg}) {
            if (c < 0 || c >= count) return fail(order[k], "child index out of range");
            if (seen[static_cast<std::size_t>(c)]++) return fail(c, "clause used twice (not tree-like)");
            order.push_back(c);
        }
    }
    if (static_cast<int>(order.size()) != count) return fail(-1, "unreachable proof nodes");
    for (int u : order) {
        const auto& nd = P.nodes[static_cast<std::size_t>(u)];
        r.width = std::max(r.width, nd.clause.size());
        Clause norm;
        try {
            norm = make_clause(nd.clause);
        } catch (const UsageError& e) {
            return fail(u, e.what());
        }
        if (norm != nd.clause) return fail(u, "clause not in normal form");
        if (nd.pivot == 0) {
            const Cnf* src = nd.from_b ? B : &F;
            if (!src) return fail(u, "leaf refers to an auxiliary CNF that was not supplied");
            if (nd.source < 0 || nd.source >= static_cast<int>(src->clauses.size()))
                return fail(u, "leaf source index out of range");
            if (src->clauses[static_cast<std::size_t>(nd.source)] != nd.clause)
                return fail(u, "leaf clause differs from its input clause");
            continue;
        }
        if (nd.pivot < 0) return fail(u, "pivot must be a positive variable");
        const Clause& a = P.nodes[static_cast<std::size_t>(nd.pos)].clause;
        const Clause& b = P.nodes[static_cast<std::size_t>(nd.neg)].clause;
        if (!contains(a, nd.pivot) || !contains(b, -nd.pivot)) return fail(u, "pivot mismatch");
        std::vector<Literal> res;
        for (Literal l : a)
            if (l != nd.pivot) res.push_back(l);
        for (Literal l : b)
            if (l != -nd.pivot) res.push_back(l);
        Clause expect;
        try {
            expect = make_clause(res);
        } catch (const UsageError&) {
            return fail(u, "resolvent is a tautology");
        }
        if (expect != nd.clause) return fail(u, "clause is not the resolvent of its children");
    }
    if (!P.nodes[static_cast<std::size_t>(P.root)].clause.empty()) return fail(P.root, "root clause is not empty");
    r.ok = true;
    r.size = order.size();
    r.depth = P.depth();
    return r;
}

namespace {

TreeResolutionProof compact(const TreeResolutionProof& P) {
    TreeResolutionProof out;
    std::function<int(int)> copy = [&](int u) -> int {
        auto nd = P.nodes[static_cast<std::size_t>(u)];
        if (nd.pivot != 0) {
            nd.pos = copy(nd.pos);
            nd.neg = copy(nd.neg);
        }
        out.nodes.push_back(nd);
        return static_cast<int>(out.nodes.size()) - 1;
    };
    out.root = copy(P.root);
    return out;
}

}  // namespace

TreeResolutionProof dt_to_proof(const DecisionTree& T, const Cnf& F, Cnf* B) {
    if (T.nodes.empty()) throw UsageError("empty decision tree");
    if (T.repeats_variable()) throw UsageError("decision tree queries a variable twice on a path");
    TreeResolutionProof P;
    std::map<int, int> path;  // var -> value
    std::function<int(int)> rec = [&](int u) -> int {
        const auto& nd = T.nodes[static_cast<std::size_t>(u)];
        if (nd.var == 0) {
            TreeResolutionProof::Node leaf;
            if (nd.label == DecisionTree::kBottom) {
                if (!B) throw UsageError("decision tree has a bottom leaf but no auxiliary CNF was requested");
                std::vector<Literal> neg;
                for (auto [v, val] : path) neg.push_back(val ? -v : v);
                B->n = std::max(B->n, F.n);
                B->clauses.push_back(make_clause(neg));
                leaf.clause = B->clauses.back();
                leaf.source = static_cast<int>(B->clauses.size()) - 1;
                leaf.from_b = true;
            } else {
                if (nd.label < 0 || nd.label >= static_cast<int>(F.clauses.size()))
                    throw UsageError("leaf label " + std::to_string(nd.label) + " is not a clause of F");
                const Clause& c = F.clauses[static_cast<std::size_t>(nd.label)];
                for (Literal l : c) {
                    auto it = path.find(std::abs(l));
                    if (it == path.end() || it->second == (l > 0 ? 1 : 0))
                        throw UsageError("leaf clause " + std::to_string(nd.label) + " is not falsified on its path");
                }
                leaf.clause = c;
                leaf.source = nd.label;
            }
            P.nodes.push_back(leaf);
            return static_cast<int>(P.nodes.size()) - 1;
        }
        path[nd.var] = 0;
        int c0 = rec(nd.lo);
        path[nd.var] = 1;
        int c1 = rec(nd.hi);
        path.erase(nd.var);
        const Clause& a = P.nodes[static_cast<std::size_t>(c0)].clause;
        const Clause& b = P.nodes[static_cast<std::size_t>(c1)].clause;
        if (!contains(a, nd.var)) return c0;
        if (!contains(b, -nd.var)) return c1;
        std::vector<Literal> res;
        for (Literal l : a)
            if (l != nd.var) res.push_back(l);
        for (Literal l : b)
            if (l != -nd.var) res.push_back(l);
        TreeResolutionProof::Node in;
        in.clause = make_clause(res);
        in.pivot = nd.var;
        in.pos = c0;
        in.neg = c1;
        P.nodes.push_back(in);
        return static_cast<int>(P.nodes.size()) - 1;
    };
    P.root = rec(T.root);
    return compact(P);
}

DecisionTree proof_to_dt(const TreeResolutionProof& P, const Cnf& F, const Cnf* B) {
    ProofCheck chk = verify_tree_resolution(P, F, B);
    if (!chk.ok) throw UsageError("invalid proof at node " + std::to_string(chk.bad_node) + ": " + chk.error);
    DecisionTree T;
    std::map<int, int> rho;
    std::function<int(int)> rec = [&](int u) -> int {
        const auto& nd = P.nodes[static_cast<std::size_t>(u)];
        if (nd.pivot == 0) return T.leaf(nd.from_b ? DecisionTree::kBottom : nd.source);
        auto it = rho.find(nd.pivot);
        if (it != rho.end()) return rec(it->second == 0 ? nd.pos : nd.neg);
        rho[nd.pivot] = 0;
        int lo = rec(nd.pos);
        rho[nd.pivot] = 1;
        int hi = rec(nd.neg);
        rho.erase(nd.pivot);
        return T.query(nd.pivot, lo, hi);
    };
    T.root = rec(P.root);
    return T;
}

bool solves_search(const DecisionTree& T, const Cnf& F) {
    check_enumerable(F.n);
    for (Assignment x = 0; x < (Assignment{1} << F.n); ++x) {
        int o = T.eval(x);
        if (o == DecisionTree::kBottom) continue;
        if (o < 0 || o >= static_cast<int>(F.clauses.size())) return false;
        if (!falsifies(x, F.clauses[static_cast<std::size_t>(o)])) return false;
    }
    return true;
}

Rational bottom_probability(const TreeDistribution& D, Assignment x) {
    Rational p = 0;
    for (const auto& [w, T] : D.members)
        if (T.eval(x) == DecisionTree::kBottom) p += w;
    return p;
}

Rational b_satisfaction(const RandomProof& P, Assignment x) {
    Rational p = 0;
    for (const auto& m : P.members)
        if (m.B.satisfied_by(x)) p += m.weight;
    return p;
}

std::optional<Assignment> bottom_violation(const TreeDistribution& D, int n) {
    check_enumerable(n);
    for (Assignment x = 0; x < (Assignment{1} << n); ++x)
        if (bottom_probability(D, x) > Rational(1, 3)) return x;
    return std::nullopt;
}

std::optional<Assignment> b_violation(const RandomProof& P, int n) {
    check_enumerable(n);
    for (Assignment x = 0; x < (Assignment{1} << n); ++x)
        if (b_satisfaction(P, x) < Rational(2, 3)) return x;
    return std::nullopt;
}

namespace {

template <class Seq, class W>
void check_weights(const Seq& members, W weight) {
    Rational total = 0;
    for (const auto& m : members) {
        if (weight(m) <= Rational(0)) throw UsageError("distribution weights must be positive");
        total += weight(m);
    }
    if (total != Rational(1)) throw UsageError("distribution weights must sum to 1");
}

}  // namespace

RandomProof zppdt_to_randres(const TreeDistribution& D, const Cnf& F) {
    check_weights(D.members, [](const auto& m) { return m.first; });
    if (auto x = bottom_violation(D, F.n))
        throw UsageError("bottom probability exceeds 1/3 at assignment " + std::to_string(*x));
    RandomProof P;
    for (const auto& [w, T] : D.members) {
        RandomProof::Member m;
        m.weight = w;
        m.B.n = F.n;
        m.proof = dt_to_proof(T, F, &m.B);
        P.members.push_back(std::move(m));
    }
    return P;
}

TreeDistribution randres_to_zppdt(const RandomProof& P, const Cnf& F) {
    check_weights(P.members, [](const auto& m) { return m.weight; });
    for (std::size_t k = 0; k < P.members.size(); ++k) {
        auto chk = verify_tree_resolution(P.members[k].proof, F, &P.members[k].B);
        if (!chk.ok) throw UsageError("member " + std::to_string(k) + " is not a proof of F and B: " + chk.error);
    }
    if (auto x = b_violation(P, F.n))
        throw UsageError("B is satisfied with probability below 2/3 at assignment " + std::to_string(*x));
    TreeDistribution D;
    for (const auto& m : P.members) D.members.emplace_back(m.weight, proof_to_dt(m.proof, F, &m.B));
    return D;
}

}  // namespace tfz

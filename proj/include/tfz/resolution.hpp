#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tfz/oracle.hpp"

namespace tfz {

using Rational = boost::rational<std::int64_t>;

// Literal +v / -v for variable v >= 1.  Clauses are kept sorted by (variable, sign).
using Literal = int;
using Clause = std::vector<Literal>;
// Bit v-1 holds the value of variable v.
using Assignment = std::uint64_t;

Clause make_clause(std::vector<Literal> lits);  // sorts, dedups; throws on x and not-x
bool falsifies(Assignment x, const Clause& c);
std::string to_string(const Clause& c);

struct Cnf {
    int n = 0;
    std::vector<Clause> clauses;

    std::size_t width() const;
    std::vector<int> falsified(Assignment x) const;  // 0-based clause indices
    bool satisfied_by(Assignment x) const;
};

Cnf parse_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf& F);
bool brute_unsat(const Cnf& F);  // n <= 24

// The false-clause search problem: the assignment is an oracle [n] -> [2] storing bit+1.
struct SearchCnf {
    Cnf F;
    FiniteFunction x;
};
SearchCnf search_of_cnf(const Cnf& F, Assignment x);
// Reads only the clause's variables, so verification depth is at most the width.
bool search_cnf_verify(const SearchCnf& S, int clause, QueryLedger& L);
std::vector<int> search_cnf_solutions(const SearchCnf& S);

// Leaves carry a label; internal nodes query var and branch on its value.
struct DecisionTree {
    static constexpr int kBottom = -1;
    struct Node {
        int var = 0;  // 0 for a leaf
        int lo = -1, hi = -1;
        int label = kBottom;
    };
    std::vector<Node> nodes;
    int root = 0;

    int leaf(int label);
    int query(int var, int lo, int hi);
    int eval(Assignment x) const;
    int eval(const FiniteFunction& x, QueryLedger& L) const;
    int depth() const;
    bool repeats_variable() const;  // some root-to-leaf path queries a variable twice
    // Root-to-leaf paths as (assignment literals, leaf label).
    std::vector<std::pair<std::vector<Literal>, int>> paths() const;
};

// Verifier trees with 0/1 leaves, one per outcome.
struct VerifierFamily {
    int n = 0;
    std::vector<DecisionTree> trees;
    std::vector<std::string> outcome_names;
};
VerifierFamily weak_pigeon_verifiers(int n);
// Clauses are negations of the 1-paths of all verifier trees.
Cnf cnf_of_search(const VerifierFamily& R, int depth_bound);

// Leaves are input clauses, from F (from_b false) or from the auxiliary CNF B.
struct TreeResolutionProof {
    struct Node {
        Clause clause;
        int pivot = 0;  // 0 for a leaf
        int pos = -1, neg = -1;  // children containing +pivot and -pivot
        int source = -1;
        bool from_b = false;
    };
    std::vector<Node> nodes;
    int root = 0;

    int depth() const;
};

struct ProofCheck {
    bool ok = false;
    std::string error;
    int bad_node = -1;
    std::size_t size = 0;
    std::size_t width = 0;
    int depth = 0;
};
ProofCheck verify_tree_resolution(const TreeResolutionProof& P, const Cnf& F, const Cnf* B = nullptr);

// bottom leaves become B clauses (negated paths) appended to *B; without B they are an error.
TreeResolutionProof dt_to_proof(const DecisionTree& T, const Cnf& F, Cnf* B = nullptr);
// Leaves from B become bottom.
DecisionTree proof_to_dt(const TreeResolutionProof& P, const Cnf& F, const Cnf* B = nullptr);
// Whether T labels every assignment with a clause it falsifies (or bottom).
bool solves_search(const DecisionTree& T, const Cnf& F);

struct TreeDistribution {
    std::vector<std::pair<Rational, DecisionTree>> members;
};
struct RandomProof {
    struct Member {
        Rational weight;
        TreeResolutionProof proof;
        Cnf B;
    };
    std::vector<Member> members;
};

Rational bottom_probability(const TreeDistribution& D, Assignment x);
Rational b_satisfaction(const RandomProof& P, Assignment x);
// First assignment with bottom probability above 1/3, if any.
std::optional<Assignment> bottom_violation(const TreeDistribution& D, int n);
std::optional<Assignment> b_violation(const RandomProof& P, int n);

RandomProof zppdt_to_randres(const TreeDistribution& D, const Cnf& F);
TreeDistribution randres_to_zppdt(const RandomProof& P, const Cnf& F);

}  // namespace tfz

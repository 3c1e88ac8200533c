#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace tfz {

// Bit strings are packed into integers, first coordinate most significant.
using Word = std::uint64_t;

struct WeakDesign {
    int ell = 1;
    int d = 1;
    double rho = 2;
    std::vector<std::vector<int>> sets;  // 1-based coordinates, increasing

    int m() const { return static_cast<int>(sets.size()); }
    // sum over j < i of 2^{|I_i cap I_j|}; i is 1-based
    std::uint64_t overlap_mass(int i) const;
    bool valid() const;
};

int design_universe(int ell, double rho);
// Greedy: each set is the lexicographically first ell-subset of minimal overlap mass.
WeakDesign build_weak_design(int ell, double rho, int m);

// Hadamard code on n-bit messages, block length 2^n.  The decoding radius is
// (1/2 - eps') 2^n with eps' = 2^-eps_shift.
struct HadamardCode {
    int n = 1;

    int bit(Word f, Word z) const;
    std::vector<std::uint8_t> encode(Word f) const;
    std::vector<Word> list_decode(const std::vector<std::uint8_t>& y, int eps_shift) const;
    bool within_radius(std::uint64_t distance, int eps_shift) const;
    // Largest list size: brute force for n <= 4, the Johnson bound otherwise.
    std::size_t list_bound(int eps_shift) const;
};

std::uint64_t hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

// Constant in K <= d + (rho + 1)(m - 1) + C log(m / eps); the shipped parameter sets need C >= 0.06.
constexpr double kAdviceBoundConstant = 1.0;

struct NwParams {
    int n = 2;  // message bits; the code length is 2^n
    int m = 2;  // output bits
    double rho = 3;
    double eps = 0.25;
};

class NwEngine {
public:
    explicit NwEngine(const NwParams& p);

    const NwParams& params() const { return p_; }
    const WeakDesign& design() const { return design_; }
    const HadamardCode& code() const { return code_; }
    int n() const { return p_.n; }
    int m() const { return p_.m; }
    int ell() const { return p_.n; }
    int d() const { return design_.d; }
    int eps_shift() const { return eps_shift_; }
    Word seeds() const { return Word{1} << d(); }
    Word outputs() const { return Word{1} << m(); }
    Word messages() const { return Word{1} << n(); }
    // eps' 2^{ell+1}: slack of one per-aux pair
    Word slack() const { return Word{1} << (ell() + 1 - eps_shift_); }
    Word aux_count() const { return Word{1} << (d() - ell() + m() - 1); }
    Word diff() const { return slack() * aux_count(); }
    std::size_t list_size() const { return list_size_; }

    Word restrict(Word z, int i) const;  // z|_{I_i}
    Word eval(Word f, Word z) const;
    // Hyb_i(z, r): the first i bits from the generator, the rest from r.
    Word hybrid(Word f, int i, Word z, Word r) const;

    // (z, r) <-> (z' * 2 + r_i, aux) for step i.
    std::pair<Word, Word> split(int i, Word z, Word r) const;
    std::pair<Word, Word> join(int i, Word c, Word aux) const;

    // Advice space size K and its exact bit length.
    std::uint64_t table_bits(int i) const { return design_.overlap_mass(i); }
    std::uint64_t advice_count() const;
    double advice_bits() const;
    double advice_bits_bound(double C) const;

private:
    NwParams p_;
    WeakDesign design_;
    HadamardCode code_;
    int eps_shift_ = 1;
    std::size_t list_size_ = 1;
    std::vector<std::vector<int>> rest_;  // complement of each I_i
};

// Rank matching of two sorted sets with a slack block appended to the right side.
struct LexPair {
    std::vector<Word> A, B;
    Word slack = 0;

    // H: A -> B plus slack.  The slack index is p - |B| and may exceed the block.
    std::pair<bool, Word> forward(Word a) const;
    // G: B plus slack -> A; the smallest element of A for overflow ranks.
    std::optional<Word> backward(bool in_slack, Word v) const;
    bool valid() const { return A.size() <= B.size() + slack; }
    std::vector<Word> failures() const;
};

struct HybElem {
    enum Kind { pair, number, junk };
    Kind kind = junk;
    Word v = 0;  // z * M + r for pairs

    static HybElem of_pair(Word code) { return {pair, code}; }
    static HybElem of_number(Word x) { return {number, x}; }
    bool operator==(const HybElem&) const = default;
};

// The per-step and composed injection-surjection pairs for a fixed f and S.
class HybridPairs {
public:
    HybridPairs(const NwEngine& E, Word f, std::vector<bool> S);

    const NwEngine& engine() const { return *E_; }
    Word f() const { return f_; }
    const std::vector<bool>& S() const { return S_; }
    const std::vector<Word>& level(int i) const { return V_[static_cast<std::size_t>(i)]; }
    Word generator_hits() const { return hits_; }  // seeds z with PRG(f, z) in S
    Word total_slack() const { return static_cast<Word>(E_->m()) * E_->diff(); }
    const LexPair& less_pair(int i, Word aux) const;
    const LexPair& greater_pair(int i, Word aux) const;

    HybElem h_less(HybElem w) const;  // V_m -> V_0 + [m diff]
    HybElem g_less(HybElem v) const;
    HybElem h_greater(HybElem v) const;  // V_0 -> V_m + [m diff]
    HybElem g_greater(HybElem w) const;

    std::optional<Word> less_failure() const;
    std::optional<Word> greater_failure() const;

    struct Step {
        int i;
        Word aux;
    };
    // The step whose local pair breaks along the trace of w, if any.
    std::optional<Step> locate_failure(bool less, Word w) const;

    // Membership bit of (z', b) in X_{i,aux}, as a word over z'.
    std::vector<std::uint8_t> predictor(int i, Word aux, int b) const;

private:
    HybElem step_h(bool less, int i, HybElem v) const;
    HybElem step_g(bool less, int i, HybElem v) const;
    std::size_t slot(int i, Word aux) const;

    const NwEngine* E_;
    Word f_;
    std::vector<bool> S_;
    Word hits_ = 0;
    std::vector<std::vector<Word>> V_;
    std::vector<LexPair> less_, greater_;
};

struct Advice {
    int i = 1;
    Word aux = 0;
    std::vector<std::vector<std::uint8_t>> tables;  // one per j < i
    int b = 0;
    int above = 0;
    std::size_t index = 0;

    bool operator==(const Advice&) const = default;
};

std::uint64_t pack_advice(const NwEngine& E, const Advice& a);
Advice unpack_advice(const NwEngine& E, std::uint64_t k);

// Throws UsageError if w does not witness a broken pair.
Advice comp(const HybridPairs& H, bool less, Word w);
std::optional<Word> decomp(const NwEngine& E, const Advice& a, const std::vector<bool>& S);
std::vector<Word> decomp_range(const NwEngine& E, const std::vector<bool>& S);

struct ApproxResult {
    bool certified = false;
    Word hits = 0;            // |S cap PRG_f| counted with multiplicity
    double val = 0;           // hits * M / D
    std::shared_ptr<const HybridPairs> pairs;
    bool failed_less = false;
    Word witness = 0;
    std::optional<Advice> advice;
};

ApproxResult certify_approx(const NwEngine& E, Word f, const std::vector<bool>& S);

}  // namespace tfz

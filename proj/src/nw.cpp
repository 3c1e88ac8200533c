#include "tfz/nw.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "tfz/oracle.hpp"

namespace tfz {

namespace {

constexpr Word kNone = std::numeric_limits<Word>::max();

std::uint64_t mass_of(const std::vector<int>& a, const std::vector<std::vector<int>>& earlier) {
    std::uint64_t s = 0;
    for (const auto& b : earlier) {
        std::vector<int> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        s += std::uint64_t{1} << both.size();
    }
    return s;
}

bool next_combination(std::vector<int>& c, int d) {
    int k = static_cast<int>(c.size());
    for (int t = k - 1; t >= 0; --t) {
        if (c[t] < d - (k - 1 - t)) {
            ++c[t];
            for (int u = t + 1; u < k; ++u) c[u] = c[u - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::uint64_t WeakDesign::overlap_mass(int i) const {
    std::vector<std::vector<int>> earlier(sets.begin(), sets.begin() + (i - 1));
    return mass_of(sets[static_cast<std::size_t>(i - 1)], earlier);
}

bool WeakDesign::valid() const {
    for (int i = 1; i <= m(); ++i) {
        const auto& s = sets[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(s.size()) != ell) return false;
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
        if (s.front() < 1 || s.back() > d) return false;
        if (static_cast<double>(overlap_mass(i)) > rho * (m() - 1) + 1e-9) return false;
    }
    return true;
}

int design_universe(int ell, double rho) {
    if (ell < 1 || !(rho > 1)) throw UsageError("weak design needs ell >= 1 and rho > 1");
    return static_cast<int>(std::ceil(ell / std::log(rho) - 1e-12)) * ell;
}

WeakDesign build_weak_design(int ell, double rho, int m) {
    if (m < 1) throw UsageError("weak design needs m >= 1");
    WeakDesign w;
    w.ell = ell;
    w.rho = rho;
    w.d = design_universe(ell, rho);
    if (w.d >= ell * m) {
        for (int i = 0; i < m; ++i) {
            std::vector<int> s;
            for (int k = 1; k <= ell; ++k) s.push_back(i * ell + k);
            w.sets.push_back(s);
        }
    } else {
        for (int i = 0; i < m; ++i) {
            std::vector<int> c(static_cast<std::size_t>(ell));
            for (int k = 0; k < ell; ++k) c[k] = k + 1;
            std::vector<int> best;
            std::uint64_t best_mass = std::numeric_limits<std::uint64_t>::max();
            do {
                std::uint64_t s = mass_of(c, w.sets);
                if (s < best_mass) {
                    best_mass = s;
                    best = c;
                }
            } while (next_combination(c, w.d));
            w.sets.push_back(best);
        }
    }
    for (int i = 1; i <= m; ++i)
        if (static_cast<double>(w.overlap_mass(i)) > rho * (m - 1) + 1e-9)
            throw Error("weak design: greedy step " + std::to_string(i) + " exceeds rho (m - 1); this is a bug");
    return w;
}

int HadamardCode::bit(Word f, Word z) const { return std::popcount(f & z) & 1; }

std::vector<std::uint8_t> HadamardCode::encode(Word f) const {
    std::vector<std::uint8_t> out(std::size_t{1} << n);
    for (Word z = 0; z < out.size(); ++z) out[z] = static_cast<std::uint8_t>(bit(f, z));
    return out;
}

std::uint64_t hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::uint64_t d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k];
    return d;
}

bool HadamardCode::within_radius(std::uint64_t distance, int eps_shift) const {
    // distance <= (1/2 - 2^-j) 2^n, scaled by 2^j
    std::int64_t lhs = static_cast<std::int64_t>(distance) << eps_shift;
    std::int64_t rhs = (std::int64_t{1} << (n + eps_shift - 1)) - (std::int64_t{1} << n);
    return lhs <= rhs;
}

std::vector<Word> HadamardCode::list_decode(const std::vector<std::uint8_t>& y, int eps_shift) const {
    std::vector<Word> out;
    for (Word f = 0; f < (Word{1} << n); ++f) {
        std::uint64_t dist = 0;
        for (Word z = 0; z < y.size(); ++z) dist += y[z] != bit(f, z);
        if (within_radius(dist, eps_shift)) out.push_back(f);
    }
    return out;
}

std::size_t HadamardCode::list_bound(int eps_shift) const {
    if (n <= 4) {
        std::size_t len = std::size_t{1} << n, best = 0;
        std::vector<std::uint64_t> cw(std::size_t{1} << n);
        for (Word f = 0; f < cw.size(); ++f)
            for (Word z = 0; z < len; ++z) cw[f] |= std::uint64_t(bit(f, z)) << z;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << len); ++y) {
            std::size_t c = 0;
            for (auto w : cw)
                if (within_radius(static_cast<std::uint64_t>(std::popcount(w ^ y)), eps_shift)) ++c;
            best = std::max(best, c);
        }
        return std::max<std::size_t>(best, 1);
    }
    std::size_t johnson = std::size_t{1} << std::max(0, 2 * eps_shift - 2);
    return std::min(johnson, std::size_t{1} << n);
}

NwEngine::NwEngine(const NwParams& p) : p_(p) {
    if (p.n < 1 || p.m < 1) throw UsageError("NW needs n >= 1 and m >= 1");
    if (!(p.eps > 0) || p.eps > 1) throw UsageError("NW needs 0 < eps <= 1");
    code_.n = p.n;
    design_ = build_weak_design(p.n, p.rho, p.m);
    eps_shift_ = 1;
    while (std::ldexp(1.0, -eps_shift_) > p.eps / p.m) ++eps_shift_;
    if (eps_shift_ > ell() + 1) throw UsageError("NW: eps'/2^-(ell+1) is fractional; raise eps or n");
    if (d() - ell() + m() - 1 > 40 || d() + m() > 40) throw UsageError("NW parameters exceed the toy range");
    list_size_ = code_.list_bound(eps_shift_);
    for (int i = 1; i <= m(); ++i) {
        const auto& s = design_.sets[static_cast<std::size_t>(i - 1)];
        std::vector<int> rest;
        for (int k = 1; k <= d(); ++k)
            if (!std::binary_search(s.begin(), s.end(), k)) rest.push_back(k);
        rest_.push_back(rest);
    }
}

namespace {

Word gather(Word z, int d, const std::vector<int>& coords) {
    Word out = 0;
    for (int k : coords) out = (out << 1) | ((z >> (d - k)) & 1);
    return out;
}

Word scatter(Word bits, int d, const std::vector<int>& coords) {
    Word z = 0;
    int len = static_cast<int>(coords.size());
    for (int t = 0; t < len; ++t)
        if ((bits >> (len - 1 - t)) & 1) z |= Word{1} << (d - coords[static_cast<std::size_t>(t)]);
    return z;
}

}  // namespace

Word NwEngine::restrict(Word z, int i) const { return gather(z, d(), design_.sets[static_cast<std::size_t>(i - 1)]); }

Word NwEngine::eval(Word f, Word z) const {
    Word y = 0;
    for (int i = 1; i <= m(); ++i) y = (y << 1) | static_cast<Word>(code_.bit(f, restrict(z, i)));
    return y;
}

Word NwEngine::hybrid(Word f, int i, Word z, Word r) const {
    Word y = 0;
    for (int j = 1; j <= m(); ++j) {
        Word b = j <= i ? static_cast<Word>(code_.bit(f, restrict(z, j))) : (r >> (m() - j)) & 1;
        y = (y << 1) | b;
    }
    return y;
}

std::pair<Word, Word> NwEngine::split(int i, Word z, Word r) const {
    Word zp = restrict(z, i);
    Word zr = gather(z, d(), rest_[static_cast<std::size_t>(i - 1)]);
    int lo = m() - i;
    Word ri = (r >> lo) & 1;
    Word rrest = ((r >> (lo + 1)) << lo) | (r & ((Word{1} << lo) - 1));
    return {zp * 2 + ri, (zr << (m() - 1)) | rrest};
}

std::pair<Word, Word> NwEngine::join(int i, Word c, Word aux) const {
    Word zp = c >> 1, ri = c & 1;
    Word rrest = aux & ((Word{1} << (m() - 1)) - 1);
    Word zr = aux >> (m() - 1);
    Word z = scatter(zp, d(), design_.sets[static_cast<std::size_t>(i - 1)]) |
             scatter(zr, d(), rest_[static_cast<std::size_t>(i - 1)]);
    int lo = m() - i;
    Word r = ((rrest >> lo) << (lo + 1)) | (ri << lo) | (rrest & ((Word{1} << lo) - 1));
    return {z, r};
}

std::uint64_t NwEngine::advice_count() const {
    std::uint64_t K = 0;
    for (int i = 1; i <= m(); ++i) {
        double bits = (d() - ell() + m() - 1) + static_cast<double>(table_bits(i)) + 2 + std::log2(list_size_);
        if (bits > 60) throw UsageError("NW advice space too large for the toy range");
        K += aux_count() * (std::uint64_t{1} << table_bits(i)) * 4 * list_size_;
    }
    return K;
}

double NwEngine::advice_bits() const { return std::log2(static_cast<double>(advice_count())); }

double NwEngine::advice_bits_bound(double C) const {
    return d() + (p_.rho + 1) * (m() - 1) + C * std::log2(m() / p_.eps);
}

std::pair<bool, Word> LexPair::forward(Word a) const {
    auto it = std::lower_bound(A.begin(), A.end(), a);
    if (it == A.end() || *it != a) return {true, kNone};
    Word p = static_cast<Word>(it - A.begin());
    if (p < B.size()) return {false, B[p]};
    return {true, p - B.size()};
}

std::optional<Word> LexPair::backward(bool in_slack, Word v) const {
    Word p;
    if (in_slack) {
        if (v >= slack) return std::nullopt;
        p = B.size() + v;
    } else {
        auto it = std::lower_bound(B.begin(), B.end(), v);
        if (it == B.end() || *it != v) return std::nullopt;
        p = static_cast<Word>(it - B.begin());
    }
    if (p < A.size()) return A[p];
    if (!A.empty()) return A.front();
    return std::nullopt;
}

std::vector<Word> LexPair::failures() const {
    std::vector<Word> out;
    for (Word a : A) {
        auto [s, v] = forward(a);
        auto back = backward(s, v);
        if (!back || *back != a) out.push_back(a);
    }
    return out;
}

HybridPairs::HybridPairs(const NwEngine& E, Word f, std::vector<bool> S) : E_(&E), f_(f), S_(std::move(S)) {
    Word M = E.outputs(), D = E.seeds();
    if (S_.size() != M) throw UsageError("HybridPairs: S must be a subset of {0,1}^m");
    if (f >= E.messages()) throw UsageError("HybridPairs: message out of range");
    for (Word z = 0; z < D; ++z)
        if (S_[E.eval(f, z)]) ++hits_;
    V_.resize(static_cast<std::size_t>(E.m() + 1));
    for (int i = 0; i <= E.m(); ++i)
        for (Word z = 0; z < D; ++z)
            for (Word r = 0; r < M; ++r)
                if (S_[E.hybrid(f, i, z, r)]) V_[static_cast<std::size_t>(i)].push_back(z * M + r);
    Word cells = Word{1} << (E.ell() + 1);
    for (int i = 1; i <= E.m(); ++i) {
        for (Word aux = 0; aux < E.aux_count(); ++aux) {
            std::vector<Word> X, Y;
            for (Word c = 0; c < cells; ++c) {
                auto [z, r] = E.join(i, c, aux);
                if (S_[E.hybrid(f, i - 1, z, r)]) X.push_back(c);
                if (S_[E.hybrid(f, i, z, r)]) Y.push_back(c);
            }
            less_.push_back(LexPair{Y, X, E.slack()});
            greater_.push_back(LexPair{X, Y, E.slack()});
        }
    }
}

std::size_t HybridPairs::slot(int i, Word aux) const {
    return static_cast<std::size_t>(i - 1) * E_->aux_count() + aux;
}

const LexPair& HybridPairs::less_pair(int i, Word aux) const { return less_[slot(i, aux)]; }
const LexPair& HybridPairs::greater_pair(int i, Word aux) const { return greater_[slot(i, aux)]; }

HybElem HybridPairs::step_h(bool less, int i, HybElem v) const {
    if (v.kind != HybElem::pair) return {};
    Word M = E_->outputs();
    auto [c, aux] = E_->split(i, v.v / M, v.v % M);
    const LexPair& P = less ? less_pair(i, aux) : greater_pair(i, aux);
    auto [s, x] = P.forward(c);
    if (x == kNone) return {};
    if (!s) {
        auto [z, r] = E_->join(i, x, aux);
        return HybElem::of_pair(z * M + r);
    }
    return HybElem::of_number(aux * E_->slack() + x);
}

HybElem HybridPairs::step_g(bool less, int i, HybElem v) const {
    Word M = E_->outputs();
    Word aux;
    std::optional<Word> c;
    if (v.kind == HybElem::pair) {
        auto sp = E_->split(i, v.v / M, v.v % M);
        aux = sp.second;
        const LexPair& P = less ? less_pair(i, aux) : greater_pair(i, aux);
        c = P.backward(false, sp.first);
    } else if (v.kind == HybElem::number) {
        aux = v.v / E_->slack();
        if (aux >= E_->aux_count()) return {};
        const LexPair& P = less ? less_pair(i, aux) : greater_pair(i, aux);
        c = P.backward(true, v.v % E_->slack());
    } else {
        return {};
    }
    if (!c) return {};
    auto [z, r] = E_->join(i, *c, aux);
    return HybElem::of_pair(z * M + r);
}

HybElem HybridPairs::h_less(HybElem v) const {
    for (int i = E_->m(); i >= 1; --i) {
        if (v.kind == HybElem::pair)
            v = step_h(true, i, v);
        else if (v.kind == HybElem::number)
            v.v += E_->diff();
    }
    return v;
}

HybElem HybridPairs::g_less(HybElem v) const {
    for (int i = 1; i <= E_->m(); ++i) {
        if (v.kind == HybElem::pair || (v.kind == HybElem::number && v.v < E_->diff()))
            v = step_g(true, i, v);
        else if (v.kind == HybElem::number)
            v.v -= E_->diff();
    }
    return v;
}

HybElem HybridPairs::h_greater(HybElem v) const {
    for (int i = 1; i <= E_->m(); ++i) {
        if (v.kind == HybElem::pair)
            v = step_h(false, i, v);
        else if (v.kind == HybElem::number)
            v.v += E_->diff();
    }
    return v;
}

HybElem HybridPairs::g_greater(HybElem v) const {
    for (int i = E_->m(); i >= 1; --i) {
        if (v.kind == HybElem::pair || (v.kind == HybElem::number && v.v < E_->diff()))
            v = step_g(false, i, v);
        else if (v.kind == HybElem::number)
            v.v -= E_->diff();
    }
    return v;
}

std::optional<Word> HybridPairs::less_failure() const {
    for (Word w : level(E_->m())) {
        HybElem e = HybElem::of_pair(w);
        if (g_less(h_less(e)) != e) return w;
    }
    return std::nullopt;
}

std::optional<Word> HybridPairs::greater_failure() const {
    for (Word w : level(0)) {
        HybElem e = HybElem::of_pair(w);
        if (g_greater(h_greater(e)) != e) return w;
    }
    return std::nullopt;
}

std::optional<HybridPairs::Step> HybridPairs::locate_failure(bool less, Word w) const {
    Word M = E_->outputs();
    HybElem v = HybElem::of_pair(w);
    int m = E_->m();
    for (int t = 1; t <= m; ++t) {
        int i = less ? m + 1 - t : t;
        if (v.kind == HybElem::pair) {
            HybElem out = step_h(less, i, v);
            if (step_g(less, i, out) != v) return Step{i, E_->split(i, v.v / M, v.v % M).second};
            v = out;
        } else if (v.kind == HybElem::number) {
            v.v += E_->diff();
        } else {
            break;
        }
    }
    return std::nullopt;
}

std::vector<std::uint8_t> HybridPairs::predictor(int i, Word aux, int b) const {
    const std::vector<Word>& X = greater_pair(i, aux).A;
    std::vector<std::uint8_t> out(std::size_t{1} << E_->ell());
    for (Word zp = 0; zp < out.size(); ++zp)
        out[zp] = std::binary_search(X.begin(), X.end(), zp * 2 + static_cast<Word>(b)) ? 1 : 0;
    return out;
}

namespace {

// Positions (0-based, most significant first) of I_i cap I_j inside z'.
std::vector<int> shared_positions(const NwEngine& E, int i, int j) {
    const auto& Ii = E.design().sets[static_cast<std::size_t>(i - 1)];
    auto K = intersect(Ii, E.design().sets[static_cast<std::size_t>(j - 1)]);
    std::vector<int> pos;
    for (int k : K) pos.push_back(static_cast<int>(std::lower_bound(Ii.begin(), Ii.end(), k) - Ii.begin()));
    return pos;
}

Word table_slot(Word zp, int ell, const std::vector<int>& pos) {
    Word t = 0;
    for (int p : pos) t = (t << 1) | ((zp >> (ell - 1 - p)) & 1);
    return t;
}

std::vector<std::uint8_t> predictor_from_advice(const NwEngine& E, int i, Word aux,
                                                const std::vector<std::vector<std::uint8_t>>& tables, int b,
                                                const std::vector<bool>& S) {
    int ell = E.ell(), m = E.m();
    std::vector<std::vector<int>> pos;
    for (int j = 1; j < i; ++j) pos.push_back(shared_positions(E, i, j));
    std::vector<std::uint8_t> out(std::size_t{1} << ell);
    for (Word zp = 0; zp < out.size(); ++zp) {
        Word r = E.join(i, zp * 2 + static_cast<Word>(b), aux).second;
        Word y = 0;
        for (int j = 1; j <= m; ++j) {
            Word bit;
            if (j < i)
                bit = tables[static_cast<std::size_t>(j - 1)][table_slot(zp, ell, pos[static_cast<std::size_t>(j - 1)])];
            else
                bit = (r >> (m - j)) & 1;
            y = (y << 1) | bit;
        }
        out[zp] = S[y] ? 1 : 0;
    }
    return out;
}

// -1 below the band, +1 above, 0 inside.
int band_side(const NwEngine& E, std::uint64_t dist) {
    std::int64_t scaled = static_cast<std::int64_t>(dist) << E.eps_shift();
    std::int64_t mid = std::int64_t{1} << (E.ell() + E.eps_shift() - 1);
    std::int64_t w = std::int64_t{1} << E.ell();
    if (scaled < mid - w) return -1;
    if (scaled > mid + w) return 1;
    return 0;
}

std::vector<std::uint8_t> flipped(std::vector<std::uint8_t> y) {
    for (auto& b : y) b ^= 1;
    return y;
}

}  // namespace

Advice comp(const HybridPairs& H, bool less, Word w) {
    const NwEngine& E = H.engine();
    auto step = H.locate_failure(less, w);
    if (!step) throw UsageError("comp: the witness does not break any per-aux pair");
    const LexPair& P = H.greater_pair(step->i, step->aux);
    Word gap = P.A.size() > P.B.size() ? P.A.size() - P.B.size() : P.B.size() - P.A.size();
    if (gap <= E.slack()) throw Error("comp: broken pair with |X| and |Y| within the slack; this is a bug");

    Advice a;
    a.i = step->i;
    a.aux = step->aux;
    for (int j = 1; j < a.i; ++j) {
        auto pos = shared_positions(E, a.i, j);
        std::vector<std::uint8_t> table(std::size_t{1} << pos.size());
        for (Word t = 0; t < table.size(); ++t) {
            Word zp = 0;
            for (std::size_t q = 0; q < pos.size(); ++q)
                if ((t >> (pos.size() - 1 - q)) & 1) zp |= Word{1} << (E.ell() - 1 - pos[q]);
            Word z = E.join(a.i, zp * 2, a.aux).first;
            table[t] = static_cast<std::uint8_t>(E.code().bit(H.f(), E.restrict(z, j)));
        }
        a.tables.push_back(table);
    }
    auto code = E.code().encode(H.f());
    for (int b = 0; b <= 1; ++b) {
        auto g = H.predictor(a.i, a.aux, b);
        int side = band_side(E, hamming(g, code));
        if (side == 0) continue;
        a.b = b;
        a.above = side > 0 ? 1 : 0;
        auto list = E.code().list_decode(a.above ? flipped(g) : g, E.eps_shift());
        auto it = std::find(list.begin(), list.end(), H.f());
        if (it == list.end()) throw Error("comp: message missing from its decoding list; this is a bug");
        a.index = static_cast<std::size_t>(it - list.begin());
        return a;
    }
    throw Error("comp: neither predictor leaves the band; this is a bug");
}

std::optional<Word> decomp(const NwEngine& E, const Advice& a, const std::vector<bool>& S) {
    if (a.i < 1 || a.i > E.m() || a.aux >= E.aux_count() || S.size() != E.outputs()) return std::nullopt;
    if (static_cast<int>(a.tables.size()) != a.i - 1) return std::nullopt;
    for (int j = 1; j < a.i; ++j)
        if (a.tables[static_cast<std::size_t>(j - 1)].size() != (std::size_t{1} << shared_positions(E, a.i, j).size()))
            return std::nullopt;
    auto g = predictor_from_advice(E, a.i, a.aux, a.tables, a.b, S);
    auto list = E.code().list_decode(a.above ? flipped(g) : g, E.eps_shift());
    if (a.index >= list.size()) return std::nullopt;
    return list[a.index];
}

std::uint64_t pack_advice(const NwEngine& E, const Advice& a) {
    std::uint64_t offset = 0, L = E.list_size();
    for (int i = 1; i < a.i; ++i) offset += E.aux_count() * (std::uint64_t{1} << E.table_bits(i)) * 4 * L;
    std::uint64_t tb = 0;
    for (const auto& t : a.tables)
        for (auto bit : t) tb = (tb << 1) | bit;
    std::uint64_t k = (a.aux << E.table_bits(a.i)) | tb;
    k = ((k * 2 + static_cast<std::uint64_t>(a.b)) * 2 + static_cast<std::uint64_t>(a.above)) * L + a.index;
    return offset + k;
}

Advice unpack_advice(const NwEngine& E, std::uint64_t k) {
    std::uint64_t L = E.list_size();
    Advice a;
    for (a.i = 1; a.i <= E.m(); ++a.i) {
        std::uint64_t block = E.aux_count() * (std::uint64_t{1} << E.table_bits(a.i)) * 4 * L;
        if (k < block) break;
        k -= block;
    }
    if (a.i > E.m()) throw UsageError("advice index out of range");
    a.index = static_cast<std::size_t>(k % L);
    k /= L;
    a.above = static_cast<int>(k % 2);
    k /= 2;
    a.b = static_cast<int>(k % 2);
    k /= 2;
    std::uint64_t T = E.table_bits(a.i);
    std::uint64_t tb = k & ((std::uint64_t{1} << T) - 1);
    a.aux = k >> T;
    std::vector<std::size_t> sizes;
    for (int j = 1; j < a.i; ++j) sizes.push_back(std::size_t{1} << shared_positions(E, a.i, j).size());
    int shift = static_cast<int>(T);
    for (auto sz : sizes) {
        std::vector<std::uint8_t> t(sz);
        for (auto& bit : t) bit = static_cast<std::uint8_t>((tb >> --shift) & 1);
        a.tables.push_back(t);
    }
    return a;
}

std::vector<Word> decomp_range(const NwEngine& E, const std::vector<bool>& S) {
    std::set<Word> out;
    for (int i = 1; i <= E.m(); ++i) {
        std::vector<std::size_t> sizes;
        for (int j = 1; j < i; ++j) sizes.push_back(std::size_t{1} << shared_positions(E, i, j).size());
        std::uint64_t T = E.table_bits(i);
        for (Word aux = 0; aux < E.aux_count(); ++aux) {
            for (std::uint64_t tb = 0; tb < (std::uint64_t{1} << T); ++tb) {
                std::vector<std::vector<std::uint8_t>> tables;
                int shift = static_cast<int>(T);
                for (auto sz : sizes) {
                    std::vector<std::uint8_t> t(sz);
                    for (auto& bit : t) bit = static_cast<std::uint8_t>((tb >> --shift) & 1);
                    tables.push_back(t);
                }
                for (int b = 0; b <= 1; ++b) {
                    auto g = predictor_from_advice(E, i, aux, tables, b, S);
                    for (const auto& y : {g, flipped(g)})
                        for (Word f : E.code().list_decode(y, E.eps_shift())) out.insert(f);
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

ApproxResult certify_approx(const NwEngine& E, Word f, const std::vector<bool>& S) {
    auto pairs = std::make_shared<const HybridPairs>(E, f, S);
    ApproxResult r;
    r.pairs = pairs;
    r.hits = pairs->generator_hits();
    r.val = static_cast<double>(r.hits) * static_cast<double>(E.outputs()) / static_cast<double>(E.seeds());
    if (auto w = pairs->less_failure()) {
        r.failed_less = true;
        r.witness = *w;
        r.advice = comp(*pairs, true, *w);
        return r;
    }
    if (auto w = pairs->greater_failure()) {
        r.failed_less = false;
        r.witness = *w;
        r.advice = comp(*pairs, false, *w);
        return r;
    }
    r.certified = true;
    return r;
}

}  // namespace tfz

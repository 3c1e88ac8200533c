#include "tfz/soundness.hpp"

#include "tfz/rng.hpp"

namespace tfz {

void SoundnessReport::absorb(const SoundnessReport& o) {
    instances += o.instances;
    target_solutions += o.target_solutions;
    failures += o.failures;
    max_back_queries = std::max(max_back_queries, o.max_back_queries);
    for (const auto& n : o.notes)
        if (notes.size() < 5) notes.push_back(n);
}

SoundnessReport check_soundness(const Reduction& r, Index cap) {
    SoundnessReport rep;
    rep.rule = r.rule;
    rep.instances = 1;
    for (const auto& t : brute_solve(r.target, cap)) {
        ++rep.target_solutions;
        QueryLedger L;
        std::string why;
        try {
            Solution s = r.map_back(t, L);
            rep.max_back_queries = std::max(rep.max_back_queries, L.total());
            if (!verify(r.source, s)) why = "back-mapped " + s.variant + " does not verify";
        } catch (const BackMapError& e) {
            why = e.what();
        }
        if (!why.empty()) {
            ++rep.failures;
            if (rep.notes.size() < 5) {
                std::string w;
                for (Index x : t.witness) w += " " + std::to_string(x);
                rep.notes.push_back(r.rule + ": target " + t.variant + w + ": " + why);
            }
        }
    }
    return rep;
}

SweepCase sweep_case(const std::string& rule, std::uint64_t k, std::uint64_t seed) {
    static const char* modes3[] = {"uniform", "planted", "structured"};
    static const char* modes2[] = {"uniform", "planted"};
    Rng rng = Rng(seed).split(k);
    SweepCase c;
    GenSpec& s = c.spec;
    s.seed = rng();
    s.mode = modes2[k % 2];
    Index pow2[] = {2, 4, 8};
    if (rule == "lossy_stretch") {
        s.problem = "lossy";
        s.size = rng.uniform(1, 6);
        s.M = rng.uniform(s.size + 1, 2 * s.size);
        c.options.target_M = rng.uniform(s.M + 1, 3 * s.M);
    } else if (rule == "lossy_pad_pow2") {
        s.problem = "lossy";
        s.size = rng.uniform(1, 8);
    } else if (rule == "ec_prime_to_lossy") {
        s.problem = "empty-child";
        s.size = rng.uniform(1, 32);
        s.variant = k % 4 < 2 ? "prime" : "standard";
        s.mode = modes3[k % 3];
    } else if (rule == "lossy_to_ec" || rule == "injlossy_to_bec") {
        s.problem = "lossy";
        s.size = pow2[k % 3];
        if (rule == "injlossy_to_bec") s.variant = "bijective";
    } else if (rule == "ecwh_to_sinkofdag") {
        s.problem = "empty-child";
        s.size = rng.uniform(1, 32);
        s.variant = "with_height";
        s.mode = modes3[k % 3];
    } else if (rule == "lossy_and_sml_to_ecwh" || rule == "injlossy_and_eoml_to_becwh") {
        s.problem = "lossy+line";
        s.size = pow2[k % 3];
        s.M = rng.uniform(1, 6);
        if (rule == "injlossy_and_eoml_to_becwh") s.variant = "end";
    } else if (rule == "nephew_to_btreeleaf" || rule == "nephew_inv_to_ec_prime") {
        s.problem = "nephew";
        s.size = rng.uniform(1, 32);
        c.options.coin = static_cast<int>((k / 2) % 2);
        if (rule == "nephew_inv_to_ec_prime") s.variant = "inverse";
    } else if (rule == "nephew_to_weakpigeon") {
        s.problem = "nephew";
        s.size = rng.uniform(1, 12);
    } else if (rule == "btreeleaf_to_weakpigeon") {
        s.problem = "btree-leaf";
        s.size = rng.uniform(1, 32);
    } else if (rule == "ec_to_nephew" || rule == "ec_to_nephew_inv") {
        s.problem = "empty-child";
        s.size = rng.uniform(1, 32);
        s.mode = modes3[k % 3];
    } else if (rule == "dlo_to_lossy") {
        s.problem = "dlo";
        s.size = rng.uniform(2, 8);
        s.mode = modes3[k % 3];
        s.med = k % 6 < 3 ? "median" : "lower";
    } else if (rule == "amgm_to_lossy") {
        s.problem = "amgm";
        s.size = 2;
        s.c_num = 5;
    } else {
        throw UsageError("no soundness sweep for rule '" + rule + "'");
    }
    return c;
}

Index sweep_cap(const std::string& rule) { return rule == "amgm_to_lossy" ? Index{1} << 16 : kDefaultBruteCap; }

SoundnessReport soundness_sweep(const std::string& rule, Index count, std::uint64_t seed) {
    SoundnessReport total;
    total.rule = rule;
    for (Index k = 0; k < count; ++k) {
        SweepCase c = sweep_case(rule, static_cast<std::uint64_t>(k), seed);
        Generated g = gen_instance(c.spec);
        Reduction r = apply_rule(rule, g.instance, c.options);
        total.absorb(check_soundness(r, sweep_cap(rule)));
    }
    return total;
}

}  // namespace tfz

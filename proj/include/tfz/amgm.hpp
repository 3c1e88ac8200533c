#pragma once

#include <cstdint>

#include "tfz/nw.hpp"
#include "tfz/problems.hpp"
#include "tfz/reductions.hpp"

namespace tfz {

struct AmgmParams {
    Index N = 2;
    Index c_num = 5;
    Index c_den = 1;
    NwParams nw{2, 2, 3, 0.25};
};

AmgmParams toy_amgm_params();

// Sizes of the Lossy-Code instance built by amgm_to_lossy.
struct AmgmLayout {
    Index messages = 0;  // N'
    Index P = 0;
    Index D = 0;         // seeds
    Index M = 0;         // 2N
    Index Qmax = 0;      // bound on the product of the two approximate counts
    Index Kc = 0;        // max |range(Decomp^S)| over S
    Index X = 0, Y1 = 0, Y2 = 0, Y = 0;
    double ratio() const { return static_cast<double>(Y) / static_cast<double>(X); }
};

// Throws UsageError if the parameters leave |Y| >= |X|.
AmgmLayout amgm_layout(const NwEngine& E, Index P);

Reduction amgm_to_lossy(const AmgmInstance& src, const AmgmParams& params);

}  // namespace tfz

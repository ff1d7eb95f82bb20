#pragma once

#include "heatrate/consistency.hpp"
#include "heatrate/core.hpp"

#include <random>

namespace heatrate {

using Rng = std::mt19937_64;

struct ItemSample {
    MaterialParams params;
    FreeChoice free;  // filled for item 9
};

/// Random parameters satisfying the conditions of item 1..9. With physical = true, lambda and
/// tau are positive and nu is non-negative as the stability analysis requires.
ItemSample sample_item(int item, Rng& rng, bool physical = false);

/// Random LSO parameters with mu < 0 (kappa, lambda nonzero).
MaterialParams sample_negative_mu(Rng& rng);

/// Random state of dimension dim, with q'' and g'' filled.
ThermalState sample_state(Rng& rng, int dim = 3);

}  // namespace heatrate

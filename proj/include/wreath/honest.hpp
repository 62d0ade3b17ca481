#pragma once

#include "wreath/wreath.hpp"

namespace wreath {

// Independent multiplication oracle: evaluates x and y literally on an
// enlarged window and multiplies entrywise (matrix product + Laurent shift
// action + Laurent convolution). Exact on the core window [-core, core]^2
// because the right factor has finitely many nonzero rows.
HonestWindow literal_window_product(const WreathContext& ctx,
                                    const WreathElement& x,
                                    const WreathElement& y, int64_t core);

// Compares wreath_mul against literal_window_product on random pairs.
Report verify_oracle_equivalence(const WreathContext& ctx, uint64_t pair_count,
                                 uint64_t seed);

} // namespace wreath

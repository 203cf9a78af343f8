#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matchings/exact_count.hpp"
#include "matchings/mcmc.hpp"

namespace matchings {

// one gadget size of the conductance table
struct TorpidRow {
    int k = 0;
    BigInt omega{0};
    Rational pi_S{0};
    Rational phi{0};
    std::optional<Rational> mixing_lower;  // 1/(4 phi)
    bool skipped = false;
    std::string note;
};

enum class TorpidVariant {
    TorpidGadget,     // H_k, canonical pattern weights, cut = Near(x1,v) class
    Counterexample,   // G_k, canonical pattern weights, cut = S1 u S3
    BroderDecay,      // G_k, constant weights, cut = perfect states
};

// exact conductance rows over a k range; rows whose state space exceeds the
// cap are marked skipped instead of failing the whole run
std::vector<TorpidRow> run_torpid_experiment(TorpidVariant variant, int k_lo,
                                             int k_hi,
                                             std::size_t state_cap = 5'000'000);

std::string torpid_csv(const std::vector<TorpidRow>& rows);

}  // namespace matchings

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "matchings/exact_count.hpp"
#include "matchings/graph.hpp"

namespace matchings {

// deterministic randomness source; mt19937_64 output is fixed by the
// standard, so seeded runs reproduce across platforms
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t bits() { return gen_(); }
    int below(int n);  // uniform in [0, n), rejection sampled (no modulo bias)
    double unit();     // uniform in [0, 1), 53-bit
private:
    std::mt19937_64 gen_;
};

// positive weight per hole pattern, exact rationals; the canonical choice
// makes the stationary distribution uniform across hole patterns
class HoleWeightFn {
public:
    static HoleWeightFn broder();                        // constant 1
    static HoleWeightFn jsv(const HolePatternTable& t);  // 1 / |class|
    // lines "u v weight" plus "perfect weight"; weights are decimals or p/q
    static HoleWeightFn from_file(std::istream& in, const Graph& g);
    const Rational& operator()(const HolePattern& p) const;
    bool constant() const { return constant_; }

private:
    bool constant_ = false;
    Rational unit_{1};
    std::map<std::pair<VertexId, VertexId>, Rational> table_;  // (-1,-1) = perfect
};

// every non-hold transition the edge-shift rule can propose from m, with its
// exact proposal probability; the remaining mass holds
std::vector<std::pair<Matching, Rational>> broder_proposals(const Graph& g,
                                                            const Matching& m);

// one step of the symmetric edge-shift chain (m must be in the state space)
Matching broder_step(const Graph& g, const Matching& m, Rng& rng);

// edge-shift proposal filtered by the Metropolis ratio of pattern weights;
// certain acceptances consume no randomness, so constant weights reproduce
// broder_step trajectories exactly
Matching jsv_step(const Graph& g, const Matching& m, const HoleWeightFn& w,
                  Rng& rng);

// explicit state space + sparse kernel + stationary distribution
struct ChainModel {
    Graph graph{0};
    HoleWeightFn weights;
    std::vector<Matching> states;        // sorted
    std::vector<HolePattern> patterns;   // per state
    std::vector<Rational> pi;            // exact, sums to 1
    std::vector<double> pi_d;
    std::vector<std::size_t> row_ptr;    // double kernel, CSR, self-loops kept
    std::vector<int> col;
    std::vector<double> val;

    int index_of(const Matching& m) const;  // -1 when absent
    std::size_t size() const { return states.size(); }
};

ChainModel build_chain_model(const Graph& g, const HoleWeightFn& w,
                             std::size_t state_cap = 5'000'000);

// row i of the kernel recomputed in exact arithmetic (includes the self-loop)
std::vector<std::pair<int, Rational>> exact_row(const ChainModel& m, int i);

struct CutReport {
    std::string description;
    Rational phi{0};        // exact conductance of the cut
    Rational pi_S{0};
    Rational pi_comp{0};
    std::optional<Rational> mixing_lower;  // 1/(4 phi); empty when phi = 0
    bool bound_applies = false;            // pi_S <= 1/2
    BigInt states_in_S{0};
    BigInt states_total{0};
};

// exact conductance of the cut S (state indices); rejects empty or full S
CutReport conductance(const ChainModel& m, const std::vector<int>& S,
                      const std::string& description);

// two-pass variant that never materializes the state space; membership is a
// predicate on the matching and its hole pattern
CutReport conductance_streaming(
    const Graph& g, const HoleWeightFn& w,
    const std::function<bool(const Matching&, const HolePattern&)>& in_S,
    const std::string& description);

struct MixingResult {
    long steps = 0;
    bool capped = false;  // cap hit: steps is only a lower bound
};

// max over starts of the first time total variation to pi drops to delta
MixingResult mixing_time(const ChainModel& m, double delta = 0.25,
                         long cap = 100000, std::size_t size_gate = 20000);

struct SimulateOptions {
    long steps = 0;
    std::uint64_t seed = 1;
    int checkpoints = 0;  // TV-vs-pi checkpoints (requires a reference model)
};

struct Trajectory {
    std::map<std::string, long> pattern_occupancy;  // pattern -> visit count
    long perfect_visits = 0;
    long states_recorded = 0;                       // steps + 1
    std::vector<std::pair<long, double>> tv_checkpoints;
};

Trajectory simulate(const Graph& g, const HoleWeightFn& w, const Matching& start,
                    const SimulateOptions& opt,
                    const ChainModel* reference = nullptr);

}  // namespace matchings

#include "matchings/experiments.hpp"

#include <sstream>

#include "matchings/gadgets.hpp"

namespace matchings {
namespace {

TorpidRow conductance_row(int k, const Graph& g, const GadgetGraph& gadget,
                          TorpidVariant variant, std::size_t state_cap) {
    TorpidRow row;
    row.k = k;
    HolePatternTable table = hole_pattern_table(g);
    row.omega = table.omega_size();
    if (row.omega > static_cast<long>(state_cap)) {
        row.skipped = true;
        row.note = "state space exceeds the cap";
        return row;
    }

    HoleWeightFn weights = variant == TorpidVariant::BroderDecay
                               ? HoleWeightFn::broder()
                               : HoleWeightFn::jsv(table);
    std::function<bool(const Matching&, const HolePattern&)> in_S;
    std::string description;
    switch (variant) {
        case TorpidVariant::TorpidGadget: {
            VertexId x1 = gadget.at("x1"), v = gadget.at("v");
            HolePattern wide = HolePattern::near(x1, v);
            in_S = [wide](const Matching&, const HolePattern& p) { return p == wide; };
            description = "pattern class " + to_string(wide);
            break;
        }
        case TorpidVariant::Counterexample:
            in_S = [&g, &gadget](const Matching& m, const HolePattern&) {
                auto classes = classify_S(gadget, m);
                return classes.count(1) || classes.count(3);
            };
            description = "S1 u S3";
            break;
        case TorpidVariant::BroderDecay:
            in_S = [](const Matching&, const HolePattern& p) { return p.is_perfect(); };
            description = "perfect states";
            break;
    }

    CutReport rep = conductance_streaming(g, weights, in_S, description);
    row.pi_S = rep.pi_S;
    row.phi = rep.phi;
    row.mixing_lower = rep.mixing_lower;
    return row;
}

}  // namespace

std::vector<TorpidRow> run_torpid_experiment(TorpidVariant variant, int k_lo,
                                             int k_hi, std::size_t state_cap) {
    if (k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("bad k range");
    std::vector<TorpidRow> rows;
    for (int k = k_lo; k <= k_hi; ++k) {
        GadgetGraph gadget = variant == TorpidVariant::TorpidGadget
                                 ? torpid_gadget(k)
                                 : counterexample_graph(k);
        rows.push_back(conductance_row(k, gadget.graph, gadget, variant, state_cap));
    }
    return rows;
}

std::string torpid_csv(const std::vector<TorpidRow>& rows) {
    std::ostringstream os;
    os << "k,omega,pi_S,phi,mixing_lower,note\n";
    for (const TorpidRow& r : rows) {
        os << r.k << ",";
        if (r.skipped) {
            os << ",,,," << r.note << "\n";
            continue;
        }
        os << r.omega << "," << r.pi_S.get_d() << "," << r.phi.get_d() << ",";
        if (r.mixing_lower) os << r.mixing_lower->get_d();
        os << "," << r.note << "\n";
    }
    return os.str();
}

}  // namespace matchings

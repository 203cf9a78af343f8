#include "matchings/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace matchings {
namespace {

Rational rat(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::pair<VertexId, VertexId> key_of(const HolePattern& p) {
    return {p.a, p.b};
}

// Neumaier-compensated accumulator; TV sums of many tiny terms would
// otherwise lose digits against the 1e-* thresholds used in tests
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double total_variation(const std::vector<double>& mu, const std::vector<double>& nu) {
    CompensatedSum s;
    for (std::size_t i = 0; i < mu.size(); ++i) s.add(std::abs(mu[i] - nu[i]));
    return 0.5 * s.value();
}

Rational parse_rational(const std::string& tok) {
    auto dot = tok.find('.');
    if (dot == std::string::npos) {
        Rational r;
        if (r.set_str(tok, 10) != 0)
            throw std::invalid_argument("bad weight value: " + tok);
        r.canonicalize();
        return r;
    }
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    std::size_t frac = tok.size() - dot - 1;
    if (digits.empty() || frac == 0)
        throw std::invalid_argument("bad weight value: " + tok);
    BigInt num;
    if (num.set_str(digits, 10) != 0)
        throw std::invalid_argument("bad weight value: " + tok);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

int Rng::below(int n) {
    if (n <= 0) throw std::invalid_argument("Rng::below needs n > 0");
    std::uint64_t un = static_cast<std::uint64_t>(n);
    std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % un + 1) % un;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;  // inclusive
    std::uint64_t r;
    do {
        r = gen_();
    } while (r > limit);
    return static_cast<int>(r % un);
}

double Rng::unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

HoleWeightFn HoleWeightFn::broder() {
    HoleWeightFn f;
    f.constant_ = true;
    return f;
}

HoleWeightFn HoleWeightFn::jsv(const HolePatternTable& t) {
    HoleWeightFn f;
    if (t.perfect > 0) f.table_[{-1, -1}] = Rational(1) / Rational(t.perfect);
    for (const auto& [uv, cnt] : t.near) {
        if (cnt > 0) f.table_[uv] = Rational(1) / Rational(cnt);
    }
    if (f.table_.empty())
        throw std::invalid_argument("pattern table has no realized patterns");
    return f;
}

HoleWeightFn HoleWeightFn::from_file(std::istream& in, const Graph& g) {
    HoleWeightFn f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        std::pair<VertexId, VertexId> key;
        std::string wtok;
        if (toks.size() == 2 && toks[0] == "perfect") {
            key = {-1, -1};
            wtok = toks[1];
        } else if (toks.size() == 3) {
            VertexId u = g.resolve(toks[0]);
            VertexId v = g.resolve(toks[1]);
            if (u == v)
                throw std::invalid_argument("weight line " + std::to_string(lineno) +
                                            ": holes must differ");
            key = {std::min(u, v), std::max(u, v)};
            wtok = toks[2];
        } else {
            throw std::invalid_argument("weight line " + std::to_string(lineno) +
                                        ": expected 'perfect w' or 'u v w'");
        }
        Rational w = parse_rational(wtok);
        if (w <= 0)
            throw std::invalid_argument("weight line " + std::to_string(lineno) +
                                        ": weights must be positive");
        if (!f.table_.emplace(key, w).second)
            throw std::invalid_argument("weight line " + std::to_string(lineno) +
                                        ": duplicate pattern");
    }
    if (f.table_.empty()) throw std::invalid_argument("weight file has no entries");
    return f;
}

const Rational& HoleWeightFn::operator()(const HolePattern& p) const {
    if (constant_) return unit_;
    auto it = table_.find(key_of(p));
    if (it == table_.end())
        throw std::invalid_argument("no weight for pattern " + to_string(p));
    return it->second;
}

std::vector<std::pair<Matching, Rational>> broder_proposals(const Graph& g,
                                                            const Matching& m) {
    std::vector<std::pair<Matching, Rational>> out;
    HolePattern p = hole_pattern(g, m);
    int n = g.num_vertices();
    if (p.is_perfect()) {
        for (const auto& [u, v] : m.pairs())
            out.emplace_back(m.without_pair(u, v), rat(1, m.size()));
        return out;
    }
    if (g.adjacent(p.a, p.b)) out.emplace_back(m.with_pair(p.a, p.b), rat(2, n));
    for (VertexId x : g.vertices()) {
        if (x == p.a || x == p.b) continue;
        VertexId y = m.partner(x);
        for (VertexId w : {p.a, p.b}) {
            if (!g.adjacent(x, w)) continue;
            out.emplace_back(m.without_pair(x, y).with_pair(x, w), rat(1, 2L * n));
        }
    }
    return out;
}

namespace {

// one proposal draw of the edge-shift rule; nullopt = hold. Randomness is
// consumed exactly as the rule is stated, so trajectories are reproducible
// independent of how the proposal list is represented.
std::optional<Matching> draw_proposal(const Graph& g, const Matching& m,
                                      const HolePattern& p, Rng& rng) {
    if (p.is_perfect()) {
        const auto& pr = m.pairs()[rng.below(m.size())];
        return m.without_pair(pr.first, pr.second);
    }
    std::vector<VertexId> vs = g.vertices();
    VertexId x = vs[rng.below(static_cast<int>(vs.size()))];
    if (x == p.a || x == p.b) {
        if (g.adjacent(p.a, p.b)) return m.with_pair(p.a, p.b);
        return std::nullopt;
    }
    VertexId y = m.partner(x);
    VertexId w = rng.below(2) == 0 ? p.a : p.b;
    if (!g.adjacent(x, w)) return std::nullopt;
    return m.without_pair(x, y).with_pair(x, w);
}

}  // namespace

Matching broder_step(const Graph& g, const Matching& m, Rng& rng) {
    HolePattern p = hole_pattern(g, m);
    auto next = draw_proposal(g, m, p, rng);
    return next ? *next : m;
}

Matching jsv_step(const Graph& g, const Matching& m, const HoleWeightFn& w,
                  Rng& rng) {
    HolePattern p = hole_pattern(g, m);
    auto next = draw_proposal(g, m, p, rng);
    if (!next) return m;
    if (w.constant()) return *next;
    const Rational& cur = w(p);
    const Rational& prop = w(hole_pattern(g, *next));
    if (prop >= cur) return *next;  // certain acceptance: no draw
    double ratio = Rational(prop / cur).get_d();
    return rng.unit() < ratio ? *next : m;
}

int ChainModel::index_of(const Matching& m) const {
    auto it = std::lower_bound(states.begin(), states.end(), m);
    if (it == states.end() || !(*it == m)) return -1;
    return static_cast<int>(it - states.begin());
}

namespace {

// exact kernel row as col -> probability, self-loop included
std::map<int, Rational> kernel_row(const ChainModel& m, int i) {
    std::map<int, Rational> row;
    Rational moved = 0;
    const Rational& wi = m.weights(m.patterns[i]);
    for (const auto& [prop, q] : broder_proposals(m.graph, m.states[i])) {
        int j = m.index_of(prop);
        if (j < 0) throw std::logic_error("proposal left the state space");
        const Rational& wj = m.weights(m.patterns[j]);
        Rational accept = wj >= wi ? Rational(1) : Rational(wj / wi);
        Rational mass = q * accept;
        row[j] += mass;
        moved += mass;
    }
    if (moved > 1) throw std::logic_error("kernel row exceeds 1");
    Rational hold = 1 - moved;
    if (hold > 0) row[i] += hold;
    return row;
}

}  // namespace

ChainModel build_chain_model(const Graph& g, const HoleWeightFn& w,
                             std::size_t state_cap) {
    ChainModel model;
    model.graph = g;
    model.weights = w;
    std::vector<std::pair<Matching, HolePattern>> found;
    bool over = false;
    for_each_low_hole_matching(g, [&](const Matching& m, const std::vector<VertexId>& holes) {
        if (over || holes.size() == 1) return;
        HolePattern p = holes.empty() ? HolePattern::perfect()
                                      : HolePattern::near(holes[0], holes[1]);
        found.emplace_back(m, p);
        if (found.size() > state_cap) over = true;
    });
    if (over)
        throw std::runtime_error(
            "state space exceeds the cap; use simulation or streaming analysis");
    if (found.empty())
        throw std::invalid_argument("state space is empty: no perfect or near-perfect matchings");
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t n = found.size();
    model.states.reserve(n);
    model.patterns.reserve(n);
    for (auto& [m, p] : found) {
        model.states.push_back(std::move(m));
        model.patterns.push_back(p);
    }
    Rational z = 0;
    model.pi.reserve(n);
    for (const auto& p : model.patterns) {
        const Rational& wp = w(p);
        if (wp <= 0) throw std::invalid_argument("weights must be positive on " + to_string(p));
        model.pi.push_back(wp);
        z += wp;
    }
    for (auto& x : model.pi) x /= z;
    model.pi_d.reserve(n);
    for (const auto& x : model.pi) model.pi_d.push_back(x.get_d());

    model.row_ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = kernel_row(model, static_cast<int>(i));
        Rational sum = 0;
        for (const auto& [j, q] : row) {
            model.col.push_back(j);
            model.val.push_back(q.get_d());
            sum += q;
        }
        if (sum != 1) throw std::logic_error("kernel row does not sum to 1");
        model.row_ptr[i + 1] = model.col.size();
    }
    return model;
}

std::vector<std::pair<int, Rational>> exact_row(const ChainModel& m, int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= m.size())
        throw std::out_of_range("exact_row: bad state index");
    auto row = kernel_row(m, i);
    return {row.begin(), row.end()};
}

CutReport conductance(const ChainModel& m, const std::vector<int>& S,
                      const std::string& description) {
    std::set<int> side(S.begin(), S.end());
    for (int i : side)
        if (i < 0 || static_cast<std::size_t>(i) >= m.size())
            throw std::out_of_range("conductance: bad state index");
    if (side.empty()) throw std::invalid_argument("conductance: cut side is empty");
    if (side.size() == m.size())
        throw std::invalid_argument("conductance: cut side is the whole state space");

    CutReport rep;
    rep.description = description;
    Rational flow = 0, mass = 0;
    for (int i : side) {
        mass += m.pi[i];
        for (const auto& [j, q] : exact_row(m, i))
            if (!side.count(j)) flow += m.pi[i] * q;
    }
    rep.pi_S = mass;
    rep.pi_comp = 1 - mass;
    rep.phi = flow / mass;
    rep.bound_applies = rep.pi_S <= rat(1, 2);
    if (rep.phi > 0) rep.mixing_lower = Rational(1) / (4 * rep.phi);
    rep.states_in_S = BigInt(static_cast<unsigned long>(side.size()));
    rep.states_total = BigInt(static_cast<unsigned long>(m.size()));
    return rep;
}

CutReport conductance_streaming(
    const Graph& g, const HoleWeightFn& w,
    const std::function<bool(const Matching&, const HolePattern&)>& in_S,
    const std::string& description) {
    Rational z = 0, mass = 0;
    BigInt total = 0, inside = 0;
    for_each_low_hole_matching(g, [&](const Matching& m, const std::vector<VertexId>& holes) {
        if (holes.size() == 1) return;
        HolePattern p = holes.empty() ? HolePattern::perfect()
                                      : HolePattern::near(holes[0], holes[1]);
        const Rational& wp = w(p);
        if (wp <= 0) throw std::invalid_argument("weights must be positive on " + to_string(p));
        z += wp;
        ++total;
        if (in_S(m, p)) {
            mass += wp;
            ++inside;
        }
    });
    if (total == 0)
        throw std::invalid_argument("state space is empty: no perfect or near-perfect matchings");
    if (inside == 0) throw std::invalid_argument("conductance: cut side is empty");
    if (inside == total)
        throw std::invalid_argument("conductance: cut side is the whole state space");

    Rational flow = 0;  // unnormalized; the partition constant cancels in phi
    for_each_low_hole_matching(g, [&](const Matching& m, const std::vector<VertexId>& holes) {
        if (holes.size() == 1) return;
        HolePattern p = holes.empty() ? HolePattern::perfect()
                                      : HolePattern::near(holes[0], holes[1]);
        if (!in_S(m, p)) return;
        const Rational& wp = w(p);
        for (const auto& [prop, q] : broder_proposals(g, m)) {
            HolePattern pp = hole_pattern(g, prop);
            if (in_S(prop, pp)) continue;
            const Rational& wq = w(pp);
            Rational accept = wq >= wp ? Rational(1) : Rational(wq / wp);
            flow += wp * q * accept;
        }
    });

    CutReport rep;
    rep.description = description;
    rep.pi_S = mass / z;
    rep.pi_comp = 1 - rep.pi_S;
    rep.phi = flow / mass;
    rep.bound_applies = rep.pi_S <= rat(1, 2);
    if (rep.phi > 0) rep.mixing_lower = Rational(1) / (4 * rep.phi);
    rep.states_in_S = inside;
    rep.states_total = total;
    return rep;
}

MixingResult mixing_time(const ChainModel& m, double delta, long cap,
                         std::size_t size_gate) {
    std::size_t n = m.size();
    if (n > size_gate)
        throw std::invalid_argument(
            "mixing_time: state space too large for dense distribution iteration");
    MixingResult res;
    std::vector<double> mu(n), next(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(mu.begin(), mu.end(), 0.0);
        mu[s] = 1.0;
        long hit = -1;
        if (total_variation(mu, m.pi_d) <= delta) hit = 0;
        for (long t = 1; hit < 0 && t <= cap; ++t) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double mi = mu[i];
                if (mi == 0.0) continue;
                for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
                    next[m.col[k]] += mi * m.val[k];
            }
            mu.swap(next);
            if (total_variation(mu, m.pi_d) <= delta) hit = t;
        }
        if (hit < 0) {
            res.steps = cap;
            res.capped = true;
            return res;  // lower bound already; later starts cannot lower it
        }
        res.steps = std::max(res.steps, hit);
    }
    return res;
}

Trajectory simulate(const Graph& g, const HoleWeightFn& w, const Matching& start,
                    const SimulateOptions& opt, const ChainModel* reference) {
    if (!start.valid_for(g))
        throw std::invalid_argument("start matching is not a matching of the graph");
    hole_pattern(g, start);  // throws unless the start lies in the state space

    Trajectory traj;
    Rng rng(opt.seed);
    Matching cur = start;

    std::vector<long> visits;
    if (reference) visits.assign(reference->size(), 0);
    std::set<long> marks;
    if (opt.checkpoints > 0 && reference) {
        for (int j = 1; j <= opt.checkpoints; ++j)
            marks.insert(opt.steps * static_cast<long>(j) / opt.checkpoints);
    }

    auto record = [&](long t) {
        HolePattern p = hole_pattern(g, cur);
        ++traj.pattern_occupancy[to_string(p)];
        if (p.is_perfect()) ++traj.perfect_visits;
        ++traj.states_recorded;
        if (reference) {
            int idx = reference->index_of(cur);
            if (idx < 0) throw std::logic_error("trajectory left the reference state space");
            ++visits[idx];
            if (marks.count(t)) {
                CompensatedSum s;
                double samples = static_cast<double>(t + 1);
                for (std::size_t i = 0; i < visits.size(); ++i)
                    s.add(std::abs(visits[i] / samples - reference->pi_d[i]));
                traj.tv_checkpoints.emplace_back(t, 0.5 * s.value());
            }
        }
    };

    record(0);
    for (long t = 1; t <= opt.steps; ++t) {
        cur = jsv_step(g, cur, w, rng);
        record(t);
    }
    return traj;
}

}  // namespace matchings

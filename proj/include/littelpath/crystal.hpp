#pragma once

#include "littelpath/paths.hpp"
#include "littelpath/rational.hpp"
#include "littelpath/rootsys.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace littelpath {

struct crystal_cap_error : std::runtime_error {
    explicit crystal_cap_error(std::size_t cap)
        : std::runtime_error("crystal vertex cap of " + std::to_string(cap) +
                             " exceeded (override with LITTELPATH_CRYSTAL_CAP)") {}
};

inline std::size_t default_crystal_cap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("LITTELPATH_CRYSTAL_CAP")) {
            long long v = std::atoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

namespace detail {

inline void require_integral(const RootSystem& rs, const PiecewisePath& p) {
    if (!is_integral(rs, p))
        throw std::domain_error("root operators are defined on integral paths only");
}

// Breakpoints of h(t) = <path(t), alpha_i^vee>: times[k], values[k].
struct PairingProfile {
    std::vector<Rat> times, values;
};

inline PairingProfile pairing_profile(const RootSystem& rs, const PiecewisePath& p, int i) {
    PairingProfile pr;
    pr.times.push_back(Rat(0));
    pr.values.push_back(Rat(0));
    Rat t(0), h(0);
    for (const auto& s : p.segments) {
        t += s.dur;
        h += dot(s.dir, rs.coroot(i)) * s.dur;
        pr.times.push_back(t);
        pr.values.push_back(h);
    }
    return pr;
}

/// Rebuilds `p` with the velocity of every piece inside [t0, t1] reflected by
/// s_i; pieces outside keep their direction.  The pointwise effect is
/// p(t) - (h(t) - h(t0)) alpha_i on [t0, t1] and a constant shift after t1.
inline PiecewisePath reflect_window(const RootSystem& rs, const PiecewisePath& p, int i,
                                    const Rat& t0, const Rat& t1) {
    PiecewisePath out;
    Rat t(0);
    auto emit = [&](const Vec& dir, const Rat& a, const Rat& b) {
        if (b <= a) return;
        bool inside = a >= t0 && b <= t1;
        Vec d = inside ? dir - dot(dir, rs.coroot(i)) * rs.root(i) : dir;
        out.segments.push_back({d, b - a});
    };
    for (const auto& s : p.segments) {
        Rat a = t, b = t + s.dur;
        Rat c0 = std::min(std::max(t0, a), b);
        Rat c1 = std::min(std::max(t1, a), b);
        emit(s.dir, a, c0);
        emit(s.dir, c0, c1);
        emit(s.dir, c1, b);
        t = b;
    }
    return canonicalize(out);
}

}  // namespace detail

/// epsilon_i: number of raising applications before annihilation; equals
/// -min_t <eta(t), alpha_i^vee> on integral paths.
inline long epsilon(const RootSystem& rs, const PiecewisePath& p, int i) {
    detail::require_integral(rs, p);
    return -to_long(min_pairing(p, rs, i).min);
}

/// phi_i = <eta(T), alpha_i^vee> - min pairing.
inline long phi(const RootSystem& rs, const PiecewisePath& p, int i) {
    detail::require_integral(rs, p);
    MinPairing m = min_pairing(p, rs, i);
    Rat end = dot(path_endpoint(p, rs.ambient_dim), rs.coroot(i));
    return to_long(Rat(end - m.min));
}

/// Lowering operator f~_i.  Null iff phi_i = 0.  Otherwise reflects the
/// velocity between the last minimum t0 of h and the first later time t1 with
/// h = m + 1; the weight drops by alpha_i and arc length is preserved.
inline std::optional<PiecewisePath> lower(const RootSystem& rs, const PiecewisePath& p, int i) {
    detail::require_integral(rs, p);
    MinPairing mp = min_pairing(p, rs, i);
    Rat end = dot(path_endpoint(p, rs.ambient_dim), rs.coroot(i));
    if (end - mp.min < 1) return std::nullopt;  // phi_i = 0
    Rat t0 = mp.last_t;  // the last minimum is always a breakpoint
    auto prof = detail::pairing_profile(rs, p, i);
    Rat target = mp.min + 1;
    // first breakpoint interval after t0 whose right value reaches m+1;
    // h is linear there, so the crossing interpolates exactly
    for (std::size_t k = 1; k < prof.times.size(); ++k) {
        if (prof.times[k] <= t0 || prof.values[k] < target) continue;
        Rat t1 = prof.times[k];
        if (prof.values[k] > target)
            t1 = prof.times[k - 1] + (target - prof.values[k - 1]) /
                                         (prof.values[k] - prof.values[k - 1]) *
                                         (prof.times[k] - prof.times[k - 1]);
        return detail::reflect_window(rs, p, i, t0, t1);
    }
    throw std::logic_error("lowering: level m+1 not reached despite phi > 0");
}

/// Raising operator e~_i, the exact inverse of lower.  Null iff epsilon_i = 0.
/// Mirror formula: t1 = first minimum of h, t0 = last time <= t1 with
/// h = m + 1; reflect between, shift by +alpha_i after.
inline std::optional<PiecewisePath> raise(const RootSystem& rs, const PiecewisePath& p, int i) {
    detail::require_integral(rs, p);
    MinPairing mp = min_pairing(p, rs, i);
    if (mp.min == 0) return std::nullopt;  // epsilon_i = 0
    Rat t1 = mp.first_t;  // the first minimum is always a breakpoint
    auto prof = detail::pairing_profile(rs, p, i);
    Rat target = mp.min + 1;
    // last breakpoint interval before t1 whose left value reaches m+1;
    // the descending crossing interpolates exactly
    for (std::size_t k = prof.times.size() - 1; k-- > 0;) {
        if (prof.times[k] >= t1 || prof.values[k] < target) continue;
        Rat t0 = prof.times[k];
        if (prof.values[k] > target)
            t0 = prof.times[k] + (prof.values[k] - target) /
                                     (prof.values[k] - prof.values[k + 1]) *
                                     (prof.times[k + 1] - prof.times[k]);
        return detail::reflect_window(rs, p, i, t0, t1);
    }
    throw std::logic_error("raising: level m+1 not found despite epsilon > 0");
}

// Finite crystal generated from a chamber-confined highest path by BFS
// closure under the lowering operators.  Vertices are canonical paths;
// edge (v, i, w) means f~_i(v) = w.  Immutable once generated.
struct CrystalGraph {
    std::vector<PiecewisePath> vertices;
    std::map<PiecewisePath, int> index;
    std::vector<Vec> weights;
    std::vector<std::vector<int>> f_adj;  // f_adj[v][i-1] = target or -1
    std::vector<std::vector<int>> e_adj;
    std::vector<std::pair<int, int>> bfs_parent;  // (parent vertex, letter), highest = (-1, 0)
    int highest = 0;
    int lowest = -1;
    Vec hw_weight;
    int rank = 0;
    int ambient_dim = 0;

    std::size_t size() const { return vertices.size(); }
};

inline std::optional<int> find_vertex(const CrystalGraph& g, const PiecewisePath& p) {
    auto it = g.index.find(canonicalize(p));
    if (it == g.index.end()) return std::nullopt;
    return it->second;
}

inline CrystalGraph generate_crystal(const RootSystem& rs, const PiecewisePath& hw_path,
                                     std::size_t cap = default_crystal_cap()) {
    PiecewisePath start = canonicalize(hw_path);
    for (int i = 1; i <= rs.rank; ++i)
        if (min_pairing(start, rs, i).min < 0)
            throw std::domain_error("highest path image must stay in the dominant chamber");
    Vec end = path_endpoint(start, rs.ambient_dim);
    if (!in_weight_lattice(rs, end))
        throw std::domain_error("highest path endpoint must lie in the weight lattice");

    CrystalGraph g;
    g.rank = rs.rank;
    g.ambient_dim = rs.ambient_dim;
    g.hw_weight = end;
    g.vertices.push_back(start);
    g.index[start] = 0;
    g.weights.push_back(end);
    g.f_adj.push_back(std::vector<int>(rs.rank, -1));
    g.e_adj.push_back(std::vector<int>(rs.rank, -1));
    g.bfs_parent.push_back({-1, 0});
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        for (int i = 1; i <= rs.rank; ++i) {
            auto f = lower(rs, g.vertices[v], i);
            if (!f) continue;
            auto it = g.index.find(*f);
            int w;
            if (it == g.index.end()) {
                if (g.vertices.size() >= cap) throw crystal_cap_error(cap);
                w = static_cast<int>(g.vertices.size());
                g.vertices.push_back(*f);
                g.index[*f] = w;
                g.weights.push_back(path_endpoint(*f, rs.ambient_dim));
                g.f_adj.push_back(std::vector<int>(rs.rank, -1));
                g.e_adj.push_back(std::vector<int>(rs.rank, -1));
                g.bfs_parent.push_back({static_cast<int>(v), i});
            } else {
                w = it->second;
            }
            g.f_adj[v][i - 1] = w;
            g.e_adj[w][i - 1] = static_cast<int>(v);
        }
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        bool lowest = true;
        for (int i = 0; i < rs.rank; ++i)
            if (g.f_adj[v][i] >= 0) lowest = false;
        if (lowest) {
            g.lowest = static_cast<int>(v);
            break;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Tensor operations on trajectory prefixes (two-case rule, recursive over the
// step list; the action agrees with lower/raise on the concatenated path).
// ---------------------------------------------------------------------------

inline long prefix_epsilon(const RootSystem& rs, const TrajectoryPrefix& pre, int i) {
    Rat offset(0), minv(0);
    for (const auto& s : pre.steps) {
        Rat m = min_pairing(s, rs, i).min;
        if (offset + m < minv) minv = offset + m;
        offset += dot(path_endpoint(s, rs.ambient_dim), rs.coroot(i));
    }
    if (!is_integer(minv)) throw std::domain_error("prefix is not integral");
    return -to_long(minv);
}

inline long prefix_phi(const RootSystem& rs, const TrajectoryPrefix& pre, int i) {
    Rat offset(0), minv(0);
    for (const auto& s : pre.steps) {
        Rat m = min_pairing(s, rs, i).min;
        if (offset + m < minv) minv = offset + m;
        offset += dot(path_endpoint(s, rs.ambient_dim), rs.coroot(i));
    }
    if (!is_integer(minv)) throw std::domain_error("prefix is not integral");
    return to_long(Rat(offset - minv));
}

namespace detail {

// f~_i(eta * pi) = f~_i(eta) * pi if phi_i(eta) > eps_i(pi), else eta * f~_i(pi)
inline bool tensor_lower_rec(const RootSystem& rs, std::vector<PiecewisePath>& steps,
                             std::size_t len, int i) {
    if (len == 1) {
        auto f = lower(rs, steps[0], i);
        if (!f) return false;
        steps[0] = *f;
        return true;
    }
    TrajectoryPrefix head;
    head.start_weight = zero_vec(rs.ambient_dim);
    head.steps.assign(steps.begin(), steps.begin() + (len - 1));
    long phi_head = prefix_phi(rs, head, i);
    long eps_last = epsilon(rs, steps[len - 1], i);
    if (phi_head > eps_last) return tensor_lower_rec(rs, steps, len - 1, i);
    auto f = lower(rs, steps[len - 1], i);
    if (!f) return false;
    steps[len - 1] = *f;
    return true;
}

// e~_i(eta * pi) = eta * e~_i(pi) if eps_i(pi) > phi_i(eta), else e~_i(eta) * pi
inline bool tensor_raise_rec(const RootSystem& rs, std::vector<PiecewisePath>& steps,
                             std::size_t len, int i) {
    if (len == 1) {
        auto e = raise(rs, steps[0], i);
        if (!e) return false;
        steps[0] = *e;
        return true;
    }
    TrajectoryPrefix head;
    head.start_weight = zero_vec(rs.ambient_dim);
    head.steps.assign(steps.begin(), steps.begin() + (len - 1));
    long phi_head = prefix_phi(rs, head, i);
    long eps_last = epsilon(rs, steps[len - 1], i);
    if (eps_last > phi_head) {
        auto e = raise(rs, steps[len - 1], i);
        if (!e) return false;
        steps[len - 1] = *e;
        return true;
    }
    return tensor_raise_rec(rs, steps, len - 1, i);
}

}  // namespace detail

inline std::optional<TrajectoryPrefix> tensor_lower(const RootSystem& rs,
                                                    const TrajectoryPrefix& pre, int i) {
    if (pre.steps.empty()) return std::nullopt;
    TrajectoryPrefix out = pre;
    if (!detail::tensor_lower_rec(rs, out.steps, out.steps.size(), i)) return std::nullopt;
    return out;
}

inline std::optional<TrajectoryPrefix> tensor_raise(const RootSystem& rs,
                                                    const TrajectoryPrefix& pre, int i) {
    if (pre.steps.empty()) return std::nullopt;
    TrajectoryPrefix out = pre;
    if (!detail::tensor_raise_rec(rs, out.steps, out.steps.size(), i)) return std::nullopt;
    return out;
}

/// Greedy raising to the highest vertex of the prefix component; the result
/// does not depend on the greedy order.  Returns the applied indices.
inline std::pair<TrajectoryPrefix, std::vector<int>> to_highest(const RootSystem& rs,
                                                                const TrajectoryPrefix& pre) {
    TrajectoryPrefix cur = pre;
    std::vector<int> word;
    for (;;) {
        bool raised = false;
        for (int i = 1; i <= rs.rank; ++i) {
            if (prefix_epsilon(rs, cur, i) == 0) continue;
            auto up = tensor_raise(rs, cur, i);
            if (!up) throw std::logic_error("epsilon > 0 but tensor raise annihilated");
            cur = *up;
            word.push_back(i);
            raised = true;
            break;
        }
        if (!raised) break;
    }
    return {cur, word};
}

// ---------------------------------------------------------------------------
// Lusztig involution
// ---------------------------------------------------------------------------

/// Vertex-level involution: the f~-word from the highest vertex is replayed
/// as an e~-word with starred letters from the lowest vertex.
inline std::vector<int> lusztig_map(const RootSystem& rs, const CrystalGraph& g) {
    if (g.lowest < 0) throw std::logic_error("crystal has no lowest vertex");
    std::vector<int> iota(g.size(), -1);
    for (std::size_t v = 0; v < g.size(); ++v) {
        // letters along the BFS tree path highest -> v, in traversal order
        std::vector<int> word;
        for (int cur = static_cast<int>(v); g.bfs_parent[cur].first >= 0;
             cur = g.bfs_parent[cur].first)
            word.push_back(g.bfs_parent[cur].second);
        // v = f_{w_k} ... f_{w_1}(highest) with w_1 applied first
        // iota(v) = e_{w_1*} ... then e_{w_k*} applied from the lowest vertex
        int x = g.lowest;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            x = g.e_adj[x][rs.star[*it - 1] - 1];
            if (x < 0) throw std::logic_error("lusztig word fell off the crystal");
        }
        iota[v] = x;
    }
    return iota;
}

/// iota(pi_1 (x) ... (x) pi_l) = iota(pi_l) (x) ... (x) iota(pi_1).
/// Each step must be a vertex of `g`.
inline TrajectoryPrefix lusztig_involution(const RootSystem& rs, const CrystalGraph& g,
                                           const TrajectoryPrefix& pre,
                                           const std::vector<int>* cached_map = nullptr) {
    std::vector<int> local;
    if (!cached_map) {
        local = lusztig_map(rs, g);
        cached_map = &local;
    }
    TrajectoryPrefix out;
    out.start_weight = pre.start_weight;
    for (auto it = pre.steps.rbegin(); it != pre.steps.rend(); ++it) {
        auto v = find_vertex(g, *it);
        if (!v) throw std::domain_error("prefix step is not a vertex of the crystal");
        out.steps.push_back(g.vertices[(*cached_map)[*v]]);
    }
    return out;
}

/// Weyl-group action on the crystal via i-chain symmetries:
/// s_i maps a vertex to the mirror position on its i-string.
inline int crystal_si(const RootSystem& rs, const CrystalGraph& g, int v, int i) {
    long k = phi(rs, g.vertices[v], i) - epsilon(rs, g.vertices[v], i);
    int cur = v;
    for (; k > 0; --k) cur = g.f_adj[cur][i - 1];
    for (; k < 0; ++k) cur = g.e_adj[cur][i - 1];
    if (cur < 0) throw std::logic_error("i-chain symmetry fell off the crystal");
    return cur;
}

// ---------------------------------------------------------------------------
// Characters and multiplicities
// ---------------------------------------------------------------------------

// s_lambda = e^lambda S_lambda(T_1..T_n) with T_i = e^{-alpha_i}; terms maps
// the exponent vector u (root coordinates of lambda - wt) to its multiplicity.
struct CharacterPoly {
    Vec base_weight;
    std::map<std::vector<long>, Int> terms;

    Int dimension() const {
        Int d(0);
        for (const auto& [u, m] : terms) d += m;
        return d;
    }
};

inline std::vector<long> integer_root_coords(const RootSystem& rs, const Vec& x) {
    auto c = root_coords(rs, x);
    if (!c) throw std::domain_error("vector is outside the root lattice span");
    std::vector<long> u(rs.rank);
    for (int k = 0; k < rs.rank; ++k) {
        if (!is_integer((*c)[k])) throw std::domain_error("vector has non-integer root coordinates");
        u[k] = to_long((*c)[k]);
    }
    return u;
}

inline CharacterPoly character(const RootSystem& rs, const CrystalGraph& g) {
    CharacterPoly ch;
    ch.base_weight = g.hw_weight;
    for (const auto& w : g.weights) {
        auto u = integer_root_coords(rs, g.hw_weight - w);
        ch.terms[u] += 1;
    }
    return ch;
}

inline Rat eval_character(const CharacterPoly& ch, const std::vector<Rat>& tau) {
    Rat total(0);
    for (const auto& [u, m] : ch.terms) {
        Rat term(m);
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u[k] < 0) throw std::logic_error("negative character exponent");
            for (long e = 0; e < u[k]; ++e) term *= tau[k];
        }
        total += term;
    }
    return total;
}

/// Weight multiplicity K_{lambda,mu} read off the character.
inline Int weight_multiplicity(const RootSystem& rs, const CharacterPoly& ch, const Vec& mu) {
    auto diff = root_coords(rs, ch.base_weight - mu);
    if (!diff) return Int(0);
    std::vector<long> u(rs.rank);
    for (int k = 0; k < rs.rank; ++k) {
        if (!is_integer((*diff)[k]) || (*diff)[k] < 0) return Int(0);
        u[k] = to_long((*diff)[k]);
    }
    auto it = ch.terms.find(u);
    return it == ch.terms.end() ? Int(0) : it->second;
}

/// Rewrites the polynomial against a new base weight (new_base - base must be
/// a nonnegative integer combination of simple roots for all terms).
inline CharacterPoly rebase(const RootSystem& rs, const CharacterPoly& ch, const Vec& new_base) {
    auto shift = integer_root_coords(rs, new_base - ch.base_weight);
    CharacterPoly out;
    out.base_weight = new_base;
    for (const auto& [u, m] : ch.terms) {
        std::vector<long> v = u;
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] += shift[k];
            if (v[k] < 0) throw std::domain_error("rebase produced a negative exponent");
        }
        out.terms[v] = m;
    }
    return out;
}

inline CharacterPoly charpoly_mul(const CharacterPoly& a, const CharacterPoly& b) {
    CharacterPoly out;
    out.base_weight = a.base_weight + b.base_weight;
    for (const auto& [u, mu] : a.terms)
        for (const auto& [v, mv] : b.terms) {
            std::vector<long> w(u.size());
            for (std::size_t k = 0; k < u.size(); ++k) w[k] = u[k] + v[k];
            out.terms[w] += mu * mv;
        }
    return out;
}

inline bool charpoly_equal(const CharacterPoly& a, const CharacterPoly& b) {
    return a.base_weight == b.base_weight && a.terms == b.terms;
}

/// m^lambda_{mu,kappa}: vertices eta of the kappa-crystal with
/// mu + eta(t) dominant throughout and mu + wt(eta) = lambda.
inline Int mult_m(const RootSystem& rs, const Vec& mu, const CrystalGraph& kappa_crystal,
                  const Vec& lambda) {
    Int count(0);
    for (std::size_t v = 0; v < kappa_crystal.size(); ++v) {
        if (mu + kappa_crystal.weights[v] != lambda) continue;
        bool confined = true;
        for (int i = 1; i <= rs.rank && confined; ++i)
            if (dot(mu, rs.coroot(i)) + min_pairing(kappa_crystal.vertices[v], rs, i).min < 0)
                confined = false;
        if (confined) ++count;
    }
    return count;
}

/// All targets lambda with m^lambda_{mu,kappa} > 0 (the transition support).
inline std::map<Vec, Int> mult_m_row(const RootSystem& rs, const Vec& mu,
                                     const CrystalGraph& kappa_crystal) {
    std::map<Vec, Int> row;
    for (std::size_t v = 0; v < kappa_crystal.size(); ++v) {
        bool confined = true;
        for (int i = 1; i <= rs.rank && confined; ++i)
            if (dot(mu, rs.coroot(i)) + min_pairing(kappa_crystal.vertices[v], rs, i).min < 0)
                confined = false;
        if (confined) row[mu + kappa_crystal.weights[v]] += 1;
    }
    return row;
}

/// Tensor-power multiplicities f^l_{lambda/mu} for l = 0..lmax, by dynamic
/// programming over mult_m rows.
inline std::vector<std::map<Vec, Int>> mult_f_levels(const RootSystem& rs, const Vec& mu,
                                                     const CrystalGraph& kappa_crystal,
                                                     long lmax) {
    std::vector<std::map<Vec, Int>> levels(lmax + 1);
    levels[0][mu] = 1;
    std::map<Vec, std::map<Vec, Int>> row_cache;
    for (long l = 0; l < lmax; ++l) {
        for (const auto& [nu, c] : levels[l]) {
            auto it = row_cache.find(nu);
            if (it == row_cache.end()) it = row_cache.emplace(nu, mult_m_row(rs, nu, kappa_crystal)).first;
            for (const auto& [lam, m] : it->second) levels[l + 1][lam] += c * m;
        }
    }
    return levels;
}

inline Int mult_f(const RootSystem& rs, const Vec& mu, const CrystalGraph& kappa_crystal,
                  long l, const Vec& lambda) {
    if (l < 0) throw std::invalid_argument("tensor power must be nonnegative");
    auto levels = mult_f_levels(rs, mu, kappa_crystal, l);
    auto it = levels[l].find(lambda);
    return it == levels[l].end() ? Int(0) : it->second;
}

/// Brute-force highest-weight prefix counting, the small-instance oracle for
/// the multiplicity DP: tuples (eta_1..eta_l) over the crystal such that
/// eta_mu (x) eta_1 (x) ... (x) eta_l is killed by every e~_i and ends at
/// lambda.  Pass an empty optional for mu = 0.
inline Int count_hw_prefixes(const RootSystem& rs, const std::optional<PiecewisePath>& eta_mu,
                             const CrystalGraph& kappa_crystal, long l, const Vec& lambda) {
    std::vector<PiecewisePath> base;
    if (eta_mu) base.push_back(canonicalize(*eta_mu));
    Int count(0);
    std::vector<std::size_t> idx(l, 0);
    const std::size_t n = kappa_crystal.size();
    for (;;) {
        TrajectoryPrefix pre;
        pre.start_weight = zero_vec(rs.ambient_dim);
        pre.steps = base;
        for (long k = 0; k < l; ++k) pre.steps.push_back(kappa_crystal.vertices[idx[k]]);
        bool hw = true;
        for (int i = 1; i <= rs.rank && hw; ++i)
            if (prefix_epsilon(rs, pre, i) != 0) hw = false;
        if (hw && prefix_weight(pre, rs.ambient_dim) == lambda) ++count;
        long k = l - 1;
        for (; k >= 0; --k) {
            if (++idx[k] < n) break;
            idx[k] = 0;
        }
        if (k < 0) break;
    }
    return count;
}

}  // namespace littelpath

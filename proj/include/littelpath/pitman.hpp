#pragma once

#include "littelpath/crystal.hpp"
#include "littelpath/paths.hpp"
#include "littelpath/rootsys.hpp"

#include <stdexcept>
#include <vector>

namespace littelpath {

// One Pitman transform per simple root, composed along a reduced word of the
// longest Weyl element.  The word is validated on construction; the composed
// transform does not depend on the choice of reduced word.
struct PitmanConfig {
    const RootSystem* rs = nullptr;
    std::vector<int> word;
};

inline PitmanConfig make_pitman_config(const RootSystem& rs, std::vector<int> word = {}) {
    PitmanConfig cfg;
    cfg.rs = &rs;
    cfg.word = word.empty() ? rs.w0_word : std::move(word);
    positive_roots_from_word(rs, cfg.word);  // throws unless reduced for w0
    return cfg;
}

/// P_alpha(eta)(t) = eta(t) - (inf_{s<=t} <eta(s), alpha_i^vee>) alpha_i.
/// The running minimum only moves while h is at a record low, where the
/// velocity gets reflected; elsewhere the piece is copied.  Exact, and
/// idempotent because the output pairing is everywhere >= 0.
inline PiecewisePath pitman_alpha(const RootSystem& rs, const PiecewisePath& p, int i) {
    const Vec& alpha = rs.root(i);
    const Vec& coroot = rs.coroot(i);
    PiecewisePath out;
    out.segments.reserve(p.segments.size());
    Rat h(0), running_min(0);
    for (const auto& s : p.segments) {
        Rat slope = dot(s.dir, coroot);
        Rat h_end = h + slope * s.dur;
        if (h_end >= running_min) {
            out.segments.push_back(s);  // no new record inside the piece
        } else if (h <= running_min) {
            // the whole piece rides the minimum
            out.segments.push_back({s.dir - slope * alpha, s.dur});
            running_min = h_end;
        } else {
            // record low starts inside the piece: split at h = running_min
            Rat cut = (running_min - h) / slope;  // slope < 0 here
            out.segments.push_back({s.dir, cut});
            out.segments.push_back({s.dir - slope * alpha, s.dur - cut});
            running_min = h_end;
        }
        h = h_end;
    }
    return canonicalize(out);
}

/// E_alpha(eta)(t) = eta(t) - (inf_{s in [t,T]} h) alpha + (inf_{[0,T]} h) alpha,
/// the suffix-minimum companion; equal to r P_alpha r.
inline PiecewisePath dual_alpha(const RootSystem& rs, const PiecewisePath& p, int i) {
    const Vec& alpha = rs.root(i);
    const Vec& coroot = rs.coroot(i);
    // walk backward: the suffix minimum follows h exactly where h sits below
    // every later value
    std::vector<Segment> rev;
    rev.reserve(p.segments.size());
    Rat h = dot(path_endpoint(p, rs.ambient_dim), coroot);
    Rat suffix_min = h;
    for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it) {
        Rat slope = dot(it->dir, coroot);
        Rat h_start = h - slope * it->dur;
        if (h_start >= suffix_min) {
            rev.push_back(*it);
        } else if (h >= suffix_min && slope > 0) {
            // record low (seen from the right) starts inside the piece
            Rat cut = (suffix_min - h_start) / slope;  // time from piece start
            rev.push_back({it->dir, it->dur - cut});
            rev.push_back({it->dir - slope * alpha, cut});
            suffix_min = h_start;
        } else {
            rev.push_back({it->dir - slope * alpha, it->dur});
            suffix_min = h_start;
        }
        h = h_start;
    }
    PiecewisePath out;
    out.segments.assign(rev.rbegin(), rev.rend());
    return canonicalize(out);
}

inline PiecewisePath pitman_path(const PitmanConfig& cfg, PiecewisePath p) {
    for (auto it = cfg.word.rbegin(); it != cfg.word.rend(); ++it)
        p = pitman_alpha(*cfg.rs, p, *it);
    return p;
}

inline PiecewisePath dual_path(const PitmanConfig& cfg, PiecewisePath p) {
    for (auto it = cfg.word.rbegin(); it != cfg.word.rend(); ++it)
        p = dual_alpha(*cfg.rs, p, *it);
    return p;
}

/// Generalized Pitman transform of a prefix: the image stays in the dominant
/// chamber and coincides with the highest vertex of the crystal component.
inline TrajectoryPrefix pitman(const PitmanConfig& cfg, const TrajectoryPrefix& pre) {
    return split_into_steps(pitman_path(cfg, delta(pre)), cfg.rs->ambient_dim);
}

/// Dual transform: the lowest vertex of the component on crystal prefixes.
inline TrajectoryPrefix dual(const PitmanConfig& cfg, const TrajectoryPrefix& pre) {
    return split_into_steps(dual_path(cfg, delta(pre)), cfg.rs->ambient_dim);
}

struct InverseResult {
    TrajectoryPrefix recovered;
    bool stabilized = false;
};

/// Finite-horizon inverse: dual(h_prefix) truncated to the first `window`
/// steps.  The stabilization flag reports whether shortening the prefix by
/// one step leaves the window unchanged -- the finite surrogate for the
/// suffix infima of the infinite-path dual transform.
inline InverseResult inverse_on_prefix(const PitmanConfig& cfg, const TrajectoryPrefix& h_prefix,
                                       std::size_t window) {
    const RootSystem& rs = *cfg.rs;
    if (window > h_prefix.length())
        throw std::invalid_argument("window exceeds prefix length");
    {
        PiecewisePath cat = delta(h_prefix);
        for (int i = 1; i <= rs.rank; ++i)
            if (min_pairing(cat, rs, i).min < 0)
                throw std::domain_error("inverse_on_prefix expects a chamber trajectory prefix");
    }
    InverseResult res;
    res.recovered.start_weight = zero_vec(rs.ambient_dim);
    if (window == 0) {
        res.stabilized = true;
        return res;
    }
    TrajectoryPrefix full = dual(cfg, h_prefix);
    res.recovered.steps.assign(full.steps.begin(), full.steps.begin() + window);
    if (window <= h_prefix.length() - 1) {
        TrajectoryPrefix shorter = h_prefix;
        shorter.steps.pop_back();
        TrajectoryPrefix again = dual(cfg, shorter);
        res.stabilized = std::equal(res.recovered.steps.begin(), res.recovered.steps.end(),
                                    again.steps.begin());
    }
    return res;
}

inline TrajectoryPrefix shift(const TrajectoryPrefix& pre) {
    if (pre.steps.empty()) throw std::invalid_argument("shift of an empty prefix");
    TrajectoryPrefix out;
    out.start_weight = pre.start_weight;
    out.steps.assign(pre.steps.begin() + 1, pre.steps.end());
    return out;
}

/// J = P o S, the induced dynamics on chamber trajectories.
inline TrajectoryPrefix j_map(const PitmanConfig& cfg, const TrajectoryPrefix& pre) {
    return pitman(cfg, shift(pre));
}

/// Pointwise Weyl action on a path (each velocity mapped by the group
/// element); distinct from the crystal action on i-strings.
inline PiecewisePath pointwise_word_action(const RootSystem& rs, const std::vector<int>& word,
                                           const PiecewisePath& p) {
    PiecewisePath out = p;
    for (auto& s : out.segments) s.dir = apply_word(rs, word, s.dir);
    return canonicalize(out);
}

}  // namespace littelpath

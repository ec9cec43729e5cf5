#pragma once

#include "littelpath/rational.hpp"
#include "littelpath/rootsys.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace littelpath {

struct Segment {
    Vec dir;  // constant velocity on the piece
    Rat dur;  // piece length in time, > 0 in canonical form
};

inline bool operator==(const Segment& a, const Segment& b) {
    return a.dur == b.dur && a.dir == b.dir;
}

// Continuous piecewise-linear path starting at 0, parametrized by [0, T] with
// T the sum of segment durations.  Equality is equality of canonical forms,
// i.e. pointwise equality as functions.
struct PiecewisePath {
    std::vector<Segment> segments;

    Rat domain_length() const {
        Rat t(0);
        for (const auto& s : segments) t += s.dur;
        return t;
    }
};

inline bool operator==(const PiecewisePath& a, const PiecewisePath& b) {
    return a.segments == b.segments;
}
inline bool operator!=(const PiecewisePath& a, const PiecewisePath& b) { return !(a == b); }

inline bool operator<(const Segment& a, const Segment& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    return a.dur < b.dur;
}
inline bool operator<(const PiecewisePath& a, const PiecewisePath& b) {
    return a.segments < b.segments;
}

/// Minimal segment list for the same function: zero-duration pieces removed,
/// consecutive pieces with equal direction merged.  Idempotent.
inline PiecewisePath canonicalize(const PiecewisePath& p) {
    PiecewisePath out;
    for (const auto& s : p.segments) {
        if (s.dur == 0) continue;
        if (s.dur < 0) throw std::invalid_argument("negative segment duration");
        if (!out.segments.empty() && out.segments.back().dir == s.dir)
            out.segments.back().dur += s.dur;
        else
            out.segments.push_back(s);
    }
    return out;
}

/// The straight line reaching v at time `duration` (a constant path when
/// v = 0, kept as one zero-velocity segment).
inline PiecewisePath straight_path_to(const Vec& v, const Rat& duration = Rat(1)) {
    PiecewisePath p;
    if (duration > 0) p.segments.push_back({Rat(1) / duration * v, duration});
    else if (!is_zero(v)) throw std::invalid_argument("nonzero endpoint needs positive duration");
    return p;
}

inline Vec path_endpoint(const PiecewisePath& p, int ambient_dim) {
    Vec v = zero_vec(ambient_dim);
    for (const auto& s : p.segments) v += s.dur * s.dir;
    return v;
}

inline Vec value_at(const PiecewisePath& p, const Rat& t, int ambient_dim) {
    if (t < 0) throw std::out_of_range("time before path start");
    Vec v = zero_vec(ambient_dim);
    Rat acc(0);
    for (const auto& s : p.segments) {
        if (t <= acc + s.dur) {
            v += (t - acc) * s.dir;
            return v;
        }
        v += s.dur * s.dir;
        acc += s.dur;
    }
    if (t > acc) throw std::out_of_range("time beyond path domain");
    return v;
}

/// value(t) = p1(t) for t <= T1, p1(T1) + p2(t - T1) after.
inline PiecewisePath concat(const PiecewisePath& p1, const PiecewisePath& p2) {
    PiecewisePath out = p1;
    out.segments.insert(out.segments.end(), p2.segments.begin(), p2.segments.end());
    return canonicalize(out);
}

/// r(eta)(t) = eta(T - t) - eta(T).
inline PiecewisePath reverse_path(const PiecewisePath& p) {
    PiecewisePath out;
    for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it)
        out.segments.push_back({-it->dir, it->dur});
    return canonicalize(out);
}

struct MinPairing {
    Rat min;      // min_t <eta(t), alpha_i^vee>
    Rat first_t;  // earliest attainment time
    Rat last_t;   // latest attainment time
};

/// Exact minimum of the piecewise-linear map t -> <eta(t), alpha_i^vee>.
/// Attained at a breakpoint (or along a flat piece whose ends are
/// breakpoints), so a breakpoint scan is exact.
inline MinPairing min_pairing(const PiecewisePath& p, const RootSystem& rs, int i) {
    Rat h(0), t(0);
    MinPairing best{Rat(0), Rat(0), Rat(0)};
    for (const auto& s : p.segments) {
        Rat slope = dot(s.dir, rs.coroot(i));
        Rat h_end = h + slope * s.dur;
        Rat t_end = t + s.dur;
        if (h_end < best.min)
            best = {h_end, t_end, t_end};
        else if (h_end == best.min)
            best.last_t = t_end;
        h = h_end;
        t = t_end;
    }
    return best;
}

inline bool is_integral(const RootSystem& rs, const PiecewisePath& p) {
    for (int i = 1; i <= rs.rank; ++i)
        if (!is_integer(min_pairing(p, rs, i).min)) return false;
    return true;
}

/// Euclidean length sum ||dir|| * dur; irrational in general.
inline double arc_length(const PiecewisePath& p) {
    double len = 0;
    for (const auto& s : p.segments)
        len += std::sqrt(to_double(norm_sq(s.dir))) * to_double(s.dur);
    return len;
}

// Finite prefix pi_1 (x) ... (x) pi_l of a trajectory: a list of elementary
// steps, each of domain [0,1], traversed from start_weight (default 0).
struct TrajectoryPrefix {
    std::vector<PiecewisePath> steps;
    Vec start_weight;  // empty means 0

    std::size_t length() const { return steps.size(); }
};

inline bool operator==(const TrajectoryPrefix& a, const TrajectoryPrefix& b) {
    return a.steps == b.steps && a.start_weight == b.start_weight;
}

inline TrajectoryPrefix make_prefix(std::vector<PiecewisePath> steps, int ambient_dim) {
    for (auto& s : steps) {
        s = canonicalize(s);
        if (s.domain_length() != 1) throw std::invalid_argument("prefix step must have domain [0,1]");
    }
    return TrajectoryPrefix{std::move(steps), zero_vec(ambient_dim)};
}

inline Vec prefix_weight(const TrajectoryPrefix& pre, int ambient_dim) {
    Vec w = zero_vec(ambient_dim);
    for (const auto& s : pre.steps) w += path_endpoint(s, ambient_dim);
    return w;
}

/// The concatenated form: pi_1 * ... * pi_l as one path on [0, l].
/// Requires start_weight = 0 (paths start at the origin by convention).
inline PiecewisePath delta(const TrajectoryPrefix& pre) {
    if (!is_zero(pre.start_weight))
        throw std::invalid_argument("delta requires a prefix starting at 0");
    PiecewisePath out;
    for (const auto& s : pre.steps)
        out.segments.insert(out.segments.end(), s.segments.begin(), s.segments.end());
    return canonicalize(out);
}

/// Evaluation through the tensor formula: sum of full steps plus the running
/// one, offset by start_weight.
inline Vec prefix_value_at(const TrajectoryPrefix& pre, const Rat& t, int ambient_dim) {
    if (t < 0 || t > Rat(static_cast<long>(pre.steps.size())))
        throw std::out_of_range("time outside prefix domain");
    Vec v = pre.start_weight.empty() ? zero_vec(ambient_dim) : pre.start_weight;
    Rat rem = t;
    for (const auto& s : pre.steps) {
        if (rem <= 1) {
            v += value_at(s, rem, ambient_dim);
            return v;
        }
        v += path_endpoint(s, ambient_dim);
        rem -= 1;
    }
    return v;
}

/// Splits a path of integral domain length l into l unit steps, each rebased
/// to start at 0.  Inverse of delta.
inline TrajectoryPrefix split_into_steps(const PiecewisePath& p, int ambient_dim) {
    Rat total = p.domain_length();
    if (!is_integer(total)) throw std::invalid_argument("path domain length is not an integer");
    long l = to_long(total);
    TrajectoryPrefix pre;
    pre.start_weight = zero_vec(ambient_dim);
    std::size_t si = 0;
    Rat used(0);  // amount of segments[si] already consumed
    for (long k = 0; k < l; ++k) {
        PiecewisePath step;
        Rat need(1);
        while (need > 0) {
            const Segment& s = p.segments.at(si);
            Rat avail = s.dur - used;
            if (avail <= need) {
                if (avail > 0) step.segments.push_back({s.dir, avail});
                need -= avail;
                used = 0;
                ++si;
            } else {
                step.segments.push_back({s.dir, need});
                used += need;
                need = 0;
            }
        }
        pre.steps.push_back(canonicalize(step));
    }
    return pre;
}

}  // namespace littelpath

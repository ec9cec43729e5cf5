#pragma once

#include "littelpath/measures.hpp"
#include "littelpath/pitman.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace littelpath {

// ---------------------------------------------------------------------------
// Deterministic RNG substreams: replica r of a run seeded with s draws from
// mt19937_64 seeded by splitmix64(s, r).  Identical (seed, replica) pairs give
// identical streams on every platform, regardless of the thread count.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t replica) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(replica)));
}

/// Inverse-CDF sampler over a fixed vertex ordering with 64-bit thresholds.
class StepSampler {
  public:
    explicit StepSampler(const std::vector<Rat>& probs) {
        const Rat two64 = Rat(Int(1) << 64);
        Rat cum(0);
        for (const auto& p : probs) {
            cum += p;
            Rat scaled = cum * two64;
            Int floor_val = numerator(scaled) / denominator(scaled);
            thresholds_.push_back(floor_val.convert_to<unsigned long long>());
        }
        if (!thresholds_.empty()) thresholds_.back() = ~0ULL;  // cum = 1 exactly
    }

    int operator()(std::mt19937_64& rng) const {
        std::uint64_t r = rng();
        // crystals are small; a linear scan beats binary search in practice
        for (std::size_t k = 0; k < thresholds_.size(); ++k)
            if (r < thresholds_[k] || thresholds_[k] == ~0ULL)
                if (r <= thresholds_[k]) return static_cast<int>(k);
        return static_cast<int>(thresholds_.size() - 1);
    }

  private:
    std::vector<std::uint64_t> thresholds_;
};

inline std::vector<int> sample_indices(const CentralDistribution& dist, long l,
                                       std::mt19937_64& rng) {
    StepSampler sampler(dist.probs);
    std::vector<int> idx(l);
    for (long k = 0; k < l; ++k) idx[k] = sampler(rng);
    return idx;
}

inline TrajectoryPrefix sample_prefix(const RootSystem& rs, const CentralDistribution& dist,
                                      long l, std::mt19937_64& rng) {
    auto idx = sample_indices(dist, l, rng);
    TrajectoryPrefix pre;
    pre.start_weight = zero_vec(rs.ambient_dim);
    pre.steps.reserve(l);
    for (int v : idx) pre.steps.push_back(dist.crystal->vertices[v]);
    return pre;
}

namespace detail {

inline PiecewisePath path_from_indices(const CrystalGraph& g, const std::vector<int>& idx) {
    PiecewisePath out;
    for (int v : idx) {
        const auto& segs = g.vertices[v].segments;
        out.segments.insert(out.segments.end(), segs.begin(), segs.end());
    }
    return canonicalize(out);
}

/// max_t || p(t) - (floor(t) mbar + m(frac t)) ||^2 over [0, l], exact.
/// Both sides are piecewise linear, so the max sits at a breakpoint of
/// either path within each unit interval.
inline Rat sup_dev_sq_vs_drift(const RootSystem& rs, const PiecewisePath& p,
                               const PiecewisePath& m, const Vec& mbar, long l) {
    std::vector<Rat> m_cuts;
    {
        Rat t(0);
        for (const auto& s : m.segments) {
            t += s.dur;
            if (t < 1) m_cuts.push_back(t);
        }
    }
    Rat best(0);
    Rat t(0);
    Vec val = zero_vec(rs.ambient_dim);
    std::size_t seg = 0;
    auto eval_drift = [&](const Rat& time) {
        Int k = numerator(time) / denominator(time);
        Rat frac = time - Rat(k);
        Vec v = Rat(k) * mbar;
        v += value_at(m, frac, rs.ambient_dim);
        return v;
    };
    auto consider = [&](const Rat& time, const Vec& value) {
        Rat d2 = norm_sq(value - eval_drift(time));
        if (d2 > best) best = d2;
    };
    consider(Rat(0), val);
    // walk the path's own breakpoints, injecting drift breakpoints in between
    Rat next_int(1);
    std::size_t cut_i = 0;
    auto drift_cut = [&](std::size_t i, const Rat& base) { return base - 1 + m_cuts[i]; };
    (void)drift_cut;
    for (const auto& s : p.segments) {
        Rat t_end = t + s.dur;
        // drift breakpoints strictly inside (t, t_end): integers and m-cuts
        for (Rat u = Rat(numerator(t) / denominator(t));; u += 1) {
            if (u > t_end) break;
            for (const Rat& c : m_cuts) {
                Rat cut = u + c;
                if (cut > t && cut < t_end) consider(cut, val + (cut - t) * s.dir);
            }
            Rat whole = u + 1;
            if (whole > t && whole < t_end) consider(whole, val + (whole - t) * s.dir);
        }
        val += s.dur * s.dir;
        t = t_end;
        consider(t, val);
    }
    (void)next_int;
    (void)cut_i;
    (void)l;
    return best;
}

/// max over the union of both paths' breakpoints of ||a(t) - b(t)||^2 for
/// t <= horizon.
inline Rat max_diff_sq(const RootSystem& rs, const PiecewisePath& a, const PiecewisePath& b,
                       const Rat& horizon) {
    std::set<Rat> cuts{horizon};
    Rat t(0);
    for (const auto& s : a.segments) {
        t += s.dur;
        if (t < horizon) cuts.insert(t);
    }
    t = 0;
    for (const auto& s : b.segments) {
        t += s.dur;
        if (t < horizon) cuts.insert(t);
    }
    Rat best(0);
    for (const Rat& c : cuts) {
        Rat d2 = norm_sq(value_at(a, c, rs.ambient_dim) - value_at(b, c, rs.ambient_dim));
        if (d2 > best) best = d2;
    }
    return best;
}

inline void run_replicas(long replicas, int threads, const std::function<void(long)>& body) {
    if (threads <= 1) {
        for (long r = 0; r < replicas; ++r) body(r);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long r = next.fetch_add(1);
                if (r >= replicas) break;
                body(r);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct LlnRow {
    double sup_dev_w = 0;        // sup_t ||W - m^inf|| / l
    double sup_dev_h = 0;        // same for H = P(W)
    bool bound_2l_ok = false;    // sup dev <= max_k ||W_k - k mbar|| + 2L
    bool hw_offset_stable = false;  // max||H-W|| stops growing in the last half
    bool typical = false;        // all coroot averages positive at the horizon
};

struct LlnReport {
    std::vector<LlnRow> rows;
    double max_sup_dev_w = 0;
    double max_sup_dev_h = 0;
    double typicality_rate = 0;
    bool all_bounds_ok = false;
    bool all_offsets_stable = false;
};

inline LlnReport lln_check(const RootSystem& rs, const CentralDistribution& dist,
                           const PitmanConfig& cfg, long l, long replicas, std::uint64_t seed,
                           int threads = 1) {
    DriftReport dr = drift(rs, dist);
    double arc = 0;
    for (const auto& v : dist.crystal->vertices) arc = std::max(arc, arc_length(v));
    LlnReport rep;
    rep.rows.resize(replicas);
    detail::run_replicas(replicas, threads, [&](long r) {
        auto rng = substream(seed, static_cast<std::uint64_t>(r));
        auto idx = sample_indices(dist, l, rng);
        PiecewisePath w = detail::path_from_indices(*dist.crystal, idx);
        PiecewisePath h = pitman_path(cfg, w);
        LlnRow row;
        Rat dev_w_sq = detail::sup_dev_sq_vs_drift(rs, w, dr.m, dr.mbar, l);
        Rat dev_h_sq = detail::sup_dev_sq_vs_drift(rs, h, dr.m, dr.mbar, l);
        row.sup_dev_w = std::sqrt(to_double(dev_w_sq)) / static_cast<double>(l);
        row.sup_dev_h = std::sqrt(to_double(dev_h_sq)) / static_cast<double>(l);

        // per-trajectory uniform bound: sup dev <= max_k ||W_k - k mbar|| + 2L
        Rat max_int_sq(0);
        Vec wk = zero_vec(rs.ambient_dim);
        for (long k = 1; k <= l; ++k) {
            wk += dist.crystal->weights[idx[k - 1]];
            Rat d2 = norm_sq(wk - Rat(k) * dr.mbar);
            if (d2 > max_int_sq) max_int_sq = d2;
        }
        row.bound_2l_ok = std::sqrt(to_double(dev_w_sq)) <=
                          std::sqrt(to_double(max_int_sq)) + 2 * arc + 1e-9;

        // the H-W offset is finite: its running max saturates before l/2
        Rat half = Rat(l) / 2;
        Rat diff_half = detail::max_diff_sq(rs, h, w, half);
        Rat diff_full = detail::max_diff_sq(rs, h, w, Rat(l));
        row.hw_offset_stable = diff_half == diff_full;

        Rat min_avg(1);
        for (int i = 1; i <= rs.rank; ++i) {
            Rat a = dot(wk, rs.coroot(i)) / l;
            if (a < min_avg) min_avg = a;
        }
        row.typical = min_avg > 0;
        rep.rows[r] = row;
    });
    rep.all_bounds_ok = true;
    rep.all_offsets_stable = true;
    long typical = 0;
    for (const auto& row : rep.rows) {
        rep.max_sup_dev_w = std::max(rep.max_sup_dev_w, row.sup_dev_w);
        rep.max_sup_dev_h = std::max(rep.max_sup_dev_h, row.sup_dev_h);
        rep.all_bounds_ok = rep.all_bounds_ok && row.bound_2l_ok;
        rep.all_offsets_stable = rep.all_offsets_stable && row.hw_offset_stable;
        if (row.typical) ++typical;
    }
    rep.typicality_rate = replicas ? static_cast<double>(typical) / replicas : 0.0;
    return rep;
}

struct CltReport {
    std::vector<std::vector<double>> cov_w;  // sample covariance of (W_l - l mbar)/sqrt(l)
    std::vector<std::vector<double>> cov_h;
    std::vector<std::vector<double>> gamma;  // exact one-step covariance
    double max_rel_gap_w = 0;
    double max_rel_gap_h = 0;
};

inline CltReport clt_check(const RootSystem& rs, const CentralDistribution& dist,
                           const PitmanConfig& cfg, long l, long replicas, std::uint64_t seed,
                           int threads = 1, bool with_h = true) {
    DriftReport dr = drift(rs, dist);
    int d = rs.ambient_dim;
    std::vector<std::vector<double>> samples_w(replicas, std::vector<double>(d));
    std::vector<std::vector<double>> samples_h;
    if (with_h) samples_h.assign(replicas, std::vector<double>(d));
    double sqrt_l = std::sqrt(static_cast<double>(l));
    detail::run_replicas(replicas, threads, [&](long r) {
        auto rng = substream(seed, static_cast<std::uint64_t>(r));
        auto idx = sample_indices(dist, l, rng);
        Vec wl = zero_vec(d);
        for (int v : idx) wl += dist.crystal->weights[v];
        Vec centered = wl - Rat(l) * dr.mbar;
        for (int a = 0; a < d; ++a) samples_w[r][a] = to_double(centered[a]) / sqrt_l;
        if (with_h) {
            PiecewisePath h = pitman_path(cfg, detail::path_from_indices(*dist.crystal, idx));
            Vec hl = path_endpoint(h, d) - Rat(l) * dr.mbar;
            for (int a = 0; a < d; ++a) samples_h[r][a] = to_double(hl[a]) / sqrt_l;
        }
    });
    auto covariance = [&](const std::vector<std::vector<double>>& samples) {
        std::vector<double> mean(d, 0.0);
        for (const auto& s : samples)
            for (int a = 0; a < d; ++a) mean[a] += s[a];
        for (auto& x : mean) x /= static_cast<double>(samples.size());
        std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
        for (const auto& s : samples)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) cov[a][b] += (s[a] - mean[a]) * (s[b] - mean[b]);
        for (auto& row : cov)
            for (auto& x : row) x /= static_cast<double>(samples.size() - 1);
        return cov;
    };
    CltReport rep;
    rep.cov_w = covariance(samples_w);
    if (with_h) rep.cov_h = covariance(samples_h);
    rep.gamma.assign(d, std::vector<double>(d, 0.0));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) rep.gamma[a][b] = to_double(dr.gamma[a][b]);
    auto max_gap = [&](const std::vector<std::vector<double>>& cov) {
        double gap = 0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                double denom = std::abs(rep.gamma[a][b]);
                if (denom < 1e-15) continue;
                gap = std::max(gap, std::abs(cov[a][b] - rep.gamma[a][b]) / denom);
            }
        return gap;
    };
    rep.max_rel_gap_w = max_gap(rep.cov_w);
    if (with_h) rep.max_rel_gap_h = max_gap(rep.cov_h);
    return rep;
}

struct TransitionAgreement {
    Vec state;
    long visits = 0;
    std::vector<std::pair<Vec, long>> observed;  // target -> count
    std::vector<std::pair<Vec, Rat>> expected;   // exact row at the state
    double max_z = 0;                            // binomial z-score over targets
    double chi_square = 0;
    bool unsupported_seen = false;  // any (source,target) outside the exact support
};

inline TransitionAgreement transition_agreement(const RootSystem& rs,
                                                const CentralDistribution& dist,
                                                const PitmanConfig& cfg, TransitionEngine& engine,
                                                const Vec& state, long l, long replicas,
                                                std::uint64_t seed, int threads = 1,
                                                double burn_in_frac = 0.1) {
    long burn = static_cast<long>(burn_in_frac * static_cast<double>(l));
    std::vector<std::map<Vec, long>> partial(replicas);
    std::vector<char> bad(replicas, 0);
    detail::run_replicas(replicas, threads, [&](long r) {
        auto rng = substream(seed, static_cast<std::uint64_t>(r));
        auto idx = sample_indices(dist, l, rng);
        PiecewisePath h = pitman_path(cfg, detail::path_from_indices(*dist.crystal, idx));
        Vec prev = value_at(h, Rat(burn), rs.ambient_dim);
        for (long k = burn; k < l; ++k) {
            Vec next = value_at(h, Rat(k + 1), rs.ambient_dim);
            if (engine.probability(prev, next) == 0) bad[r] = 1;
            if (prev == state) partial[r][next] += 1;
            prev = next;
        }
    });
    TransitionAgreement rep;
    rep.state = state;
    std::map<Vec, long> counts;
    for (long r = 0; r < replicas; ++r) {
        rep.unsupported_seen = rep.unsupported_seen || bad[r];
        for (const auto& [target, c] : partial[r]) counts[target] += c;
    }
    for (const auto& [target, c] : counts) rep.visits += c;
    const TransitionRow& row = engine.row(state);
    for (const auto& [target, p] : row.targets) {
        long obs = counts.count(target) ? counts.at(target) : 0;
        rep.observed.emplace_back(target, obs);
        rep.expected.emplace_back(target, p);
        double pe = to_double(p);
        double n = static_cast<double>(rep.visits);
        double sigma = std::sqrt(n * pe * (1 - pe));
        if (sigma > 0)
            rep.max_z = std::max(rep.max_z, std::abs(obs - n * pe) / sigma);
        if (n * pe > 0) rep.chi_square += (obs - n * pe) * (obs - n * pe) / (n * pe);
        counts.erase(target);
    }
    if (!counts.empty()) rep.unsupported_seen = true;  // mass on targets outside the row
    return rep;
}

struct RecoveryReport {
    long replicas = 0;
    long stabilized = 0;
    long stabilized_and_exact = 0;
    long success = 0;  // stabilized && window matches the sampled source
    double success_rate = 0;
    double conditional_rate = 0;  // exact matches among stabilized
    double tail_step_agreement = 0;  // prop_lim: mean fraction of matching tail steps
};

/// Samples the anti-dominant-drift walk from the iota-twisted law, transforms
/// it, inverts the transform on a window and compares with the source.  Also
/// runs the step-identification experiment on the untwisted law: the steps of
/// P(W) eventually coincide with the steps of W.
inline RecoveryReport recovery_experiment(const RootSystem& rs,
                                          const CentralDistribution& dual_dist,
                                          const CentralDistribution& base_dist,
                                          const PitmanConfig& cfg, long l, std::size_t window,
                                          long replicas, std::uint64_t seed, int threads = 1) {
    if (window >= static_cast<std::size_t>(l))
        throw std::invalid_argument("window must be smaller than the prefix length");
    RecoveryReport rep;
    rep.replicas = replicas;
    std::vector<char> stab(replicas, 0), exact(replicas, 0);
    std::vector<double> tail_agree(replicas, 0.0);
    detail::run_replicas(replicas, threads, [&](long r) {
        auto rng = substream(seed, static_cast<std::uint64_t>(r));
        TrajectoryPrefix w_iota = sample_prefix(rs, dual_dist, l, rng);
        TrajectoryPrefix h = pitman(cfg, w_iota);
        InverseResult inv = inverse_on_prefix(cfg, h, window);
        stab[r] = inv.stabilized;
        exact[r] = std::equal(inv.recovered.steps.begin(), inv.recovered.steps.end(),
                              w_iota.steps.begin());

        // prop_lim on the untwisted law: tail steps of P(W) equal those of W
        TrajectoryPrefix w = sample_prefix(rs, base_dist, l, rng);
        TrajectoryPrefix hw = pitman(cfg, w);
        long agree = 0, tail = l / 2;
        for (long k = l - tail; k < l; ++k)
            if (hw.steps[k] == w.steps[k]) ++agree;
        tail_agree[r] = static_cast<double>(agree) / static_cast<double>(tail);
    });
    double tail_sum = 0;
    for (long r = 0; r < replicas; ++r) {
        if (stab[r]) {
            ++rep.stabilized;
            if (exact[r]) ++rep.stabilized_and_exact;
        }
        if (stab[r] && exact[r]) ++rep.success;
        tail_sum += tail_agree[r];
    }
    rep.success_rate = replicas ? static_cast<double>(rep.success) / replicas : 0;
    rep.conditional_rate =
        rep.stabilized ? static_cast<double>(rep.stabilized_and_exact) / rep.stabilized : 1.0;
    rep.tail_step_agreement = replicas ? tail_sum / replicas : 0;
    return rep;
}

struct ShiftIntertwineReport {
    bool diagram_commutes = false;  // P o S == J o P on every sampled prefix
    long cylinder_before = 0;       // depth-2 cylinder hits in P(W)
    long cylinder_after = 0;        // same cylinder in J(P(W))
    double cylinder_z = 0;          // two-sample z for frequency invariance
};

inline ShiftIntertwineReport shift_intertwine_sim(const RootSystem& rs,
                                                  const CentralDistribution& dist,
                                                  const PitmanConfig& cfg, long l, long replicas,
                                                  std::uint64_t seed, int threads = 1) {
    ShiftIntertwineReport rep;
    std::vector<char> ok(replicas, 0), before(replicas, 0), after(replicas, 0);
    // reference depth-2 cylinder: the transform image of a two-step sample
    // from the highest vertex twice (the most likely chamber prefix)
    TrajectoryPrefix ref;
    ref.start_weight = zero_vec(rs.ambient_dim);
    ref.steps = {dist.crystal->vertices[dist.crystal->highest],
                 dist.crystal->vertices[dist.crystal->highest]};
    ref = pitman(cfg, ref);
    detail::run_replicas(replicas, threads, [&](long r) {
        auto rng = substream(seed, static_cast<std::uint64_t>(r));
        TrajectoryPrefix w = sample_prefix(rs, dist, l, rng);
        TrajectoryPrefix h = pitman(cfg, w);
        TrajectoryPrefix lhs = pitman(cfg, shift(w));
        TrajectoryPrefix rhs = j_map(cfg, h);
        ok[r] = lhs == rhs;
        before[r] = h.steps.size() >= 2 && h.steps[0] == ref.steps[0] && h.steps[1] == ref.steps[1];
        after[r] =
            rhs.steps.size() >= 2 && rhs.steps[0] == ref.steps[0] && rhs.steps[1] == ref.steps[1];
    });
    rep.diagram_commutes = true;
    for (long r = 0; r < replicas; ++r) {
        rep.diagram_commutes = rep.diagram_commutes && ok[r];
        rep.cylinder_before += before[r];
        rep.cylinder_after += after[r];
    }
    double n = static_cast<double>(replicas);
    double p1 = rep.cylinder_before / n, p2 = rep.cylinder_after / n;
    double pool = (rep.cylinder_before + rep.cylinder_after) / (2 * n);
    double se = std::sqrt(2 * pool * (1 - pool) / n);
    rep.cylinder_z = se > 0 ? std::abs(p1 - p2) / se : 0.0;
    return rep;
}

}  // namespace littelpath

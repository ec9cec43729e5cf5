#pragma once

#include "littelpath/crystal.hpp"
#include "littelpath/paths.hpp"
#include "littelpath/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace littelpath {

struct TauParams {
    std::vector<Rat> tau;

    bool interior() const {
        for (const auto& t : tau)
            if (t <= 0 || t >= 1) return false;
        return true;
    }
};

inline TauParams make_tau(std::vector<Rat> tau, int rank) {
    if (static_cast<int>(tau.size()) != rank)
        throw std::invalid_argument("expected " + std::to_string(rank) + " tau entries");
    for (const auto& t : tau)
        if (t <= 0) throw std::invalid_argument("tau entries must be positive");
    return TauParams{std::move(tau)};
}

/// tau^u for an integer exponent vector (negative entries allowed).
inline Rat tau_power(const std::vector<Rat>& tau, const std::vector<long>& u) {
    Rat r(1);
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (long e = 0; e < u[k]; ++e) r *= tau[k];
        for (long e = 0; e > u[k]; --e) r /= tau[k];
    }
    return r;
}

inline double tau_power_real(const std::vector<Rat>& tau, const std::vector<Rat>& u) {
    double r = 1;
    for (std::size_t k = 0; k < u.size(); ++k) r *= std::pow(to_double(tau[k]), to_double(u[k]));
    return r;
}

// The tau-graded probability distribution p_pi = tau^{kappa - wt(pi)} / S_kappa
// on a crystal, or its iota twist.  Exponents are kept symbolically so the
// distribution doubles as the exact rational function of tau.
struct CentralDistribution {
    std::shared_ptr<const CrystalGraph> crystal;
    TauParams tau;
    std::vector<std::vector<long>> exponents;  // u_pi, per vertex
    std::vector<Rat> probs;                    // exact, sums to 1
    Rat normalizer;                            // S_kappa(tau)
    bool iota_twisted = false;
};

inline CentralDistribution central_distribution(const RootSystem& rs,
                                                std::shared_ptr<const CrystalGraph> crystal,
                                                TauParams tau) {
    if (static_cast<int>(tau.tau.size()) != rs.rank)
        throw std::invalid_argument("tau rank mismatch");
    for (const auto& t : tau.tau)
        if (t <= 0) throw std::invalid_argument("tau entries must be positive");
    CentralDistribution d;
    d.crystal = std::move(crystal);
    d.tau = std::move(tau);
    d.normalizer = 0;
    for (std::size_t v = 0; v < d.crystal->size(); ++v) {
        auto u = integer_root_coords(rs, d.crystal->hw_weight - d.crystal->weights[v]);
        Rat w = tau_power(d.tau.tau, u);
        d.exponents.push_back(std::move(u));
        d.probs.push_back(w);
        d.normalizer += w;
    }
    for (auto& p : d.probs) p /= d.normalizer;
    return d;
}

/// p^iota_pi = p_{iota(pi)} = tau^{kappa - w0 wt(pi)} / S_kappa.
inline CentralDistribution dual_distribution(const RootSystem& rs,
                                             std::shared_ptr<const CrystalGraph> crystal,
                                             TauParams tau) {
    CentralDistribution base = central_distribution(rs, crystal, std::move(tau));
    auto iota = lusztig_map(rs, *base.crystal);
    CentralDistribution d = base;
    d.iota_twisted = true;
    for (std::size_t v = 0; v < base.probs.size(); ++v) {
        d.probs[v] = base.probs[iota[v]];
        d.exponents[v] = base.exponents[iota[v]];
    }
    return d;
}

struct DriftReport {
    PiecewisePath m;                     // drift path, a convex combination
    Vec mbar;                            // m(1)
    bool in_interior = false;            // mbar strictly dominant
    std::vector<std::vector<Rat>> gamma; // centered covariance of one step
};

namespace detail {

inline Vec velocity_on(const PiecewisePath& p, const Rat& a) {
    // velocity of the piece containing (a, a + eps)
    Rat t(0);
    for (const auto& s : p.segments) {
        if (a < t + s.dur) return s.dir;
        t += s.dur;
    }
    return p.segments.empty() ? Vec{} : p.segments.back().dir;
}

}  // namespace detail

/// Drift path m = sum p_pi pi over a common breakpoint refinement, the mean
/// endpoint, the interior flag (checked both through the chamber test and
/// through tau), and the covariance of a single step.
inline DriftReport drift(const RootSystem& rs, const CentralDistribution& dist) {
    const CrystalGraph& g = *dist.crystal;
    std::set<Rat> cuts{Rat(0)};
    for (const auto& p : g.vertices) {
        Rat t(0);
        for (const auto& s : p.segments) {
            t += s.dur;
            cuts.insert(t);
        }
    }
    DriftReport rep;
    std::vector<Rat> times(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        Vec dir = zero_vec(rs.ambient_dim);
        for (std::size_t v = 0; v < g.size(); ++v)
            dir += dist.probs[v] * detail::velocity_on(g.vertices[v], times[k]);
        rep.m.segments.push_back({dir, times[k + 1] - times[k]});
    }
    rep.m = canonicalize(rep.m);
    rep.mbar = zero_vec(rs.ambient_dim);
    for (std::size_t v = 0; v < g.size(); ++v) rep.mbar += dist.probs[v] * g.weights[v];
    if (rep.mbar != path_endpoint(rep.m, rs.ambient_dim))
        throw std::logic_error("drift path endpoint disagrees with the mean weight");

    bool strict = in_chamber(rs, rep.mbar, true);
    bool tau_interior = dist.tau.interior();
    if (!dist.iota_twisted && strict != tau_interior)
        throw std::logic_error("interior-drift criterion disagrees with the tau test");
    rep.in_interior = strict;

    rep.gamma.assign(rs.ambient_dim, std::vector<Rat>(rs.ambient_dim, Rat(0)));
    for (std::size_t v = 0; v < g.size(); ++v) {
        Vec c = g.weights[v] - rep.mbar;
        for (int a = 0; a < rs.ambient_dim; ++a)
            for (int b = 0; b < rs.ambient_dim; ++b) rep.gamma[a][b] += dist.probs[v] * c[a] * c[b];
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Crystal bank: memoized crystals, characters and specializations keyed by
// highest weight; safe for concurrent readers.
// ---------------------------------------------------------------------------

class CrystalBank {
  public:
    explicit CrystalBank(const RootSystem& rs, std::size_t cap = default_crystal_cap())
        : rs_(&rs), cap_(cap) {}

    std::shared_ptr<const CrystalGraph> crystal(const Vec& hw) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = crystals_.find(hw);
        if (it == crystals_.end()) {
            if (!in_chamber(*rs_, hw))
                throw std::domain_error("highest weight must be dominant: " + format_vec(hw));
            auto g = std::make_shared<CrystalGraph>(
                generate_crystal(*rs_, straight_path_to(hw), cap_));
            it = crystals_.emplace(hw, std::move(g)).first;
        }
        return it->second;
    }

    const CharacterPoly& char_of(const Vec& hw) {
        auto g = crystal(hw);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = chars_.find(hw);
        if (it == chars_.end()) it = chars_.emplace(hw, character(*rs_, *g)).first;
        return it->second;
    }

    Rat s_value(const Vec& hw, const std::vector<Rat>& tau) {
        const CharacterPoly& ch = char_of(hw);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = s_values_.find(hw);
        if (it == s_values_.end()) it = s_values_.emplace(hw, eval_character(ch, tau)).first;
        return it->second;
    }

    const RootSystem& root_system() const { return *rs_; }

  private:
    const RootSystem* rs_;
    std::size_t cap_;
    std::mutex mu_;
    std::map<Vec, std::shared_ptr<const CrystalGraph>> crystals_;
    std::map<Vec, CharacterPoly> chars_;
    std::map<Vec, Rat> s_values_;  // for one fixed tau per bank use
};

/// One-step law of the unconstrained walk:
/// P(W_{l+1} = beta | W_l = eta) = K_{kappa, beta-eta} tau^{kappa+eta-beta} / S_kappa.
inline Rat walk_transition(const RootSystem& rs, const CrystalGraph& kappa_crystal,
                           const TauParams& tau, const Vec& eta, const Vec& beta) {
    CharacterPoly ch = character(rs, kappa_crystal);
    Int k = weight_multiplicity(rs, ch, beta - eta);
    if (k == 0) return Rat(0);
    auto u = integer_root_coords(rs, kappa_crystal.hw_weight - (beta - eta));
    Rat s = eval_character(ch, tau.tau);
    return Rat(k) * tau_power(tau.tau, u) / s;
}

struct TransitionRow {
    Vec source;
    std::vector<std::pair<Vec, Rat>> targets;  // exact masses, sum to 1
};

// Transition matrix of the conditioned chain,
// Pi(mu, lambda) = S_lambda / (S_kappa S_mu) tau^{kappa+mu-lambda} m^lambda_{mu,kappa},
// with rows computed lazily and memoized by source weight.
class TransitionEngine {
  public:
    TransitionEngine(const RootSystem& rs, std::shared_ptr<const CrystalGraph> kappa_crystal,
                     TauParams tau)
        : rs_(&rs), kappa_(std::move(kappa_crystal)), tau_(std::move(tau)), bank_(rs) {
        s_kappa_ = eval_character(character(rs, *kappa_), tau_.tau);
    }

    const TransitionRow& row(const Vec& mu) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = rows_.find(mu);
            if (it != rows_.end()) return it->second;
        }
        TransitionRow r = compute_row(mu);
        std::lock_guard<std::mutex> lock(mu_);
        return rows_.emplace(mu, std::move(r)).first->second;
    }

    Rat probability(const Vec& mu, const Vec& lambda) {
        const TransitionRow& r = row(mu);
        for (const auto& [target, p] : r.targets)
            if (target == lambda) return p;
        return Rat(0);
    }

    CrystalBank& bank() { return bank_; }
    const TauParams& tau() const { return tau_; }
    const CrystalGraph& kappa_crystal() const { return *kappa_; }
    const Rat& s_kappa() const { return s_kappa_; }

  private:
    TransitionRow compute_row(const Vec& mu) {
        if (!in_chamber(*rs_, mu))
            throw std::domain_error("transition rows are defined on dominant weights");
        TransitionRow r;
        r.source = mu;
        Rat s_mu = bank_.s_value(mu, tau_.tau);
        Rat total(0);
        for (const auto& [lambda, m] : mult_m_row(*rs_, mu, *kappa_)) {
            auto u = integer_root_coords(*rs_, kappa_->hw_weight + mu - lambda);
            Rat p = bank_.s_value(lambda, tau_.tau) / (s_kappa_ * s_mu) *
                    tau_power(tau_.tau, u) * Rat(m);
            r.targets.emplace_back(lambda, p);
            total += p;
        }
        if (total != 1)
            throw std::logic_error("transition row does not sum to 1 at mu = " + format_vec(mu));
        return r;
    }

    const RootSystem* rs_;
    std::shared_ptr<const CrystalGraph> kappa_;
    TauParams tau_;
    CrystalBank bank_;
    Rat s_kappa_;
    std::mutex mu_;
    std::map<Vec, TransitionRow> rows_;
};

/// One-shot row computation.
inline TransitionRow transition_row(const RootSystem& rs,
                                    std::shared_ptr<const CrystalGraph> kappa_crystal,
                                    const TauParams& tau, const Vec& mu) {
    TransitionEngine engine(rs, std::move(kappa_crystal), tau);
    return engine.row(mu);
}

struct HarmonicValue {
    Vec mu;
    long level = 0;
    bool exact = false;
    Rat value;       // when exact
    double approx = 0;  // always populated
};

/// phi(mu, l0) = tau^{l0 kappa - mu} S_mu(tau) / S_kappa(tau)^{l0}.  Exact
/// when l0 kappa - mu has integer root coordinates; otherwise evaluated as a
/// real number.  Vertices reachable in the multiplicative graph always fall
/// in the exact case.
inline HarmonicValue harmonic(const RootSystem& rs, CrystalBank& bank, const Vec& kappa,
                              const TauParams& tau, const Vec& mu, long l0) {
    if (!in_chamber(rs, mu)) throw std::domain_error("harmonic values require a dominant weight");
    if (l0 < 0) throw std::domain_error("level must be nonnegative");
    HarmonicValue h;
    h.mu = mu;
    h.level = l0;
    Vec diff = Rat(l0) * kappa - mu;
    auto coords = root_coords(rs, diff);
    if (!coords)
        throw std::domain_error(
            "l0 kappa - mu lies outside the root span; no graph vertex at this level");
    Rat s_mu = bank.s_value(mu, tau.tau);
    Rat s_kappa = bank.s_value(kappa, tau.tau);
    Rat s_kappa_pow(1);
    for (long k = 0; k < l0; ++k) s_kappa_pow *= s_kappa;
    bool integral = std::all_of(coords->begin(), coords->end(), is_integer);
    if (integral) {
        std::vector<long> u(coords->size());
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = to_long((*coords)[k]);
        h.exact = true;
        h.value = tau_power(tau.tau, u) * s_mu / s_kappa_pow;
        h.approx = to_double(h.value);
    } else {
        h.exact = false;
        h.approx = tau_power_real(tau.tau, *coords) * to_double(s_mu) / to_double(s_kappa_pow);
    }
    return h;
}

/// Polynomial-level harmonicity at mu:
/// S_mu S_kappa = sum_Lambda m^Lambda_{mu,kappa} T^{kappa+mu-Lambda} S_Lambda
/// as an exact identity in Z[T_1..T_n].
inline bool harmonicity_polynomial_identity(const RootSystem& rs, CrystalBank& bank,
                                            const Vec& kappa, const Vec& mu) {
    auto kappa_crystal = bank.crystal(kappa);
    CharacterPoly lhs = charpoly_mul(bank.char_of(mu), bank.char_of(kappa));
    CharacterPoly rhs;
    rhs.base_weight = mu + kappa;
    for (const auto& [lambda, m] : mult_m_row(rs, mu, *kappa_crystal)) {
        CharacterPoly part = rebase(rs, bank.char_of(lambda), mu + kappa);
        for (const auto& [u, c] : part.terms) rhs.terms[u] += m * c;
    }
    return charpoly_equal(lhs, rhs);
}

/// Markov transitions written through the harmonic function,
/// Pi_Z((lambda,l),(Lambda,l+1)) = m phi(Lambda,l+1) / phi(lambda,l); the
/// level must make both harmonic values exact.
inline TransitionRow pi_z_row(const RootSystem& rs, CrystalBank& bank, const Vec& kappa,
                              const TauParams& tau, const Vec& mu, long level) {
    auto kappa_crystal = bank.crystal(kappa);
    HarmonicValue phi_mu = harmonic(rs, bank, kappa, tau, mu, level);
    if (!phi_mu.exact) throw std::domain_error("pi_z_row requires an exact-level vertex");
    TransitionRow r;
    r.source = mu;
    for (const auto& [lambda, m] : mult_m_row(rs, mu, *kappa_crystal)) {
        HarmonicValue phi_lam = harmonic(rs, bank, kappa, tau, lambda, level + 1);
        if (!phi_lam.exact) throw std::domain_error("pi_z_row requires exact harmonic values");
        r.targets.emplace_back(lambda, Rat(m) * phi_lam.value / phi_mu.value);
    }
    return r;
}

/// Mass of the connected component of any highest-weight prefix of weight
/// lambda at length l: tau^{l kappa - lambda} S_lambda / S_kappa^l.
inline Rat hw_prefix_probability(const RootSystem& rs, CrystalBank& bank, const Vec& kappa,
                                 const TauParams& tau, const Vec& lambda, long l) {
    if (!in_chamber(rs, lambda)) throw std::domain_error("lambda must be dominant");
    auto coords = root_coords(rs, Rat(l) * kappa - lambda);
    if (!coords) return Rat(0);
    bool integral_nonneg = true;
    std::vector<long> u(coords->size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (!is_integer((*coords)[k]) || (*coords)[k] < 0) {
            integral_nonneg = false;
            break;
        }
        u[k] = to_long((*coords)[k]);
    }
    if (!integral_nonneg) return Rat(0);
    Rat s_kappa = bank.s_value(kappa, tau.tau);
    Rat pow(1);
    for (long k = 0; k < l; ++k) pow *= s_kappa;
    return tau_power(tau.tau, u) * bank.s_value(lambda, tau.tau) / pow;
}

// ---------------------------------------------------------------------------
// Asymptotics of the tensor-power multiplicities
// ---------------------------------------------------------------------------

struct RatioRow {
    long l = 0;
    Vec lambda;        // the dominant weight tracking l * mbar
    double ratio = 0;
    double limit = 0;
    double relative_gap = 0;
};

struct RatioReport {
    std::vector<RatioRow> gamma_series;      // f^l_{lambda-gamma} / f^l_lambda -> tau^{-gamma}
    std::vector<RatioRow> mu_series;         // f^l_{lambda/mu} / f^l_lambda -> tau^{-mu} S_mu
    std::vector<RatioRow> corollary_series;  // f^{l-l0}_lambda / f^l_lambda
    bool mu_symmetrized = false;             // see note below
    long corollary_l0 = 0;                   // effective power drop used
};

namespace detail {

/// Nearest dominant weight to l * mbar with nonzero multiplicity; ties go to
/// the smaller coordinate sum, then lexicographically.
inline Vec nearest_tracked_weight(const std::map<Vec, Int>& level, const Vec& target) {
    if (level.empty()) throw std::logic_error("empty multiplicity level");
    const Vec* best = nullptr;
    Rat best_d2;
    Rat best_sum;
    for (const auto& [lam, c] : level) {
        if (c == 0) continue;
        Rat d2 = norm_sq(lam - target);
        Rat sum(0);
        for (const auto& x : lam) sum += x;
        bool better = false;
        if (!best) better = true;
        else if (d2 != best_d2) better = d2 < best_d2;
        else if (sum != best_sum) better = sum < best_sum;
        else better = lam < *best;
        if (better) {
            best = &lam;
            best_d2 = d2;
            best_sum = sum;
        }
    }
    return *best;
}

}  // namespace detail

namespace detail {

inline double neg_tau_power(const RootSystem& rs, const std::vector<Rat>& tau, const Vec& x,
                            const char* what) {
    auto c = root_coords(rs, x);
    if (!c) throw std::domain_error(std::string(what) + " lies outside the root span");
    std::vector<Rat> neg(c->size());
    for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -(*c)[k];
    return tau_power_real(tau, neg);
}

inline double f_as_double(const std::map<Vec, Int>& level, const Vec& lam) {
    auto it = level.find(lam);
    return it == level.end() ? 0.0 : Rat(it->second).convert_to<double>();
}

}  // namespace detail

/// Tabulates the multiplicity ratios of the tensor powers along the drift
/// direction against their tau limits, per length l up to lmax.
///
/// Two support subtleties.  The multiplicities f^l_{./mu} live on the coset
/// mu + l kappa - Q+, so when mu is outside the root lattice the literal
/// same-level ratio f^l_{lambda/mu} / f^l_lambda has empty support; in that
/// case the ratio is formed against the geometric mean of the two flanking
/// denominators, f^l_{lambda/mu} / sqrt(f^l_{lambda-mu} f^l_{lambda+mu}),
/// which has the same limit.  Likewise a power drop l0 that leaves the coset
/// is bumped to the smallest multiple with nonempty support.
inline RatioReport asymptotic_ratio_report(const RootSystem& rs, CrystalBank& bank,
                                           const Vec& kappa, const TauParams& tau, const Vec& mu,
                                           const Vec& gamma, long lmax, long l0 = 1) {
    if (!tau.interior())
        throw std::domain_error("ratio asymptotics require the interior regime tau in (0,1)^n");
    auto kappa_crystal = bank.crystal(kappa);
    CentralDistribution dist = central_distribution(rs, kappa_crystal, tau);
    Vec mbar = drift(rs, dist).mbar;

    auto from_zero = mult_f_levels(rs, zero_vec(rs.ambient_dim), *kappa_crystal, lmax);
    auto from_mu = mult_f_levels(rs, mu, *kappa_crystal, lmax);

    double lim_gamma = detail::neg_tau_power(rs, tau.tau, gamma, "gamma");
    double lim_mu = detail::neg_tau_power(rs, tau.tau, mu, "mu") *
                    to_double(bank.s_value(mu, tau.tau));
    double per_power = detail::neg_tau_power(rs, tau.tau, kappa, "kappa") *
                       to_double(bank.s_value(kappa, tau.tau));

    // does mu share the denominators' support lattice at equal level?
    bool mu_literal = false;
    for (long l = 1; l <= lmax && !mu_literal; ++l)
        for (const auto& [lam, c] : from_mu[l])
            if (c != 0 && from_zero[l].count(lam) && from_zero[l].at(lam) != 0) {
                mu_literal = true;
                break;
            }

    // smallest multiple of l0 keeping f^{l-l0} on the same support
    long l0_eff = 0;
    for (long s = l0; s <= lmax && !l0_eff; s += l0)
        for (long l = s + 1; l <= lmax && !l0_eff; ++l)
            for (const auto& [lam, c] : from_zero[l])
                if (c != 0 && from_zero[l - s].count(lam) && from_zero[l - s].at(lam) != 0) {
                    l0_eff = s;
                    break;
                }

    RatioReport rep;
    rep.mu_symmetrized = !mu_literal;
    rep.corollary_l0 = l0_eff;
    double lim_cor = l0_eff ? 1.0 / std::pow(per_power, static_cast<double>(l0_eff)) : 0.0;

    auto push = [](std::vector<RatioRow>& series, long l, const Vec& lam, double ratio,
                   double limit) {
        double gap = limit == 0 ? std::abs(ratio) : std::abs(ratio - limit) / std::abs(limit);
        series.push_back({l, lam, ratio, limit, gap});
    };

    for (long l = 1; l <= lmax; ++l) {
        Vec target = Rat(l) * mbar;
        Vec lam = detail::nearest_tracked_weight(from_zero[l], target);
        double f_l = detail::f_as_double(from_zero[l], lam);

        double fg = detail::f_as_double(from_zero[l], lam - gamma);
        if (fg > 0 || lim_gamma == 0) push(rep.gamma_series, l, lam, fg / f_l, lim_gamma);

        if (mu_literal) {
            double fm = detail::f_as_double(from_mu[l], lam);
            if (fm > 0) push(rep.mu_series, l, lam, fm / f_l, lim_mu);
        } else if (!from_mu[l].empty()) {
            Vec lam_mu = detail::nearest_tracked_weight(from_mu[l], target);
            double fm = detail::f_as_double(from_mu[l], lam_mu);
            double fa = detail::f_as_double(from_zero[l], lam_mu - mu);
            double fb = detail::f_as_double(from_zero[l], lam_mu + mu);
            if (fm > 0 && fa > 0 && fb > 0)
                push(rep.mu_series, l, lam_mu, fm / std::sqrt(fa * fb), lim_mu);
        }

        if (l0_eff && l > l0_eff) {
            double fc = detail::f_as_double(from_zero[l - l0_eff], lam);
            if (fc > 0) push(rep.corollary_series, l, lam, fc / f_l, lim_cor);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Centrality recognition
// ---------------------------------------------------------------------------

struct CentralityReport {
    bool central = false;
    std::vector<Rat> tau_witness;  // populated when central
    // otherwise: two edges of the same color with different probability ratios
    int color = 0;
    std::pair<int, int> edge_a{-1, -1}, edge_b{-1, -1};
    Rat ratio_a, ratio_b;
};

/// Decides whether a positive distribution on the crystal is tau-graded:
/// reads one ratio per edge color and verifies it globally.
inline CentralityReport centrality_check(const RootSystem& rs, const CrystalGraph& g,
                                         const std::vector<Rat>& probs) {
    if (probs.size() != g.size())
        throw std::invalid_argument("probability vector size does not match the crystal");
    Rat total(0);
    for (const auto& p : probs) {
        if (p <= 0) throw std::invalid_argument("distribution entries must be positive");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("distribution must sum to exactly 1");

    CentralityReport rep;
    rep.tau_witness.assign(rs.rank, Rat(1));
    std::vector<std::pair<int, int>> first_edge(rs.rank, {-1, -1});
    for (std::size_t v = 0; v < g.size(); ++v)
        for (int i = 1; i <= rs.rank; ++i) {
            int w = g.f_adj[v][i - 1];
            if (w < 0) continue;
            Rat ratio = probs[w] / probs[v];
            if (first_edge[i - 1].first < 0) {
                first_edge[i - 1] = {static_cast<int>(v), w};
                rep.tau_witness[i - 1] = ratio;
            } else if (ratio != rep.tau_witness[i - 1]) {
                rep.central = false;
                rep.color = i;
                rep.edge_a = first_edge[i - 1];
                rep.edge_b = {static_cast<int>(v), w};
                rep.ratio_a = rep.tau_witness[i - 1];
                rep.ratio_b = ratio;
                return rep;
            }
        }
    rep.central = true;
    return rep;
}

}  // namespace littelpath

#include "littelpath/measures.hpp"

#include "littelpath/pitman.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace littelpath;

namespace {

Vec rv(std::initializer_list<long> coords) {
    Vec v;
    for (long c : coords) v.push_back(Rat(c));
    return v;
}

struct C2Fixture {
    RootSystem rs = build_root_system(Family::C, 2);
    std::shared_ptr<const CrystalGraph> crystal =
        std::make_shared<CrystalGraph>(generate_crystal(rs, straight_path_to(rv({1, 0}))));
    TauParams tau = make_tau({Rat(1, 2), Rat(1, 3)}, 2);
};

}  // namespace

TEST_CASE_METHOD(C2Fixture, "central distribution matches the printed rational functions") {
    CentralDistribution d = central_distribution(rs, crystal, tau);
    // symbolic form: monomial exponents over the common normalizer S
    std::set<std::vector<long>> expected{{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    std::set<std::vector<long>> got(d.exponents.begin(), d.exponents.end());
    CHECK(got == expected);
    CHECK(d.normalizer == Rat(7, 4));

    int v1 = *find_vertex(*crystal, straight_path_to(rv({1, 0})));
    int v2 = *find_vertex(*crystal, straight_path_to(rv({0, 1})));
    int v3 = *find_vertex(*crystal, straight_path_to(rv({0, -1})));
    int v4 = *find_vertex(*crystal, straight_path_to(rv({-1, 0})));
    CHECK(d.probs[v1] == Rat(4, 7));
    CHECK(d.probs[v2] == Rat(2, 7));
    CHECK(d.probs[v3] == Rat(2, 21));
    CHECK(d.probs[v4] == Rat(1, 21));

    Rat sum(0);
    for (const auto& p : d.probs) {
        CHECK(p > 0);
        sum += p;
    }
    CHECK(sum == 1);

    // edge grading p_{pi'} = tau_i p_pi, exactly, on every edge
    for (std::size_t v = 0; v < crystal->size(); ++v)
        for (int i = 1; i <= 2; ++i) {
            int w = crystal->f_adj[v][i - 1];
            if (w >= 0) CHECK(d.probs[w] == tau.tau[i - 1] * d.probs[v]);
        }

    CentralDistribution uniform = central_distribution(rs, crystal, make_tau({Rat(1), Rat(1)}, 2));
    for (const auto& p : uniform.probs) CHECK(p == Rat(1, 4));

    CHECK_THROWS_AS(make_tau({Rat(0), Rat(1)}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_tau({Rat(1)}, 2), std::invalid_argument);
}

TEST_CASE_METHOD(C2Fixture, "dual distribution is the iota twist") {
    CentralDistribution d = central_distribution(rs, crystal, tau);
    CentralDistribution di = dual_distribution(rs, crystal, tau);
    int v1 = *find_vertex(*crystal, straight_path_to(rv({1, 0})));
    CHECK(di.probs[v1] == Rat(1, 21));  // p^iota_{pi_1} = p_{pi_1bar}

    auto iota = lusztig_map(rs, *crystal);
    for (std::size_t v = 0; v < crystal->size(); ++v) CHECK(di.probs[v] == d.probs[iota[v]]);

    // (p^iota)^{(x)2}(b) = p^{(x)2}(iota(b)) on every two-step event
    for (std::size_t a = 0; a < crystal->size(); ++a)
        for (std::size_t b = 0; b < crystal->size(); ++b) {
            auto pre = make_prefix({crystal->vertices[a], crystal->vertices[b]}, 2);
            auto img = lusztig_involution(rs, *crystal, pre, &iota);
            int ia = *find_vertex(*crystal, img.steps[0]);
            int ib = *find_vertex(*crystal, img.steps[1]);
            CHECK(di.probs[a] * di.probs[b] == d.probs[ia] * d.probs[ib]);
        }

    CentralDistribution uniform = dual_distribution(rs, crystal, make_tau({Rat(1), Rat(1)}, 2));
    for (const auto& p : uniform.probs) CHECK(p == Rat(1, 4));
}

TEST_CASE_METHOD(C2Fixture, "drift report") {
    CentralDistribution d = central_distribution(rs, crystal, tau);
    DriftReport rep = drift(rs, d);
    CHECK(rep.mbar == Vec{Rat(11, 21), Rat(4, 21)});
    CHECK(rep.in_interior);
    CHECK(path_endpoint(rep.m, 2) == rep.mbar);
    CHECK(arc_length(rep.m) <= 1.0 + 1e-12);

    // closed form ((1 - t1^2 t2) e1 + (t1 - t1 t2) e2) / S on another tau
    TauParams t2 = make_tau({Rat(2, 3), Rat(1, 5)}, 2);
    CentralDistribution d2 = central_distribution(rs, crystal, t2);
    Rat s = d2.normalizer;
    Vec expect{(Rat(1) - Rat(4, 9) * Rat(1, 5)) / s, (Rat(2, 3) - Rat(2, 3) * Rat(1, 5)) / s};
    CHECK(drift(rs, d2).mbar == expect);

    // covariance: exact centered second moment
    CHECK(rep.gamma[0][0] == Rat(152, 441));
    CHECK(rep.gamma[1][1] == Rat(152, 441));
    CHECK(rep.gamma[0][1] == Rat(-44, 441));
    CHECK(rep.gamma[1][0] == Rat(-44, 441));

    // tau = 1: self-dual weights cancel
    CentralDistribution u = central_distribution(rs, crystal, make_tau({Rat(1), Rat(1)}, 2));
    CHECK(drift(rs, u).mbar == zero_vec(2));

    // interior criterion matches tau in (0,1)^n across a grid with boundary values
    for (Rat t1 : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2)})
        for (Rat t2g : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1), Rat(3, 2)}) {
            TauParams g = make_tau({t1, t2g}, 2);
            DriftReport r = drift(rs, central_distribution(rs, crystal, g));
            CHECK(r.in_interior == (t1 < 1 && t2g < 1));
        }
}

TEST_CASE_METHOD(C2Fixture, "dual drift is the w0 image") {
    CentralDistribution d = central_distribution(rs, crystal, tau);
    CentralDistribution di = dual_distribution(rs, crystal, tau);
    CHECK(drift(rs, di).mbar == w0_action(rs, drift(rs, d).mbar));
}

TEST_CASE_METHOD(C2Fixture, "walk transition kernel") {
    CHECK(walk_transition(rs, *crystal, tau, zero_vec(2), rv({1, 0})) == Rat(4, 7));
    CHECK(walk_transition(rs, *crystal, tau, zero_vec(2), rv({5, 5})) == 0);
    // row sums to one over the weights of V(kappa)
    Vec eta = rv({3, 1});
    Rat sum(0);
    for (std::size_t v = 0; v < crystal->size(); ++v)
        sum += walk_transition(rs, *crystal, tau, eta, eta + crystal->weights[v]);
    CHECK(sum == 1);
}

TEST_CASE_METHOD(C2Fixture, "transition rows") {
    TransitionEngine engine(rs, crystal, tau);
    // mu = 0: the only component of V(0) (x) V(kappa)
    const TransitionRow& r0 = engine.row(zero_vec(2));
    REQUIRE(r0.targets.size() == 1);
    CHECK(r0.targets[0].first == rv({1, 0}));
    CHECK(r0.targets[0].second == 1);

    const TransitionRow& r1 = engine.row(rv({1, 0}));
    REQUIRE(r1.targets.size() == 3);
    Rat sum(0);
    for (const auto& [lam, p] : r1.targets) {
        CHECK(p > 0);
        sum += p;
    }
    CHECK(sum == 1);
    CHECK(engine.probability(rv({1, 0}), zero_vec(2)) == Rat(4, 147));

    // matches the harmonic-function form of the transitions at an exact level
    CrystalBank bank(rs);
    TransitionRow pz = pi_z_row(rs, bank, rv({1, 0}), tau, rv({1, 0}), 3);
    REQUIRE(pz.targets.size() == r1.targets.size());
    for (std::size_t k = 0; k < pz.targets.size(); ++k) {
        CHECK(pz.targets[k].first == r1.targets[k].first);
        CHECK(pz.targets[k].second == r1.targets[k].second);
    }
    // and the harmonic form is level-independent
    TransitionRow pz2 = pi_z_row(rs, bank, rv({1, 0}), tau, rv({1, 0}), 5);
    for (std::size_t k = 0; k < pz2.targets.size(); ++k)
        CHECK(pz2.targets[k].second == pz.targets[k].second);
}

TEST_CASE_METHOD(C2Fixture, "harmonic values") {
    CrystalBank bank(rs);
    Vec kappa = rv({1, 0});
    HarmonicValue h00 = harmonic(rs, bank, kappa, tau, zero_vec(2), 0);
    CHECK(h00.exact);
    CHECK(h00.value == 1);

    HarmonicValue hk1 = harmonic(rs, bank, kappa, tau, kappa, 1);
    CHECK(hk1.exact);
    CHECK(hk1.value == 1);

    // harmonicity phi(mu,l) = sum m phi(Lambda,l+1), exactly
    HarmonicValue lhs = harmonic(rs, bank, kappa, tau, rv({1, 0}), 1);
    Rat rhs(0);
    for (const auto& [lam, m] : mult_m_row(rs, rv({1, 0}), *bank.crystal(kappa)))
        rhs += Rat(m) * harmonic(rs, bank, kappa, tau, lam, 2).value;
    CHECK(lhs.value == rhs);

    // non-integral exponent: real-valued evaluation
    HarmonicValue frac = harmonic(rs, bank, kappa, tau, rv({1, 0}), 0);
    CHECK_FALSE(frac.exact);
    CHECK(frac.approx == Catch::Approx(2.0 * std::sqrt(3.0) * 7.0 / 4.0).epsilon(1e-12));

    CHECK_THROWS_AS(harmonic(rs, bank, kappa, tau, rv({0, -1}), 1), std::domain_error);
}

TEST_CASE("harmonicity polynomial identity for small dominant weights") {
    for (auto name : {"C2", "A2"}) {
        RootSystem rs = parse_root_system(name);
        CrystalBank bank(rs);
        Vec kappa = rs.fundamental(1);
        for (long a = 0; a <= 2; ++a)
            for (long b = 0; b <= 2; ++b) {
                Vec mu = weight_from_fundamental(rs, {a, b});
                INFO(name << " mu=" << format_vec(mu));
                CHECK(harmonicity_polynomial_identity(rs, bank, kappa, mu));
            }
    }
}

TEST_CASE_METHOD(C2Fixture, "highest-weight prefix mass") {
    CrystalBank bank(rs);
    Vec kappa = rv({1, 0});
    CHECK(hw_prefix_probability(rs, bank, kappa, tau, kappa, 1) == 1);
    CHECK(hw_prefix_probability(rs, bank, kappa, tau, zero_vec(2), 2) == Rat(4, 147));
    // parity-unreachable weight carries no mass
    CHECK(hw_prefix_probability(rs, bank, kappa, tau, kappa, 2) == 0);

    // brute force: the p^{(x)2} mass of the component of pi_1 (x) pi_1bar
    CentralDistribution d = central_distribution(rs, crystal, tau);
    TrajectoryPrefix seed = make_prefix(
        {straight_path_to(rv({1, 0})), straight_path_to(rv({-1, 0}))}, 2);
    TrajectoryPrefix seed_hw = to_highest(rs, seed).first;
    Rat mass(0);
    for (std::size_t a = 0; a < crystal->size(); ++a)
        for (std::size_t b = 0; b < crystal->size(); ++b) {
            auto pre = make_prefix({crystal->vertices[a], crystal->vertices[b]}, 2);
            if (to_highest(rs, pre).first == seed_hw) mass += d.probs[a] * d.probs[b];
        }
    CHECK(mass == Rat(4, 147));

    // components partition the prefix space: the component masses sum to 1
    auto levels = mult_f_levels(rs, zero_vec(2), *crystal, 2);
    Rat total(0);
    for (const auto& [lam, f] : levels[2])
        total += Rat(f) * hw_prefix_probability(rs, bank, kappa, tau, lam, 2);
    CHECK(total == 1);

    // confinement probability: sum of f^2_lambda tau^{2 kappa - lambda} / S^2
    // (each confined path carries the plain product mass, without S_lambda)
    Rat per_path_total(0);
    for (const auto& [lam, f] : levels[2]) {
        auto u = integer_root_coords(rs, Rat(2) * kappa - lam);
        per_path_total += Rat(f) * tau_power(tau.tau, u) / (d.normalizer * d.normalizer);
    }
    Rat confined(0);
    for (std::size_t a = 0; a < crystal->size(); ++a)
        for (std::size_t b = 0; b < crystal->size(); ++b) {
            auto pre = make_prefix({crystal->vertices[a], crystal->vertices[b]}, 2);
            PiecewisePath cat = delta(pre);
            bool ok = true;
            for (int i = 1; i <= 2 && ok; ++i)
                if (min_pairing(cat, rs, i).min < 0) ok = false;
            if (ok) confined += d.probs[a] * d.probs[b];
        }
    CHECK(per_path_total == confined);
}

TEST_CASE_METHOD(C2Fixture, "ratio asymptotics smoke") {
    CrystalBank bank(rs);
    Vec kappa = rv({1, 0});
    // gamma = 0: the ratio is identically one
    RatioReport zero = asymptotic_ratio_report(rs, bank, kappa, tau, rv({1, 0}), zero_vec(2), 8);
    for (const auto& row : zero.gamma_series) {
        CHECK(row.ratio == 1.0);
        CHECK(row.relative_gap == 0.0);
    }

    RatioReport rep =
        asymptotic_ratio_report(rs, bank, kappa, tau, rv({1, 0}), rs.root(1), 16);
    REQUIRE(!rep.gamma_series.empty());
    CHECK(rep.gamma_series.back().limit == Catch::Approx(2.0));
    CHECK(rep.gamma_series.back().relative_gap < 0.35);
    // mu = omega_1 sits outside the root lattice: symmetrized estimator
    CHECK(rep.mu_symmetrized);
    REQUIRE(!rep.mu_series.empty());
    CHECK(rep.mu_series.back().limit == Catch::Approx(2.0 * std::sqrt(3.0) * 7.0 / 4.0));
    // a single kappa-power drop leaves the support coset; the doubled drop works
    CHECK(rep.corollary_l0 == 2);
    REQUIRE(!rep.corollary_series.empty());
    CHECK(rep.corollary_series.back().limit ==
          Catch::Approx(std::pow(2.0 * std::sqrt(3.0) * 7.0 / 4.0, -2.0)));

    // mu = omega_2 lies in the root lattice: the literal same-level ratio runs
    RatioReport lit =
        asymptotic_ratio_report(rs, bank, kappa, tau, rv({1, 1}), rs.root(1), 16);
    CHECK_FALSE(lit.mu_symmetrized);
    REQUIRE(!lit.mu_series.empty());
    Rat s_w2 = bank.s_value(rv({1, 1}), tau.tau);
    CHECK(lit.mu_series.back().limit == Catch::Approx(6.0 * to_double(s_w2)));

    CHECK_THROWS_AS(
        asymptotic_ratio_report(rs, bank, kappa, make_tau({Rat(2), Rat(1, 3)}, 2), rv({1, 0}),
                                rs.root(1), 4),
        std::domain_error);
}

TEST_CASE_METHOD(C2Fixture, "centrality recognition") {
    CentralDistribution d = central_distribution(rs, crystal, tau);
    CentralityReport ok = centrality_check(rs, *crystal, d.probs);
    CHECK(ok.central);
    CHECK(ok.tau_witness == std::vector<Rat>{Rat(1, 2), Rat(1, 3)});

    std::vector<Rat> uniform(4, Rat(1, 4));
    CentralityReport u = centrality_check(rs, *crystal, uniform);
    CHECK(u.central);
    CHECK(u.tau_witness == std::vector<Rat>{Rat(1), Rat(1)});

    // chain-ordered (0.4, 0.3, 0.2, 0.1): the two 1-edges disagree (3/4 vs 1/2)
    std::vector<Rat> bad(4);
    bad[*find_vertex(*crystal, straight_path_to(rv({1, 0})))] = Rat(2, 5);
    bad[*find_vertex(*crystal, straight_path_to(rv({0, 1})))] = Rat(3, 10);
    bad[*find_vertex(*crystal, straight_path_to(rv({0, -1})))] = Rat(1, 5);
    bad[*find_vertex(*crystal, straight_path_to(rv({-1, 0})))] = Rat(1, 10);
    CentralityReport rep = centrality_check(rs, *crystal, bad);
    CHECK_FALSE(rep.central);
    CHECK(rep.color == 1);
    CHECK(((rep.ratio_a == Rat(3, 4) && rep.ratio_b == Rat(1, 2)) ||
           (rep.ratio_a == Rat(1, 2) && rep.ratio_b == Rat(3, 4))));

    std::vector<Rat> not_a_distribution(4, Rat(1, 5));
    CHECK_THROWS_AS(centrality_check(rs, *crystal, not_a_distribution), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qagap/errors.hpp"
#include "qagap/evolution.hpp"

using namespace qagap;

namespace {

PathOperator grover_path(int n, Schedule schedule = Schedule::linear()) {
    return make_uniform_projector_path(build_instance({InstanceKind::Grover, n}), std::move(schedule));
}

// |<E1| dH/du |E0>| from dense eigenvectors and a central difference of the dense path.
double finite_difference_element(const PathOperator& path, double u) {
    const double h = 1e-5;
    const Eigen::MatrixXd rate = (path.materialize_dense(u + h) - path.materialize_dense(u - h)) / (2 * h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(path.materialize_dense(u));
    return std::abs(es.eigenvectors().col(1).dot(rate * es.eigenvectors().col(0)));
}

}  // namespace

TEST(TransitionElement, GroverMatchesDenseFiniteDifference) {
    const auto path = grover_path(2);
    for (double u : {0.05, 0.3, 0.5, 0.72, 0.95}) {
        EXPECT_NEAR(transition_element(path, u).value, finite_difference_element(path, u), 1e-6) << "u=" << u;
    }
}

TEST(TransitionElement, StructuredFamiliesAgreeWithDenseEigenvectors) {
    std::mt19937_64 rng(12);
    const auto table = oracle::random_table(rng, 3, 8);
    const std::vector<PathOperator> paths = {make_uniform_projector_path(table, Schedule::smoothstep()),
                                             make_marked_mirror_path(table, 6, Schedule::bulge(0.3)),
                                             make_hamming_path(1, Schedule::power_law(2.0))};
    for (const auto& path : paths) {
        for (double u : {0.2, 0.45, 0.8}) {
            const auto structured = transition_element(path, u);
            if (structured.flag != TransitionElement::Flag::None) continue;
            EXPECT_NEAR(structured.value, dense_transition_element(path, u).value, 1e-8) << "u=" << u;
        }
    }
}

TEST(TransitionElement, HammingUsesOneFlippedQubit) {
    // The excited level is n-fold degenerate; the derivative couples the
    // ground product state to each single flip with the same element.
    const auto path = make_hamming_path(3);
    const auto single = make_hamming_path(1);
    for (double u : {0.25, 0.5, 0.75}) {
        EXPECT_NEAR(transition_element(path, u).value, finite_difference_element(single, u), 1e-7);
    }
}

TEST(TransitionElement, FlatPlateauContributesZero) {
    // s(u) rises at rate 1.25, holds at 0.5 on [0.4, 0.6], then rises again.
    auto s_of = [](double u) { return u < 0.4 ? 1.25 * u : (u < 0.6 ? 0.5 : 0.5 + 1.25 * (u - 0.6)); };
    auto rate = [](double u) { return (u > 0.4 && u < 0.6) ? 0.0 : 1.25; };
    const auto plateau = Schedule::custom(
        "plateau", [s_of](double u) { return 1.0 - s_of(u); }, s_of, [rate](double u) { return -rate(u); }, rate);
    const auto path = grover_path(3, plateau);
    EXPECT_EQ(transition_element(path, 0.5).value, 0.0);
    EXPECT_GT(transition_element(path, 0.3).value, 0.0);
}

TEST(Dmax, ScalesExactlyAsOneOverT) {
    const auto path = grover_path(4);
    const auto d1 = dmax(path, 3.0);
    const auto d2 = dmax(path, 6.0);
    EXPECT_NEAR(d2.value, d1.value / 2.0, 1e-12);
    EXPECT_EQ(d1.numerator, d2.numerator);
}

TEST(Dmax, GridMaximumMatchesDenseFiniteDifference) {
    const auto path = grover_path(2);
    const auto d = dmax(path, 1.0, 257);
    double best = 0.0;
    for (int i = 1; i < 256; ++i) best = std::max(best, finite_difference_element(path, i / 256.0));
    EXPECT_GE(d.numerator, best - 1e-6);
    EXPECT_LE(d.numerator, best * (1 + 1e-3));
}

TEST(Dmax, FlagsTheMergedStartPoint) {
    const auto d = dmax(grover_path(3), 1.0);
    ASSERT_FALSE(d.flagged.empty());
    EXPECT_EQ(d.flagged.front().u, 0.0);
    EXPECT_EQ(d.flagged.front().flag, TransitionElement::Flag::Deflated);
}

TEST(Dmax, RejectsNonPositiveTime) {
    EXPECT_THROW(dmax(grover_path(2), 0.0), ValidationError);
}

TEST(RequiredTime, GroverFourFollowsTheBudgetFormula) {
    const auto path = grover_path(4);
    const auto budget = required_time(path, 0.1);
    const double numerator = dmax(path, 1.0).numerator;
    EXPECT_NEAR(budget.g_min, 0.25, 1e-9);
    EXPECT_NEAR(budget.t_required, 160.0 * numerator, 1e-6 * budget.t_required);
    EXPECT_LE(budget.d_max / (budget.g_min * budget.g_min), 0.1 * (1 + 1e-12));
}

TEST(RequiredTime, HalvingEpsilonDoublesTheTime) {
    const auto path = grover_path(5);
    EXPECT_NEAR(required_time(path, 0.05).t_required, 2.0 * required_time(path, 0.1).t_required, 1e-9);
}

TEST(RequiredTime, HammingIsIndependentOfN) {
    const double reference = required_time(make_hamming_path(2), 0.1).t_required;
    for (int n = 3; n <= 8; ++n) {
        EXPECT_NEAR(required_time(make_hamming_path(n), 0.1).t_required, reference, 0.05 * reference) << "n=" << n;
    }
}

TEST(RequiredTime, DegenerateGroundIsUnbounded) {
    InstanceSpec spec{InstanceKind::TwoLevel, 3};
    spec.ground_count = 2;
    const auto budget = required_time(make_uniform_projector_path(build_instance(spec)), 0.1);
    EXPECT_TRUE(budget.unbounded);
    EXPECT_TRUE(std::isinf(budget.t_required));
}

TEST(RequiredTime, RejectsEpsilonOutsideUnitInterval) {
    EXPECT_THROW(required_time(grover_path(2), 0.0), ValidationError);
    EXPECT_THROW(required_time(grover_path(2), 1.0), ValidationError);
}

TEST(Evolve, QuenchGivesInitialOverlap) {
    const auto r = evolve(grover_path(2), 0.0);
    EXPECT_NEAR(r.success_probability, 0.25, 1e-12);
    const auto mirror = evolve(make_marked_mirror_path(build_instance({InstanceKind::Grover, 3}), 5), 0.0);
    EXPECT_NEAR(mirror.success_probability, 1.0 / 8.0, 1e-12);
}

TEST(Evolve, SlowEvolutionReachesGroundState) {
    const auto path = grover_path(2);
    const double t = 10.0 * required_time(path, 0.1).t_required;
    const auto r = evolve(path, t);
    EXPECT_GE(r.success_probability, 0.99);
    EXPECT_LE(r.norm_drift, 1e-8);
    ASSERT_TRUE(r.doubling_delta.has_value());
    EXPECT_LE(*r.doubling_delta, 1e-6);
    EXPECT_TRUE(r.converged);
}

TEST(Evolve, MatchesDenseExponentialIntegration) {
    // Reference: piecewise-constant midpoint propagation with dense eigendecomposition, fine steps.
    const auto path = grover_path(2, Schedule::smoothstep());
    const double t = 5.0;
    const int steps = 20000;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(4, 0.5);
    for (int k = 0; k < steps; ++k) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(path.materialize_dense((k + 0.5) / steps));
        const Eigen::VectorXcd phase = (es.eigenvalues() * (-t / steps)).unaryExpr([](double a) {
            return std::polar(1.0, a);
        });
        const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
        psi = v * phase.asDiagonal() * (v.adjoint() * psi);
    }
    EvolveOptions opts;
    opts.steps = 400;
    const auto r = evolve(path, t, opts);
    EXPECT_NEAR(r.success_probability, std::norm(psi[0]), 1e-6);
}

TEST(Evolve, NormStaysWithinStepBudget) {
    EvolveOptions opts;
    opts.trajectory_samples = 20;
    const auto r = evolve(grover_path(4), 30.0, opts);
    ASSERT_EQ(r.trajectory.size(), 21u);
    EXPECT_EQ(r.trajectory.front().u, 0.0);
    EXPECT_EQ(r.trajectory.back().u, 1.0);
    for (const auto& sample : r.trajectory) {
        EXPECT_NEAR(sample.norm, 1.0, 1e-8);
        EXPECT_GE(sample.overlap2, 0.0);
        EXPECT_LE(sample.overlap2, 1.0 + 1e-12);
    }
    EXPECT_LE(r.norm_drift, static_cast<double>(r.steps) * 1e-10);
    EXPECT_NEAR(r.trajectory.front().overlap2, 1.0, 1e-12);
    EXPECT_NEAR(r.trajectory.back().overlap2, r.success_probability, 1e-12);
}

TEST(Evolve, InstantaneousGroundOverlapMatchesDense) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss;
    const auto table = oracle::random_table(rng, 3, 5);
    const std::vector<PathOperator> paths = {make_uniform_projector_path(table), make_marked_mirror_path(table, 3),
                                             make_hamming_path(3)};
    for (const auto& path : paths) {
        StateVector psi(8);
        for (auto& x : psi) x = {gauss(rng), gauss(rng)};
        psi /= psi.norm();
        for (double u : {0.3, 0.6}) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(path.materialize_dense(u));
            const double expected = std::norm(es.eigenvectors().col(0).cast<std::complex<double>>().dot(psi));
            EXPECT_NEAR(instantaneous_ground_probability(path, u, psi), expected, 1e-10);
        }
    }
}

TEST(Evolve, CoarseStepsWithoutDoublingStillPreserveNorm) {
    EvolveOptions opts;
    opts.steps = 2;
    opts.step_doubling = false;
    const auto r = evolve(grover_path(3), 50.0, opts);
    EXPECT_EQ(r.steps, 2);
    EXPECT_FALSE(r.doubling_delta.has_value());
    EXPECT_LE(r.norm_drift, 1e-10);
}

TEST(Evolve, RejectsBadInputs) {
    EXPECT_THROW(evolve(grover_path(15), 1.0), CapacityError);
    EXPECT_THROW(evolve(grover_path(2), -1.0), ValidationError);
    EvolveOptions opts;
    opts.steps = 1;
    EXPECT_THROW(evolve(grover_path(2), 1.0, opts), ValidationError);
}

TEST(Evolve, DefaultStepsFollowEnergyScale) {
    EXPECT_EQ(default_steps(grover_path(2), 1.0), 1000);
    EXPECT_EQ(default_steps(grover_path(2), 100.0), 5000);
}

TEST(RuntimeScaling, GroverGrowsExponentiallyHammingDoesNot) {
    const auto grover = runtime_scaling_experiment({InstanceKind::Grover}, 4, 12, 0.1);
    EXPECT_NEAR(grover.slope, 1.0, 0.1);
    const auto hamming = runtime_scaling_experiment({InstanceKind::HammingWeight}, 2, 8, 0.1);
    EXPECT_LE(std::abs(hamming.slope), 0.1);
    for (const auto& row : hamming.rows) EXPECT_NEAR(row.g_min, std::sqrt(0.5), 1e-9);
}

TEST(RuntimeScaling, SingleRowMatchesDirectCall) {
    const auto table = runtime_scaling_experiment({InstanceKind::Grover}, 6, 6, 0.1);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_TRUE(std::isnan(table.slope));
    EXPECT_EQ(table.rows[0].t_required, required_time(grover_path(6), 0.1).t_required);
}

TEST(LeastSquaresSlope, RecoversLine) {
    EXPECT_NEAR(least_squares_slope({1, 2, 3, 4}, {3, 5, 7, 9}), 2.0, 1e-15);
}

TEST(Sweep, CsvHasFixedHeaderAndEmptyCellsWithoutEvolution) {
    SweepOptions opts;
    const auto rows = run_sweep({InstanceKind::Grover}, 2, 3, Schedule::linear(), opts);
    std::ostringstream out;
    write_sweep_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "n,g_min,t_required,success_probability,T,steps");
    EXPECT_EQ(first.substr(first.size() - 3), ",,,");
}

TEST(Sweep, EvolvedCellsReportSuccessAndSteps) {
    SweepOptions opts;
    opts.time_multipliers = {10.0};
    const auto rows = run_sweep({InstanceKind::Grover}, 2, 2, Schedule::linear(), opts);
    ASSERT_EQ(rows.size(), 1u);
    ASSERT_TRUE(rows[0].success_probability.has_value());
    EXPECT_GE(*rows[0].success_probability, 0.99);
    EXPECT_NEAR(*rows[0].total_time, 10.0 * rows[0].t_required, 1e-9);
}

TEST(Trajectory, CsvHeader) {
    std::ostringstream out;
    write_trajectory_csv(out, {{0.0, 1.0, 1.0}});
    EXPECT_EQ(out.str(), "u,overlap2,norm\n0,1,1\n");
}

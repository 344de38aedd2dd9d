#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qagap/equivalence.hpp"
#include "qagap/errors.hpp"

using namespace qagap;

TEST(HadamardConjugate, MatchesExplicitProduct) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(16, 16);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = gauss(rng);
    const auto w = oracle::hadamard(4);
    EXPECT_LT((hadamard_conjugate(m) - w * m * w).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(HadamardConjugate, RejectsBadShapes) {
    EXPECT_THROW(hadamard_conjugate(Eigen::MatrixXd::Zero(3, 3)), DimensionError);
    EXPECT_THROW(hadamard_conjugate(Eigen::MatrixXd::Zero(4, 2)), DimensionError);
}

TEST(MirrorInvariance, GroverSpectrumIndependentOfMarkedIndex) {
    const auto v = mirror_invariance_check(build_instance({InstanceKind::Grover, 3}));
    EXPECT_TRUE(v.passed);
    EXPECT_LE(v.max_dev, 1e-10);
    EXPECT_EQ(v.cases.size(), 8u);
}

TEST(MirrorInvariance, HoldsForRandomCostsWithRepeats) {
    std::mt19937_64 rng(8);
    const auto v = mirror_invariance_check(oracle::random_table(rng, 3, 4), 11);
    EXPECT_TRUE(v.passed) << v.max_dev;
}

TEST(MirrorInvariance, DenseSpectrumEqualsReflectedNaivePath) {
    // Independent route: explicit W D W and I - |x><x| against the naive uniform path at 1 - s.
    std::mt19937_64 rng(9);
    const auto table = oracle::random_table(rng, 3, 5);
    const auto values = oracle::expand_values(table);
    const auto w = oracle::hadamard(3);
    const Eigen::MatrixXd d = Eigen::Map<const Eigen::VectorXd>(values.data(), 8).asDiagonal();
    for (std::uint64_t x : {0u, 5u}) {
        Eigen::MatrixXd marked = Eigen::MatrixXd::Identity(8, 8);
        marked(x, x) = 0.0;
        for (double s : {0.2, 0.7}) {
            const auto mirrored = oracle::eigenvalues((1 - s) * w * d * w + s * marked);
            const auto reference = oracle::eigenvalues(oracle::uniform_path(values, 1 - s));
            EXPECT_LT((mirrored - reference).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(MirrorInvariance, RespectsDenseCapacity) {
    EXPECT_THROW(mirror_invariance_check(build_instance({InstanceKind::Grover, 13})), CapacityError);
}

TEST(PathRescaling, IdentityHoldsForEveryBuiltinSchedule) {
    const auto table = build_instance({InstanceKind::Grover, 6});
    for (const auto& schedule : {Schedule::linear(), Schedule::power_law(2.0), Schedule::power_law(0.5),
                                 Schedule::smoothstep(), Schedule::bulge(0.5), Schedule::bulge(-0.5)}) {
        const auto v = path_rescaling_check(table, schedule);
        EXPECT_TRUE(v.passed) << schedule.name() << " " << v.max_dev;
        EXPECT_TRUE(v.summary.at("inequality_holds").get<bool>()) << schedule.name();
        EXPECT_GT(v.summary.at("margin").get<double>(), 0.0) << schedule.name();
        EXPECT_GE(v.cases.size(), 101u);
    }
}

TEST(PathRescaling, HoldsForRandomCostsAndNegativeWeights) {
    std::mt19937_64 rng(10);
    const auto table = oracle::random_table(rng, 4, 6);
    const auto overshoot = Schedule::custom(
        "overshoot", [](double u) { return 1.0 - u - 0.5 * std::sin(M_PI * u); },
        [](double u) { return u + 0.5 * std::sin(M_PI * u); });
    const auto v = path_rescaling_check(table, overshoot);
    EXPECT_TRUE(v.passed) << v.max_dev;
}

TEST(PathRescaling, PathGapMatchesDenseDiagonalisation) {
    const auto table = build_instance({InstanceKind::Grover, 3});
    const auto schedule = Schedule::bulge(0.8);
    const auto v = path_rescaling_check(table, schedule, 11);
    const auto values = oracle::expand_values(table);
    for (const auto& c : v.cases) {
        const double u = c.at("u").get<double>();
        const double f = schedule.initial_weight(u);
        const double g = schedule.final_weight(u);
        const Eigen::MatrixXd h = f * oracle::uniform_path(values, 0.0) + g * oracle::uniform_path(values, 1.0);
        const auto ev = oracle::eigenvalues(h);
        EXPECT_NEAR(c.at("gap_path").get<double>(), ev[1] - ev[0], 1e-12) << "u=" << u;
    }
}

TEST(Verdict, SerialisesRequiredFields) {
    const auto j = to_json(mirror_invariance_check(build_instance({InstanceKind::Grover, 2})));
    for (const char* key : {"check", "max_dev", "passed", "cases"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j.at("check"), "mirror_invariance");
}

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qagap/errors.hpp"
#include "qagap/schedule.hpp"

using namespace qagap;

namespace {

std::vector<Schedule> builtins() {
    return {Schedule::linear(), Schedule::power_law(2.0), Schedule::power_law(0.5), Schedule::smoothstep(),
            Schedule::bulge(0.5), Schedule::bulge(-0.5)};
}

}  // namespace

TEST(Schedule, BuiltinsSatisfyBoundaryConditions) {
    for (const auto& s : builtins()) {
        EXPECT_NEAR(s.initial_weight(0.0), 1.0, 1e-15) << s.name();
        EXPECT_NEAR(s.final_weight(0.0), 0.0, 1e-15) << s.name();
        EXPECT_NEAR(s.initial_weight(1.0), 0.0, 1e-15) << s.name();
        EXPECT_NEAR(s.final_weight(1.0), 1.0, 1e-15) << s.name();
    }
}

TEST(Schedule, SumStaysInsideOpenBand) {
    for (const auto& s : builtins()) {
        EXPECT_GT(s.c1(), 0.0);
        for (int i = 0; i <= 1000; ++i) {
            const double u = i / 1000.0;
            const double sum = s.initial_weight(u) + s.final_weight(u);
            EXPECT_GT(sum, s.c1()) << s.name();
            EXPECT_LT(sum, s.c2()) << s.name();
        }
    }
}

TEST(Schedule, AnalyticRatesMatchCentralDifferences) {
    const double h = 1e-6;
    for (const auto& s : builtins()) {
        for (double u : {0.1, 0.37, 0.5, 0.81}) {
            const double df = (s.initial_weight(u + h) - s.initial_weight(u - h)) / (2 * h);
            const double dg = (s.final_weight(u + h) - s.final_weight(u - h)) / (2 * h);
            EXPECT_NEAR(s.initial_rate(u), df, 1e-7) << s.name() << " u=" << u;
            EXPECT_NEAR(s.final_rate(u), dg, 1e-7) << s.name() << " u=" << u;
        }
    }
}

TEST(Schedule, BulgeSumIsOnePlusTwoKappaUOneMinusU) {
    const auto s = Schedule::bulge(0.75);
    for (double u : {0.0, 0.2, 0.5, 0.9}) {
        EXPECT_NEAR(s.initial_weight(u) + s.final_weight(u), 1.0 + 1.5 * u * (1.0 - u), 1e-15);
    }
    EXPECT_GT(s.c2(), 1.375);
}

TEST(Schedule, RejectsBoundaryViolations) {
    EXPECT_THROW(Schedule::custom("bad", [](double u) { return 1.0 - 0.5 * u; }, [](double u) { return u; }),
                 ValidationError);
}

TEST(Schedule, RejectsNonPositiveSum) {
    EXPECT_THROW(Schedule::custom(
                     "dip", [](double u) { return 1.0 - u - 2.0 * u * (1.0 - u); }, [](double u) { return u - 2.0 * u * (1.0 - u); }),
                 ValidationError);
}

TEST(Schedule, RejectsJumps) {
    EXPECT_THROW(Schedule::custom(
                     "step", [](double u) { return u < 0.5 ? 1.0 : 0.0; }, [](double u) { return u < 0.5 ? 0.0 : 1.0; }),
                 ValidationError);
}

TEST(Schedule, RejectsBoundsThatDoNotEnclose) {
    EXPECT_THROW(Schedule::custom(
                     "lin", [](double u) { return 1.0 - u; }, [](double u) { return u; }, std::nullopt, std::nullopt,
                     Schedule::Bounds{0.5, 1.0}),
                 ValidationError);
}

TEST(Schedule, NegativeWeightsAreAllowedWhileSumIsPositive) {
    const auto s = Schedule::custom(
        "overshoot", [](double u) { return 1.0 - u - 0.5 * std::sin(M_PI * u); },
        [](double u) { return u + 0.5 * std::sin(M_PI * u); });
    EXPECT_LT(s.initial_weight(0.9), 0.0);
    EXPECT_NEAR(s.c1(), 1.0 * (1.0 - std::ldexp(1.0, -10)), 1e-15);
}

TEST(NormalizedPoint, FactorsTheWeights) {
    const auto s = Schedule::bulge(1.0);
    for (double u : {0.0, 0.25, 0.5, 1.0}) {
        const auto np = normalized_point(s, u);
        EXPECT_NEAR(np.scale * (1.0 - np.s), s.initial_weight(u), 1e-15);
        EXPECT_NEAR(np.scale * np.s, s.final_weight(u), 1e-15);
    }
}

TEST(Preimages, InvertsMonotoneSchedules) {
    const auto s = Schedule::power_law(2.0);
    const auto pre = preimages(s, 0.25);
    ASSERT_EQ(pre.size(), 1u);
    EXPECT_NEAR(pre[0], 0.5, 1e-12);
}

TEST(Preimages, FindsEveryCrossingOfANonMonotoneSchedule) {
    // s(u) = u + 0.3 sin(2 pi u) has local extrema 0.594 and 0.406, so 0.47 is crossed three times.
    const auto s = Schedule::custom(
        "wiggle", [](double u) { return 1.0 - u - 0.3 * std::sin(2 * M_PI * u); },
        [](double u) { return u + 0.3 * std::sin(2 * M_PI * u); });
    const auto pre = preimages(s, 0.47);
    ASSERT_EQ(pre.size(), 3u);
    for (double u : pre) EXPECT_NEAR(normalized_point(s, u).s, 0.47, 1e-12);
}

TEST(ParseSchedule, RecognisesBuiltinsAndFiles) {
    EXPECT_TRUE(parse_schedule("linear").is_linear());
    EXPECT_EQ(parse_schedule("power:3").name(), "power:3");
    EXPECT_EQ(parse_schedule("smoothstep").name(), "smoothstep");
    EXPECT_EQ(parse_schedule("bulge:0.25").name(), "bulge:0.25");
    EXPECT_THROW(parse_schedule("cubic"), ValidationError);
    EXPECT_THROW(parse_schedule("power:-1"), ValidationError);

    const auto path = std::filesystem::temp_directory_path() / "qagap_schedule_table.json";
    std::ofstream(path) << R"({"type":"table","u":[0,0.5,1],"f":[1,0.6,0],"g":[0,0.6,1]})";
    const auto s = parse_schedule(path.string());
    EXPECT_NEAR(s.initial_weight(0.25), 0.8, 1e-15);
    EXPECT_NEAR(s.final_rate(0.75), 0.8, 1e-15);
    std::filesystem::remove(path);
}

TEST(Schedule, WithTotalTimeKeepsWeights) {
    const auto s = Schedule::smoothstep().with_total_time(7.0);
    EXPECT_DOUBLE_EQ(s.total_time(), 7.0);
    EXPECT_DOUBLE_EQ(s.final_weight(0.3), Schedule::smoothstep().final_weight(0.3));
}

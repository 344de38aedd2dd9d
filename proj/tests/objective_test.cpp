#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "qagap/errors.hpp"
#include "qagap/objective.hpp"

using namespace qagap;

TEST(SpectrumTable, RejectsUnsortedOrDuplicateValues) {
    EXPECT_THROW(SpectrumTable(1, {{1.0, 1}, {0.0, 1}}), ValidationError);
    EXPECT_THROW(SpectrumTable(1, {{0.0, 1}, {0.0, 1}}), ValidationError);
}

TEST(SpectrumTable, RejectsWrongMultiplicityTotal) {
    EXPECT_THROW(SpectrumTable(2, {{0.0, 1}, {1.0, 2}}), ValidationError);
    EXPECT_THROW(SpectrumTable(2, {{0.0, 0}, {1.0, 4}}), ValidationError);
}

TEST(SpectrumTable, RejectsValuesOutsideBound) {
    EXPECT_THROW(SpectrumTable(1, {{0.0, 1}, {5.0, 1}}, 4.0), ValidationError);
    EXPECT_NO_THROW(SpectrumTable(1, {{0.0, 1}, {4.0, 1}}, 4.0));
}

TEST(SpectrumTable, FromUnsortedMergesNearlyEqualValues) {
    const auto t = SpectrumTable::from_unsorted(2, {{2.0, 1}, {0.0, 1}, {2.0 + 1e-14, 1}, {1.0, 1}});
    ASSERT_EQ(t.distinct_count(), 3u);
    EXPECT_EQ(t.level(2).multiplicity, 2u);
    EXPECT_DOUBLE_EQ(t.level(0).value, 0.0);
}

TEST(SpectrumTable, ExpandListsEveryValueInAscendingOrder) {
    const SpectrumTable t(2, {{-1.0, 1}, {0.5, 3}});
    EXPECT_EQ(t.expand(), (std::vector<double>{-1.0, 0.5, 0.5, 0.5}));
}

TEST(FromFunction, CompressesEnumeratedValues) {
    const auto t = from_function([](std::uint64_t z) { return hamming_weight(z); }, 5);
    ASSERT_EQ(t.distinct_count(), 6u);
    for (int w = 0; w <= 5; ++w) EXPECT_EQ(t.level(w).multiplicity, binomial(5, w));
}

TEST(FromFunction, RejectsTooManyQubits) {
    EXPECT_THROW(from_function([](std::uint64_t) { return 0.0; }, kMaxEnumerationQubits + 1), CapacityError);
}

TEST(NormalizeShift, MovesMinimumToZeroAndReportsOffset) {
    const SpectrumTable t(1, {{-2.5, 1}, {1.0, 1}});
    const auto [shifted, offset] = normalize_shift(t);
    EXPECT_TRUE(shifted.is_normalized());
    EXPECT_DOUBLE_EQ(offset, -2.5);
    EXPECT_DOUBLE_EQ(shifted.level(1).value, 3.5);
}

TEST(Binomial, ExactAtTheTableLimit) {
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(62, 31), 465428353255261088ull);
    EXPECT_EQ(binomial(5, 6), 0u);
}

TEST(BuildInstance, GroverHasOneMarkedState) {
    const auto t = build_instance({InstanceKind::Grover, 30});
    ASSERT_EQ(t.distinct_count(), 2u);
    EXPECT_EQ(t.level(0).multiplicity, 1u);
    EXPECT_EQ(t.level(1).multiplicity, (1ull << 30) - 1);
}

TEST(BuildInstance, TwoLevelValidatesParameters) {
    InstanceSpec spec{InstanceKind::TwoLevel, 3};
    spec.level = 2.0;
    spec.ground_count = 3;
    const auto t = build_instance(spec);
    EXPECT_EQ(t.level(0).multiplicity, 3u);
    EXPECT_DOUBLE_EQ(t.level(1).value, 2.0);
    spec.ground_count = 8;
    EXPECT_THROW(build_instance(spec), ValidationError);
    spec.ground_count = 1;
    spec.level = 0.0;
    EXPECT_THROW(build_instance(spec), ValidationError);
}

TEST(BuildInstance, HammingWeightMultiplicitiesAreBinomial) {
    const auto t = build_instance({InstanceKind::HammingWeight, 40});
    ASSERT_EQ(t.distinct_count(), 41u);
    EXPECT_EQ(t.level(20).multiplicity, binomial(40, 20));
}

TEST(BuildInstance, RandomIsDeterministicPerSeed) {
    InstanceSpec spec{InstanceKind::RandomPolyBounded, 6};
    spec.seed = 7;
    EXPECT_EQ(build_instance(spec), build_instance(spec));
    auto other = spec;
    other.seed = 8;
    EXPECT_NE(build_instance(spec), build_instance(other));
    for (const auto& level : build_instance(spec).levels()) {
        EXPECT_GE(level.value, 0.0);
        EXPECT_LE(level.value, spec.bound);
    }
}

TEST(BuildInstance, FileRoundTripAndQubitMismatch) {
    std::mt19937_64 rng(3);
    const auto table = oracle::random_table(rng, 4, 5);
    const auto path = std::filesystem::temp_directory_path() / "qagap_objective_roundtrip.json";
    std::ofstream(path) << to_json(table).dump();
    InstanceSpec spec{InstanceKind::ExplicitFile, 0};
    spec.file = path;
    EXPECT_EQ(build_instance(spec), table);
    spec.n = 5;
    EXPECT_THROW(build_instance(spec), ValidationError);
    std::filesystem::remove(path);
}

TEST(BuildInstance, MalformedFileIsAValidationError) {
    EXPECT_THROW(table_from_json(nlohmann::json{{"n", 1}}), ValidationError);
    EXPECT_THROW(table_from_json(nlohmann::json::parse(R"({"n":1,"entries":[{"value":0,"mult":0}]})")),
                 ValidationError);
}

TEST(Fig1Instance, MatchesTheReferenceValues) {
    const auto t = fig1_instance();
    ASSERT_EQ(t.distinct_count(), 16u);
    EXPECT_DOUBLE_EQ(t.level(0).value, 0.0);
    EXPECT_DOUBLE_EQ(t.level(1).value, 3.0);
    EXPECT_DOUBLE_EQ(t.level(15).value, 10.0);
}

TEST(InstanceKind, ParsesAliases) {
    EXPECT_EQ(parse_instance_kind("hamming"), InstanceKind::HammingWeight);
    EXPECT_EQ(parse_instance_kind("random"), InstanceKind::RandomPolyBounded);
    EXPECT_EQ(parse_instance_kind("file"), InstanceKind::ExplicitFile);
    EXPECT_THROW(parse_instance_kind("sat"), ValidationError);
}

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qagap/errors.hpp"
#include "qagap/walsh_hadamard.hpp"

using namespace qagap;

TEST(WalshHadamard, MatchesExplicitMatrix) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int n = 0; n <= 6; ++n) {
        const auto dim = std::size_t{1} << n;
        Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
        for (auto& x : v) x = gauss(rng);
        const Eigen::VectorXd expected = oracle::hadamard(n) * v;
        walsh_hadamard(std::span<double>(v.data(), dim));
        EXPECT_LT((v - expected).cwiseAbs().maxCoeff(), 1e-13) << "n=" << n;
    }
}

TEST(WalshHadamard, IsAnInvolutionOnComplexVectors) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(64);
    for (auto& x : v) x = {gauss(rng), gauss(rng)};
    const Eigen::VectorXcd original = v;
    std::span<std::complex<double>> span(v.data(), 64);
    walsh_hadamard(span);
    EXPECT_NEAR(v.norm(), original.norm(), 1e-12);
    walsh_hadamard(span);
    EXPECT_LT((v - original).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(WalshHadamard, RejectsNonPowerOfTwoLength) {
    std::vector<double> v(6, 1.0);
    EXPECT_THROW(walsh_hadamard(std::span<double>(v)), DimensionError);
}

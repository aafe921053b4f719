#include <gtest/gtest.h>

#include <cmath>

#include "effidx/fractal.hpp"
#include "effidx/synthgen.hpp"
#include "oracles.hpp"

using namespace effidx;
using effidx::testing::mc_mean;

namespace {

constexpr std::size_t kN = 4096;

std::vector<double> line(std::size_t points, std::size_t increments) {
    std::vector<double> x(points);
    for (std::size_t i = 0; i < points; ++i) x[i] = static_cast<double>(i) / static_cast<double>(increments);
    return x;
}

std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    synth::Rng rng(seed);
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) x[i] = x[i - 1] + rng.gaussian();
    return x;
}

}  // namespace

TEST(HallWood, StraightLineHasDimensionOne) {
    // n = 1024 increments on 1025 points; A(l/n) = l/n at both scales.
    const auto x = line(1025, 1024);
    EXPECT_NEAR(hall_wood_deviation(x, 1), 1.0 / 1024.0, 1e-15);
    EXPECT_NEAR(hall_wood_deviation(x, 2), 2.0 / 1024.0, 1e-15);
    const auto e = hall_wood(x);
    EXPECT_NEAR(e.raw, 1.0, 1e-12);
    EXPECT_TRUE(e.clamped);
    EXPECT_DOUBLE_EQ(e.value, kFractalFloor);
    EXPECT_EQ(e.method, FractalMethod::HallWood);
}

TEST(Genton, StraightLineHasDimensionOne) {
    const std::size_t n = 512;
    const auto x = line(n, n);
    const double h = 1.0 / static_cast<double>(n);
    EXPECT_NEAR(variogram(x, 1), h * h / 2.0, 1e-18);
    EXPECT_NEAR(variogram(x, 2), 4.0 * h * h / 2.0, 1e-18);
    const auto e = genton(x);
    EXPECT_NEAR(e.raw, 1.0, 1e-12);
    EXPECT_TRUE(e.clamped);
    EXPECT_DOUBLE_EQ(e.value, kFractalFloor);
}

TEST(Fractal, ConstantPathIsDegenerate) {
    const std::vector<double> x(100, 2.0);
    for (auto f : {+[](std::span<const double> s) { return hall_wood(s); },
                   +[](std::span<const double> s) { return genton(s); }}) {
        try {
            f(x);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DegeneratePath);
        }
    }
}

TEST(Fractal, TooShortAndWrongKind) {
    const auto x = random_walk(63, 1);
    EXPECT_THROW(hall_wood(x), Error);
    EXPECT_THROW(genton(x), Error);
    LogSeries returns{"X", random_walk(100, 2), SeriesKind::LogReturn};
    try {
        genton(returns);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WrongKind);
    }
}

TEST(Fractal, AlternatingPathIsCappedAtTwo) {
    std::vector<double> x(200);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2) ? 1.0 : 0.0;
    // Lag-2 increments vanish while lag-1 do not.
    EXPECT_THROW(hall_wood(x), Error);
    std::vector<double> y(200);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = ((i % 2) ? 1.0 : 0.0) + 1e-3 * static_cast<double>(i);
    const auto e = genton(y);
    EXPECT_GT(e.raw, 2.0);
    EXPECT_TRUE(e.clamped);
    EXPECT_DOUBLE_EQ(e.value, 2.0);
}

TEST(HallWood, BrownianMonteCarlo) {
    const double mean = mc_mean(200, [](std::uint64_t s) { return hall_wood(random_walk(kN, s)).value; });
    EXPECT_GE(mean, 1.45);
    EXPECT_LE(mean, 1.55);
}

TEST(HallWood, PersistentFbmMonteCarlo) {
    const double mean = mc_mean(200, [](std::uint64_t s) { return hall_wood(synth::fbm(0.8, kN, s)).value; });
    EXPECT_GE(mean, 1.15);
    EXPECT_LE(mean, 1.25);
}

TEST(Genton, BrownianMonteCarlo) {
    const double mean = mc_mean(200, [](std::uint64_t s) { return genton(random_walk(kN, s)).value; });
    EXPECT_GE(mean, 1.46);
    EXPECT_LE(mean, 1.54);
}

TEST(Genton, AntiPersistentFbmMonteCarlo) {
    const double mean = mc_mean(200, [](std::uint64_t s) { return genton(synth::fbm(0.3, kN, s)).value; });
    EXPECT_GE(mean, 1.63);
    EXPECT_LE(mean, 1.77);
}

TEST(Fractal, SelfSimilarLawAcrossHurstGrid) {
    for (double h : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) {
        const double hw = mc_mean(200, [h](std::uint64_t s) { return hall_wood(synth::fbm(h, kN, s)).value; });
        const double g = mc_mean(200, [h](std::uint64_t s) { return genton(synth::fbm(h, kN, s)).value; });
        EXPECT_LE(std::abs(hw - (2.0 - h)), 0.07) << "hall-wood h=" << h << " mean=" << hw;
        EXPECT_LE(std::abs(g - (2.0 - h)), 0.07) << "genton h=" << h << " mean=" << g;
    }
}

TEST(Fractal, AffineInvariance) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto x = synth::fbm(0.4 + 0.1 * seed, 1001, seed).values;
        const double hw0 = hall_wood(x).raw;
        const double g0 = genton(x).raw;
        for (auto [a, b] : {std::pair{2.0, 0.0}, {-3.5, 10.0}, {1e-4, -7.0}, {250.0, 1e3}}) {
            std::vector<double> y(x);
            for (auto& v : y) v = a * v + b;
            EXPECT_NEAR(hall_wood(y).raw, hw0, 1e-9);
            EXPECT_NEAR(genton(y).raw, g0, 1e-9);
        }
    }
}

TEST(Fractal, TimeReversal) {
    for (std::uint64_t seed : {4u, 5u}) {
        // 2049 points = 2048 increments, an even count.
        const auto x = synth::fbm(0.6, 2049, seed).values;
        const std::vector<double> rev(x.rbegin(), x.rend());
        EXPECT_NEAR(genton(rev).raw, genton(x).raw, 1e-9);
        EXPECT_NEAR(hall_wood(rev).raw, hall_wood(x).raw, 1e-9);

        const auto odd = synth::fbm(0.6, 2048, seed).values;
        const std::vector<double> rev_odd(odd.rbegin(), odd.rend());
        EXPECT_NEAR(genton(rev_odd).raw, genton(odd).raw, 1e-9);
    }
}

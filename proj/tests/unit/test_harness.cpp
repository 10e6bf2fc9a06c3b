#include <gtest/gtest.h>

#include <cmath>

#include "cobra/generators.hpp"
#include "cobra/harness.hpp"
#include "cobra/oracle.hpp"

using namespace cobra;

TEST(Summarize, MomentsQuantilesTimeouts) {
    const std::vector<Rounds> s{1, 2, 3, 4, std::nullopt};
    const auto st = summarize(s, 10);
    EXPECT_EQ(st.trials, 5u);
    EXPECT_EQ(st.timeouts, 1u);
    EXPECT_EQ(st.cap, 10u);
    EXPECT_DOUBLE_EQ(st.mean, 2.5);
    EXPECT_NEAR(st.stddev, std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_NEAR(st.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(st.p50, 2.0);
    EXPECT_EQ(st.p90, 4.0);
    EXPECT_EQ(st.max, 4.0);
}

TEST(Summarize, AllTimedOut) {
    const std::vector<Rounds> s{std::nullopt, std::nullopt};
    try {
        summarize(s, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AllTimedOut);
    }
}

TEST(RunTrials, IdenticalForAnyWorkerCount) {
    const auto g = gen::grid(2, 6);
    auto trial = [&](Rng& rng, std::size_t) { return run_cobra_cover(g, CobraConfig{2, 0, 0}, 100000, rng); };
    const auto a = run_trials(TrialOptions{3000, 5, 100000, 1}, trial);
    const auto b = run_trials(TrialOptions{3000, 5, 100000, 3}, trial);
    const auto c = run_trials(TrialOptions{3000, 5, 100000, 8}, trial);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_NE(a, run_trials(TrialOptions{3000, 6, 100000, 1}, trial));
}

TEST(RunTrials, WorkerExceptionPropagates) {
    auto trial = [](Rng&, std::size_t i) -> Rounds {
        if (i == 77) fail(ErrorKind::InvalidParams, "boom");
        return 1;
    };
    EXPECT_THROW(run_trials(TrialOptions{200, 1, 10, 4}, trial), Error);
}

TEST(Hmax, TwoVertices) {
    HmaxOptions o;
    o.trials = 100;
    const auto e = estimate_hmax(gen::path(2), o);
    EXPECT_DOUBLE_EQ(e.hmax, 1.0);
    EXPECT_DOUBLE_EQ(e.cover_mean, 1.0);
    const auto m = matthews_check(gen::path(2), o);
    EXPECT_NEAR(m.ratio, 1.0 / std::log(2.0), 1e-12);
}

TEST(Hmax, PathArgmaxAtEnds) {
    const auto g = gen::path(8);
    HmaxOptions o;
    o.trials = 2000;
    o.seed = 3;
    const auto e = estimate_hmax(g, o);
    EXPECT_TRUE((e.u == 0 && e.v == 7) || (e.u == 7 && e.v == 0)) << e.u << " " << e.v;
    // oracle agrees that an end-to-end pair is worst
    double best = 0;
    Vertex bu = 0, bv = 0;
    for (Vertex u = 0; u < 8; ++u)
        for (Vertex v = 0; v < 8; ++v) {
            const double h = exact_cobra_hitting(g, u, v, 2);
            if (h > best) best = h, bu = u, bv = v;
        }
    EXPECT_EQ(std::min(bu, bv), 0u);
    EXPECT_EQ(std::max(bu, bv), 7u);
    EXPECT_NEAR(e.hmax, best, 4 * e.pair(e.u, e.v, 8).std_error);
}

TEST(Hmax, CycleArgmaxNearlyAntipodal) {
    const auto g = gen::cycle(8);
    HmaxOptions o;
    o.trials = 2000;
    o.seed = 4;
    const auto e = estimate_hmax(g, o);
    const double antipodal = exact_cobra_hitting(g, 0, 4, 2);
    for (Vertex d = 1; d < 4; ++d) EXPECT_LT(exact_cobra_hitting(g, 0, d, 2), antipodal);
    // the chosen pair is worst up to sampling noise
    EXPECT_NEAR(exact_cobra_hitting(g, e.u, e.v, 2), antipodal, 4 * e.pair(e.u, e.v, 8).std_error);
}

TEST(Hmax, ExplicitSourcesAndSampling) {
    HmaxOptions o;
    o.trials = 20;
    o.sources = {3};
    const auto e = estimate_hmax(gen::petersen(), o);
    EXPECT_EQ(e.sources.size(), 1u);
    EXPECT_EQ(e.u, 3u);
    HmaxOptions big;
    big.trials = 2;
    EXPECT_EQ(estimate_hmax(gen::cycle(100), big).sources.size(), kAllPairsLimit);
}

TEST(Fit, PowerLaw) {
    std::vector<ScalingPoint> pts;
    for (double x : {2.0, 4.0, 8.0, 16.0, 32.0}) pts.push_back({x, 7 * std::pow(x, 1.5)});
    const auto f = fit_scaling(pts, FitTransform::LogLog);
    EXPECT_NEAR(f.slope, 1.5, 1e-9);
    EXPECT_NEAR(f.intercept, std::log(7.0), 1e-9);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(Fit, ConstantSeries) {
    const auto f = fit_scaling({{1, 3}, {2, 3}, {3, 3}, {4, 3}}, FitTransform::LogLog);
    EXPECT_NEAR(f.slope, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}

TEST(Fit, OtherTransforms) {
    std::vector<ScalingPoint> a, b;
    for (double n : {16.0, 64.0, 256.0, 1024.0}) {
        a.push_back({n, 2 + 0.5 * std::log(n) * std::log(n)});
        b.push_back({n, 4 * n * std::log(n)});
    }
    EXPECT_NEAR(fit_scaling(a, FitTransform::ValueVsLogSquared).slope, 0.5, 1e-9);
    EXPECT_NEAR(fit_scaling(b, FitTransform::ValueVsNLogN).slope, 4.0, 1e-9);
}

TEST(Fit, Errors) {
    try {
        fit_scaling({{1, 1}, {2, 2}, {3, 3}}, FitTransform::LogLog);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientPoints);
    }
    EXPECT_THROW(fit_scaling({{1, 1}, {2, -2}, {3, 3}, {4, 4}}, FitTransform::LogLog), Error);
}

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "wavemap/analysis.hpp"

using namespace wavemap;

namespace {

RunRecord record_with_origin(std::initializer_list<double> origin_w, RunStatus status = RunStatus::Completed) {
    RunRecord rec;
    double t = 0.0;
    for (double w : origin_w) {
        MonitorPoint m;
        m.t = t;
        m.origin_w = w;
        m.min_w = w;
        rec.monitor.push_back(m);
        t += 0.1;
    }
    rec.status = status;
    return rec;
}

std::vector<std::pair<double, double>> synthetic_series(double T, double b, double t0, double t1, int count,
                                                        double scale = 1.0) {
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < count; ++i) {
        const double t = t0 + (t1 - t0) * i / (count - 1);
        out.emplace_back(t, scale * scaling_model(t, T, b));
    }
    return out;
}

// threshold classifier standing in for a family of evolutions
AmplitudeClassifier threshold(double a_crit, int* calls = nullptr) {
    return [a_crit, calls](double a) {
        if (calls) ++*calls;
        return a < a_crit ? RunClass::Subcritical : RunClass::Flip;
    };
}

} // namespace

TEST_CASE("classify_run") {
    CHECK(classify_run(record_with_origin({1.0, 1.0, 1.0})) == RunClass::Subcritical);
    CHECK(classify_run(record_with_origin({1.0, 0.3, -1.0, -1.0})) == RunClass::Flip);
    CHECK(classify_run(record_with_origin({1.0, 1.0}, RunStatus::ProjectionFailed)) == RunClass::Failed);
    CHECK(classify_run(record_with_origin({1.0, 1.0}, RunStatus::NonFinite)) == RunClass::Failed);
    CHECK(classify_run(record_with_origin({1.0, 0.0})) == RunClass::Subcritical);

    SUBCASE("a regular Rattle run") {
        RunConfig cfg;
        cfg.data.amplitude = 0.4;
        cfg.grid_n = 41;
        cfg.t_end = 0.8;
        const Grid2D g = build_grid(cfg.domain, cfg.grid_n);
        CHECK(classify_run(evolve(cfg, g)) == RunClass::Subcritical);
    }
    SUBCASE("samples alone still reveal a flip") {
        RunRecord rec;
        DiagnosticsRecord d;
        d.origin_dev = 2.0;
        rec.samples.push_back(d);
        CHECK(classify_run(rec) == RunClass::Flip);
    }
}

TEST_CASE("critical_search bisection arithmetic") {
    int calls = 0;
    const CriticalSearchResult r = critical_search(threshold(0.8187, &calls), 0.7, 0.9, 1e-4);
    CHECK(r.runs == static_cast<int>(std::ceil(std::log2((0.9 - 0.7) / 1e-4))));
    CHECK(calls == r.runs + 2);
    CHECK(r.a_hi - r.a_lo <= 1e-4);
    CHECK(r.a_lo < 0.8187);
    CHECK(r.a_hi >= 0.8187);
    CHECK(r.a_star == r.a_hi);
    CHECK_FALSE(r.failed_seen);
    CHECK(r.classifications.size() == static_cast<std::size_t>(calls));
}

TEST_CASE("critical_search rejects brackets without a threshold") {
    CHECK_THROWS_AS(critical_search(threshold(0.8), 0.1, 0.2, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(critical_search(threshold(0.05), 0.1, 0.2, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(critical_search(threshold(0.15), 0.2, 0.1, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(critical_search(threshold(0.15), 0.1, 0.2, 0.0), std::invalid_argument);
}

TEST_CASE("critical_search treats failures as supercritical and flags them") {
    const AmplitudeClassifier c = [](double a) {
        if (a < 0.5) return RunClass::Subcritical;
        return a < 0.6 ? RunClass::Flip : RunClass::Failed;
    };
    const CriticalSearchResult r = critical_search(c, 0.0, 1.0, 1e-3);
    CHECK(r.failed_seen);
    CHECK(r.a_star == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("critical_search does not depend on the bracket width") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> crit(0.3, 0.7);
    for (int i = 0; i < 50; ++i) {
        const double a = crit(rng);
        const double tol = 1e-5;
        const double wide = critical_search(threshold(a), 0.0, 1.0, tol).a_star;
        const double tight = critical_search(threshold(a), a - 0.01, a + 0.02, tol).a_star;
        CHECK(std::abs(wide - tight) <= tol);
        CHECK(wide >= a);
        CHECK(wide - a <= tol);
    }
}

TEST_CASE("scaling_model") {
    // at T - t = 1 the log vanishes: s = (1.04/e) exp(-sqrt(b))
    CHECK(scaling_model(0.0, 1.0, 4.0) == doctest::Approx(1.04 / std::exp(1.0) * std::exp(-2.0)));
    CHECK(scaling_model(0.5, 1.0, 0.0) == doctest::Approx(1.04 / std::exp(1.0) * 0.5 *
                                                          std::exp(-std::sqrt(std::log(2.0)))));
}

TEST_CASE("fit_scaling recovers synthetic parameters") {
    const auto data = synthetic_series(0.9, -2.0, 0.70, 0.85, 60);
    const FitResult f = fit_scaling(data, {0.70, 0.85});
    CHECK(f.converged);
    CHECK(std::abs(f.T - 0.9) <= 1e-8);
    CHECK(std::abs(f.b + 2.0) <= 1e-8);
    CHECK(f.residual < 1e-20);
    CHECK(f.iterations > 0);

    SUBCASE("window selects the points") {
        auto padded = data;
        padded.emplace_back(0.2, 123.0);  // outside the window, must be ignored
        const FitResult g = fit_scaling(padded, {0.70, 0.85});
        CHECK(std::abs(g.T - 0.9) <= 1e-8);
    }
    SUBCASE("scaled data is a model violation but still converges") {
        const FitResult g = fit_scaling(synthetic_series(0.9, -2.0, 0.70, 0.85, 60, 1.3), {0.70, 0.85});
        CHECK(g.converged);
        CHECK(g.residual > f.residual);
        CHECK(std::isfinite(g.T));
        CHECK(g.T > 0.85);
    }
}

TEST_CASE("fit_scaling errors") {
    const auto data = synthetic_series(0.9, -2.0, 0.70, 0.85, 60);
    CHECK_THROWS_AS(fit_scaling(data, {0.70, 0.701}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling(data, {0.85, 0.70}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling(data, {0.70, 0.85}, 0.8), std::invalid_argument);
}

TEST_CASE("convergence_order") {
    CHECK(convergence_order({{0.1, 1.6e-3}, {0.05, 1e-4}}) == doctest::Approx(4.0));
    CHECK(convergence_order({{0.1, 4e-2}, {0.05, 1e-2}, {0.025, 2.5e-3}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(convergence_order({{0.1, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_order({{0.1, 1.0}, {0.05, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_order({{0.1, 1.0}, {0.05, -1.0}}), std::invalid_argument);
}

TEST_CASE("static_drift is small and shrinks with resolution") {
    RunConfig cfg;
    cfg.data.amplitude = 0.0;
    cfg.t_end = 0.2;
    cfg.grid_n = 41;
    const double coarse = static_drift(cfg, 0.4);
    cfg.grid_n = 81;
    const double fine = static_drift(cfg, 0.4);
    CHECK(coarse < 1e-3);
    CHECK(fine < coarse / 8.0);
}

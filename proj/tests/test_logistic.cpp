#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lcenclf/dataset.hpp"
#include "lcenclf/logistic.hpp"
#include "lcenclf/rng.hpp"
#include "oracles.hpp"

using namespace lcenclf;

namespace {

/// Random standardized instance with a planted linear signal.
std::pair<Eigen::MatrixXd, std::vector<int>> random_instance(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) x(i, j) = rng.next_normal();
    }
    Eigen::VectorXd w(p);
    for (int j = 0; j < p; ++j) w(j) = rng.next_uniform(-1.5, 1.5);
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
        const double z = x.row(i).dot(w) + 0.5 * rng.next_normal();
        y.push_back(z > 0.0 ? 1 : 0);
    }
    if (std::accumulate(y.begin(), y.end(), 0) == 0) y[0] = 1;
    if (std::accumulate(y.begin(), y.end(), 0) == n) y[0] = 0;
    return {standardize(x).train, y};
}

}  // namespace

TEST_CASE("dominating L1 penalty zeroes the weights, intercept = prior log-odds") {
    const auto [z, y] = random_instance(60, 4, 1);
    const auto fit = fit_logistic(z, y, {1000.0, 1.0}, FitMode::binary);
    CHECK(fit.W.cwiseAbs().maxCoeff() == 0.0);
    const double pos = std::accumulate(y.begin(), y.end(), 0.0) / 60.0;
    CHECK(fit.b(0) == doctest::Approx(std::log(pos / (1.0 - pos))).epsilon(1e-4));
    CHECK(fit.converged);
}

TEST_CASE("unpenalized fit matches the plain gradient-descent oracle") {
    Eigen::MatrixXd x(6, 1);
    x << -2.0, -1.2, -0.4, 0.3, 1.1, 2.2;
    const std::vector<int> y = {0, 0, 1, 0, 1, 1};
    const Eigen::MatrixXd z = standardize(x).train;

    FitOptions tight;
    tight.tol = 1e-10;
    const auto fit = fit_logistic(z, y, {0.0, 1.0}, FitMode::binary, tight);
    const auto oracle = oracles::gd_logistic(z, y);
    CHECK(fit.W(0, 0) == doctest::Approx(oracle.w(0)).epsilon(1e-4));
    CHECK(fit.b(0) == doctest::Approx(oracle.b).epsilon(1e-4));
}

TEST_CASE("elastic-net objective matches the fixed-step proximal oracle") {
    const auto [z, y] = random_instance(20, 3, 7);
    FitOptions tight;
    tight.tol = 1e-9;
    const auto fit = fit_logistic(z, y, {0.1, 0.5}, FitMode::binary, tight);
    const auto oracle = oracles::prox_logistic(z, y, 0.1, 0.5);
    CHECK(fit.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
    for (Eigen::Index j = 0; j < 3; ++j) {
        CHECK(fit.W(0, j) == doctest::Approx(oracle.w(j)).epsilon(1e-4));
    }
    // the stored objective is the penalized objective at the returned coefficients
    const double recomputed =
        logistic_objective(z, y, fit.W.row(0).transpose(), fit.b(0), fit.penalty);
    CHECK(fit.objective == doctest::Approx(recomputed).epsilon(1e-12));
}

TEST_CASE("ridge fit matches the dense Newton oracle") {
    for (const std::uint64_t seed : {2, 3, 4}) {
        const auto [z, y] = random_instance(40, 5, seed);
        FitOptions tight;
        tight.tol = 1e-10;
        const auto fit = fit_logistic(z, y, {0.05, 0.0}, FitMode::binary, tight);
        const auto oracle = oracles::newton_ridge(z, y, 0.05);
        CHECK(fit.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
        for (Eigen::Index j = 0; j < 5; ++j) {
            CHECK(fit.W(0, j) == doctest::Approx(oracle.w(j)).epsilon(1e-5));
        }
        CHECK(fit.b(0) == doctest::Approx(oracle.b).epsilon(1e-5));
    }
}

TEST_CASE("single-feature zero/nonzero status follows the subgradient condition") {
    // At w = 0 with intercept fixed by the class balance, the L1 solution is
    // zero iff |gradient of the data term at 0| <= alpha (l1_ratio = 1).
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd x(30, 1);
        std::vector<int> y;
        for (int i = 0; i < 30; ++i) {
            x(i, 0) = rng.next_normal();
            y.push_back(i % 2);
        }
        // plant signal strength varying by trial
        const double strength = 0.1 * trial;
        for (int i = 0; i < 30; ++i) x(i, 0) += strength * (y[static_cast<std::size_t>(i)] ? 1.0 : -1.0);
        const Eigen::MatrixXd z = standardize(x).train;

        const double alpha = 0.05;
        FitOptions tight;
        tight.tol = 1e-10;
        const auto fit = fit_logistic(z, y, {alpha, 1.0}, FitMode::binary, tight);

        // gradient of the mean NLL wrt w at (w=0, b=logit(pos rate)): with a
        // standardized column and balanced labels b = 0
        double grad0 = 0.0;
        for (int i = 0; i < 30; ++i) grad0 += (0.5 - y[static_cast<std::size_t>(i)]) * z(i, 0);
        grad0 /= 30.0;
        if (std::abs(std::abs(grad0) - alpha) < 1e-3) continue;  // too close to call
        CHECK((fit.W(0, 0) == 0.0) == (std::abs(grad0) <= alpha));
    }
}

TEST_CASE("regularization path: active set shrinks as alpha grows") {
    for (const std::uint64_t seed : {11, 12, 13}) {
        const auto [z, y] = random_instance(50, 8, seed);
        int previous = 9;
        for (const double alpha : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
            const auto fit = fit_logistic(z, y, {alpha, 1.0}, FitMode::binary);
            int nnz = 0;
            for (Eigen::Index j = 0; j < 8; ++j) nnz += fit.W(0, j) != 0.0 ? 1 : 0;
            CHECK(nnz <= previous);
            previous = nnz;
        }
    }
}

TEST_CASE("row order does not change the solution") {
    const auto [z, y] = random_instance(35, 4, 21);
    FitOptions tight;
    tight.tol = 1e-11;
    const auto fit = fit_logistic(z, y, {0.02, 0.7}, FitMode::binary, tight);

    Rng rng(5);
    const auto perm = rng.permutation(35);
    Eigen::MatrixXd z2(35, 4);
    std::vector<int> y2(35);
    for (int i = 0; i < 35; ++i) {
        z2.row(i) = z.row(perm[static_cast<std::size_t>(i)]);
        y2[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    const auto fit2 = fit_logistic(z2, y2, {0.02, 0.7}, FitMode::binary, tight);
    CHECK((fit.W - fit2.W).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(fit.b(0) - fit2.b(0)) < 1e-8);
}

TEST_CASE("monitored objective never increases") {
    const auto [z, y] = random_instance(40, 6, 31);
    std::vector<double> trace;
    FitOptions options;
    options.objective_trace = &trace;
    fit_logistic(z, y, {0.01, 0.9}, FitMode::binary, options);
    REQUIRE(trace.size() > 2);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        CHECK(trace[i] <= trace[i - 1] + 1e-12);
    }
}

TEST_CASE("predict_proba") {
    SUBCASE("zero model gives even odds") {
        LogisticFit fit;
        fit.W = Eigen::MatrixXd::Zero(1, 2);
        fit.b = Eigen::VectorXd::Zero(1);
        fit.mode = FitMode::binary;
        fit.n_classes = 2;
        Eigen::MatrixXd z(3, 2);
        z << 1, 2, -1, 0.5, 4, -4;
        const auto probs = predict_proba(fit, z);
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(probs(i, 0) == doctest::Approx(0.5));
            CHECK(probs(i, 1) == doctest::Approx(0.5));
        }
    }
    SUBCASE("rows sum to one, binary and one-vs-rest") {
        const auto [z, y2] = random_instance(30, 3, 41);
        std::vector<int> y3(y2);
        for (std::size_t i = 0; i < 10; ++i) y3[i] = 2;
        const auto fit2 = fit_logistic(z, y2, {0.01, 0.5}, FitMode::binary);
        const auto fit3 = fit_logistic(z, y3, {0.01, 0.5}, FitMode::one_vs_rest);
        for (const auto& fit : {fit2, fit3}) {
            const auto probs = predict_proba(fit, z);
            for (Eigen::Index i = 0; i < probs.rows(); ++i) {
                CHECK(probs.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(probs.row(i).minCoeff() >= 0.0);
            }
        }
    }
    SUBCASE("probability is monotone in the strongest positive feature") {
        const auto [z, y] = random_instance(40, 3, 51);
        const auto fit = fit_logistic(z, y, {0.001, 0.5}, FitMode::binary);
        Eigen::Index best = 0;
        fit.W.row(0).maxCoeff(&best);
        if (fit.W(0, best) > 0.0) {
            Eigen::MatrixXd probe = Eigen::MatrixXd::Zero(2, 3);
            probe(1, best) = 1.0;
            const auto probs = predict_proba(fit, probe);
            CHECK(probs(1, 1) > probs(0, 1));
        }
    }
    SUBCASE("dimension mismatch") {
        const auto [z, y] = random_instance(10, 3, 61);
        const auto fit = fit_logistic(z, y, {0.1, 1.0}, FitMode::binary);
        CHECK_THROWS(predict_proba(fit, Eigen::MatrixXd::Zero(2, 5)));
    }
}

TEST_CASE("input validation") {
    Eigen::MatrixXd z(4, 2);
    z << 1, 2, 3, 4, 5, 6, 7, 8;
    CHECK_THROWS(fit_logistic(z, {0, 0, 0, 0}, {0.1, 1.0}, FitMode::binary));
    CHECK_THROWS(fit_logistic(z, {0, 1, 0}, {0.1, 1.0}, FitMode::binary));
    Eigen::MatrixXd bad = z;
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(fit_logistic(bad, {0, 1, 0, 1}, {0.1, 1.0}, FitMode::binary));
    CHECK_THROWS(fit_logistic(z, {0, 1, 0, 1}, {-0.1, 1.0}, FitMode::binary));
    CHECK_THROWS(fit_logistic(z, {0, 1, 0, 1}, {0.1, 1.5}, FitMode::binary));
}

TEST_CASE("one-vs-rest trains one row per class") {
    const auto [z, y2] = random_instance(45, 4, 71);
    std::vector<int> y(y2);
    for (std::size_t i = 0; i < 15; ++i) y[i] = 2;
    const auto fit = fit_logistic(z, y, {0.01, 1.0}, FitMode::one_vs_rest);
    CHECK(fit.W.rows() == 3);
    CHECK(fit.n_classes == 3);
    // each row solves the class-vs-rest problem: spot-check one against the oracle
    std::vector<int> y_binary;
    for (const int label : y) y_binary.push_back(label == 2 ? 1 : 0);
    const auto oracle = oracles::prox_logistic(z, y_binary, 0.01, 1.0);
    for (Eigen::Index j = 0; j < 4; ++j) {
        CHECK(fit.W(2, j) == doctest::Approx(oracle.w(j)).epsilon(2e-4));
    }
}

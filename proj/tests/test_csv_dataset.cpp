#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lcenclf/csv.hpp"
#include "lcenclf/dataset.hpp"
#include "lcenclf/logistic.hpp"
#include "lcenclf/rng.hpp"

using namespace lcenclf;

namespace {
const std::string kFixtures = LCENCLF_FIXTURE_DIR;

Dataset toy_dataset(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds;
    ds.name = "toy";
    ds.X.resize(n, 3);
    for (int i = 0; i < n; ++i) {
        ds.y.push_back(i % k);
        for (int j = 0; j < 3; ++j) ds.X(i, j) = rng.next_normal();
    }
    ds.X.col(0).array() += 5.0;  // keep columns distinct
    ds.feature_names = {"a", "b", "c"};
    for (int c = 0; c < k; ++c) ds.class_names.push_back("k" + std::to_string(c));
    return ds;
}

}  // namespace

TEST_CASE("delimited parser handles quotes and semicolons") {
    const Table t = parse_delimited("\"a\";\"b\"\r\n1;\"x;y\"\n2;\"he said \"\"hi\"\"\"\n", ';', true);
    REQUIRE(t.header.size() == 2);
    CHECK(t.header[0] == "a");
    CHECK(t.rows[0][1] == "x;y");
    CHECK(t.rows[1][1] == "he said \"hi\"");
    CHECK_THROWS(parse_delimited("a,b\n1,2\n1,2,3\n", ',', true));
}

TEST_CASE("one-hot encoding") {
    std::vector<std::string> levels;
    const Eigen::MatrixXd m = one_hot_encode({"a", "b", "a"}, &levels);
    CHECK(levels == std::vector<std::string>{"a", "b"});
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 0.0);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(2, 0) == 1.0);

    const Eigen::MatrixXd m3 = one_hot_encode({"x", "y", "z", "y", "x"});
    REQUIRE(m3.cols() == 3);
    for (Eigen::Index i = 0; i < m3.rows(); ++i) {
        CHECK(m3.row(i).sum() == doctest::Approx(1.0));
    }
    CHECK_THROWS(one_hot_encode({"same", "same", "same"}));
}

TEST_CASE("heart failure loader") {
    const Dataset ds = load_dataset("heart_failure", kFixtures + "/heart_fixture.csv");
    CHECK(ds.n_samples() == 6);
    CHECK(ds.n_features() == 11);  // time dropped
    CHECK(std::find(ds.feature_names.begin(), ds.feature_names.end(), "time") ==
          ds.feature_names.end());
    CHECK(ds.n_classes() == 2);
    CHECK(ds.y == std::vector<int>{1, 1, 0, 1, 0, 0});
    CHECK(ds.X(0, 0) == 75.0);

    // loaders are pure
    const Dataset again = load_dataset("heart_failure", kFixtures + "/heart_fixture.csv");
    CHECK(again.X == ds.X);
    CHECK(again.y == ds.y);

    CHECK_THROWS(load_dataset("no_such_dataset", kFixtures + "/heart_fixture.csv"));
    CHECK_THROWS_WITH_AS(load_dataset("heart_failure", kFixtures + "/wine_fixture.csv"),
                         doctest::Contains("age"), std::runtime_error);
}

TEST_CASE("bank marketing loader encodes to the documented design") {
    const Dataset ds = load_dataset("bank_marketing", kFixtures + "/bank_fixture.csv");
    CHECK(ds.n_samples() == 10);
    // fixture levels: job 4, marital 3, default 2, housing 2, loan 2, month 5,
    // day_of_week 5, poutcome 3 -> 26 one-hot columns, plus 9 numeric,
    // education rank, and the contact indicator
    CHECK(ds.n_features() == 9 + 1 + 1 + 26);
    for (const auto& name : ds.feature_names) {
        CHECK(name != "duration");
    }
    const auto edu = std::find(ds.feature_names.begin(), ds.feature_names.end(),
                               "education_rank");
    REQUIRE(edu != ds.feature_names.end());
    const auto edu_col = static_cast<Eigen::Index>(edu - ds.feature_names.begin());
    CHECK(ds.X(0, edu_col) == 2.0);   // basic.4y
    CHECK(ds.X(7, edu_col) == 0.0);   // unknown
    CHECK(ds.X(4, edu_col) == 7.0);   // university.degree
    CHECK(ds.y == std::vector<int>{0, 0, 0, 1, 0, 1, 0, 1, 0, 1});

    // one-hot block rows sum to 1 (job columns)
    double job_sum = 0.0;
    for (std::size_t j = 0; j < ds.feature_names.size(); ++j) {
        if (ds.feature_names[j].rfind("job=", 0) == 0) job_sum += ds.X(0, static_cast<Eigen::Index>(j));
    }
    CHECK(job_sum == doctest::Approx(1.0));
}

TEST_CASE("wine quality loader removes grade-3 rows and remaps labels") {
    const Dataset ds = load_dataset("wine_quality_red", kFixtures + "/wine_fixture.csv");
    CHECK(ds.n_samples() == 6);  // two grade-3 fixtures rows removed
    CHECK(ds.n_features() == 11);
    CHECK(ds.n_classes() == 5);
    CHECK(ds.y == std::vector<int>{1, 1, 2, 0, 3, 4});
    bool noted = false;
    for (const auto& note : ds.provenance) {
        if (note.find("removed 2 grade-3 rows") != std::string::npos) noted = true;
    }
    CHECK(noted);
}

TEST_CASE("glass loader groups subtypes into three classes") {
    const Dataset ds = load_dataset("glass", kFixtures + "/glass_fixture.data");
    CHECK(ds.n_samples() == 10);
    CHECK(ds.n_features() == 9);  // Id dropped
    CHECK(ds.feature_names[0] == "RI");
    CHECK(ds.n_classes() == 3);
    // types 1,2,2,3,5,6,7,7,1 -> float {1,3}, non_float {2}, non_window {5,6,7}
    CHECK(ds.y == std::vector<int>{0, 0, 1, 1, 0, 2, 2, 2, 2, 0});
}

TEST_CASE("split: determinism, round trip, policies") {
    Dataset ds = toy_dataset(40, 2, 5);
    for (int i = 0; i < 40; ++i) ds.X(i, 2) = i;  // row id in the last column

    SUBCASE("random fraction is deterministic and partitions") {
        SplitPolicy policy{SplitKind::random_fraction, 0.2, 0, 9};
        const auto [train1, test1] = split(ds, policy);
        const auto [train2, test2] = split(ds, policy);
        CHECK(train1.X == train2.X);
        CHECK(test1.y == test2.y);
        CHECK(train1.n_samples() + test1.n_samples() == 40);
        CHECK(test1.n_samples() == 8);

        std::set<int> ids;
        for (int i = 0; i < train1.n_samples(); ++i) ids.insert(static_cast<int>(train1.X(i, 2)));
        for (int i = 0; i < test1.n_samples(); ++i) ids.insert(static_cast<int>(test1.X(i, 2)));
        CHECK(ids.size() == 40);  // split then concatenate recovers every row
        CHECK(*ids.begin() == 0);
        CHECK(*ids.rbegin() == 39);
    }
    SUBCASE("last_n_rows preserves order") {
        SplitPolicy policy{SplitKind::last_n_rows, 0.0, 7, 0};
        const auto [train, test] = split(ds, policy);
        CHECK(test.n_samples() == 7);
        for (int i = 0; i < 7; ++i) CHECK(test.X(i, 2) == 33 + i);
        CHECK(train.X(32, 2) == 32.0);
    }
    SUBCASE("stratified keeps class proportions within one sample") {
        Dataset ds3 = toy_dataset(60, 3, 6);
        SplitPolicy policy{SplitKind::stratified_fraction, 0.2, 0, 1};
        const auto [train, test] = split(ds3, policy);
        std::vector<int> counts(3, 0);
        for (const int label : test.y) ++counts[static_cast<std::size_t>(label)];
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(counts[static_cast<std::size_t>(c)] -
                           std::lround(0.2 * 20.0)) <= 1);
        }
    }
    SUBCASE("stratified rejects singleton classes") {
        Dataset tiny = toy_dataset(5, 2, 3);
        tiny.y = {0, 0, 0, 0, 1};
        SplitPolicy policy{SplitKind::stratified_fraction, 0.2, 0, 1};
        CHECK_THROWS(split(tiny, policy));
    }
    SUBCASE("invalid fractions rejected") {
        CHECK_THROWS(split(ds, SplitPolicy{SplitKind::random_fraction, 0.0, 0, 1}));
        CHECK_THROWS(split(ds, SplitPolicy{SplitKind::last_n_rows, 0.0, 40, 1}));
    }
}

TEST_CASE("kfold") {
    const auto folds = kfold(10, 5, 3);
    REQUIRE(folds.size() == 5);
    std::set<int> seen;
    for (const auto& [train, val] : folds) {
        CHECK(val.size() == 2);
        CHECK(train.size() == 8);
        for (const int i : val) {
            CHECK(!seen.count(i));  // disjoint validation sets
            seen.insert(i);
        }
    }
    CHECK(seen.size() == 10);  // exhaustive

    const auto uneven = kfold(7, 5, 3);
    std::vector<std::size_t> sizes;
    for (const auto& [train, val] : uneven) sizes.push_back(val.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 1, 2, 2});

    const auto again = kfold(10, 5, 3);
    CHECK(again == folds);  // deterministic per seed
    CHECK(kfold(10, 5, 4) != folds);
    CHECK_THROWS(kfold(3, 5, 0));
    CHECK_THROWS(kfold(10, 1, 0));
}

TEST_CASE("standardize") {
    Eigen::MatrixXd two(2, 1);
    two << 1.0, 3.0;
    const auto st = standardize(two);
    // sample std (divisor N-1): sd = sqrt(2), so the points land at -+1/sqrt(2)
    CHECK(st.train(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(st.train(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(st.mean(0) == doctest::Approx(2.0));
    CHECK(st.stddev(0) == doctest::Approx(std::sqrt(2.0)));

    Rng rng(4);
    Eigen::MatrixXd x(50, 3);
    for (Eigen::Index i = 0; i < 50; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = 3.0 * rng.next_normal() + j;
    }
    const auto big = standardize(x);
    for (Eigen::Index j = 0; j < 3; ++j) {
        CHECK(std::abs(big.train.col(j).mean()) < 1e-10);
        const double sd = std::sqrt(big.train.col(j).squaredNorm() / 49.0);
        CHECK(std::abs(sd - 1.0) < 1e-10);
    }

    // already-standardized data is a fixed point
    const auto twice = standardize(big.train);
    CHECK((twice.train - big.train).cwiseAbs().maxCoeff() < 1e-10);

    // a probe row equal to the train means scales to zeros
    Eigen::MatrixXd probe(1, 3);
    probe << x.col(0).mean(), x.col(1).mean(), x.col(2).mean();
    const auto with_probe = standardize(x, probe);
    CHECK(with_probe.other.cwiseAbs().maxCoeff() < 1e-10);

    Eigen::MatrixXd constant(4, 2);
    constant << 1, 5, 1, 6, 1, 7, 1, 8;
    CHECK_THROWS_WITH_AS(standardize(constant), doctest::Contains("column 0"),
                         std::runtime_error);
}

TEST_CASE("synthetic generator") {
    SUBCASE("class counts follow the fractions") {
        const Dataset ds = make_synthetic(750, 300, 200, {0.4, 0.3, 0.3}, 1);
        std::vector<long> counts(3, 0);
        for (const int label : ds.y) ++counts[static_cast<std::size_t>(label)];
        CHECK(counts == std::vector<long>{300, 225, 225});

        const Dataset ds4 = make_synthetic(750, 300, 200, {0.4, 0.4, 0.1, 0.1}, 1);
        std::vector<long> counts4(4, 0);
        for (const int label : ds4.y) ++counts4[static_cast<std::size_t>(label)];
        CHECK(counts4 == std::vector<long>{300, 300, 75, 75});
    }
    SUBCASE("informative column ground truth is recorded") {
        const Dataset ds = make_synthetic(200, 50, 30, {0.5, 0.5}, 2);
        const auto informative = synthetic_informative_columns(ds);
        CHECK(informative.size() == 30);
        for (const int col : informative) {
            CHECK(col >= 0);
            CHECK(col < 50);
        }
    }
    SUBCASE("noise columns are uncorrelated with labels") {
        const Dataset ds = make_synthetic(750, 300, 200, {0.4, 0.3, 0.3}, 3);
        const auto informative = synthetic_informative_columns(ds);
        std::set<int> inf_set(informative.begin(), informative.end());
        Eigen::VectorXd y(ds.n_samples());
        for (Eigen::Index i = 0; i < ds.n_samples(); ++i) y(i) = ds.y[static_cast<std::size_t>(i)];
        const double ym = y.mean();
        const double ysd = std::sqrt((y.array() - ym).square().sum());
        double max_r = 0.0;
        for (int j = 0; j < 300; ++j) {
            if (inf_set.count(j)) continue;
            const auto col = ds.X.col(j);
            const double cm = col.mean();
            const double csd = std::sqrt((col.array() - cm).square().sum());
            const double r = ((col.array() - cm) * (y.array() - ym)).sum() / (csd * ysd);
            max_r = std::max(max_r, std::abs(r));
        }
        CHECK(max_r < 0.2);
    }
    SUBCASE("generator is pure and rejects bad inputs") {
        const Dataset a = make_synthetic(100, 20, 10, {0.5, 0.5}, 9);
        const Dataset b = make_synthetic(100, 20, 10, {0.5, 0.5}, 9);
        CHECK(a.X == b.X);
        CHECK(a.y == b.y);
        CHECK_THROWS(make_synthetic(100, 20, 30, {0.5, 0.5}, 0));
        CHECK_THROWS(make_synthetic(100, 20, 10, {0.5, 0.4}, 0));
        CHECK_THROWS(make_synthetic(100, 20, 10, {0.999, 0.001}, 0));
    }
    SUBCASE("shuffling noise columns leaves the informative-column fit alone") {
        const Dataset ds = make_synthetic(240, 30, 12, {0.5, 0.5}, 7);
        const auto informative = synthetic_informative_columns(ds);
        std::vector<std::string> inf_names;
        for (const int j : informative) inf_names.push_back("x" + std::to_string(j));
        const Dataset inf_only = ds.select_features(inf_names);

        Dataset shuffled = ds;
        Rng rng(100);
        const std::set<int> inf_set(informative.begin(), informative.end());
        for (int j = 0; j < 30; ++j) {
            if (inf_set.count(j)) continue;
            const auto perm = rng.permutation(240);
            const Eigen::VectorXd col = shuffled.X.col(j);
            for (int i = 0; i < 240; ++i) shuffled.X(i, j) = col(perm[static_cast<std::size_t>(i)]);
        }
        const Dataset inf_only2 = shuffled.select_features(inf_names);

        const auto st1 = standardize(inf_only.X);
        const auto st2 = standardize(inf_only2.X);
        const auto fit1 = fit_logistic(st1.train, inf_only.y, {1e-2, 0.0}, FitMode::binary);
        const auto fit2 = fit_logistic(st2.train, inf_only2.y, {1e-2, 0.0}, FitMode::binary);
        CHECK((fit1.W - fit2.W).cwiseAbs().maxCoeff() == 0.0);

        // and a noise-only model carries no signal: near-chance accuracy
        std::vector<std::string> noise_names;
        for (int j = 0; j < 30; ++j) {
            if (!inf_set.count(j)) noise_names.push_back("x" + std::to_string(j));
        }
        const Dataset noise_only = ds.select_features(noise_names);
        const auto stn = standardize(noise_only.X);
        const auto fitn = fit_logistic(stn.train, noise_only.y, {1e-1, 0.0}, FitMode::binary);
        const auto pred = predict_labels(fitn, stn.train);
        double correct = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            correct += pred[i] == noise_only.y[i] ? 1.0 : 0.0;
        }
        CHECK(correct / 240.0 < 0.72);  // majority rate is 0.5; allow training-set optimism
    }
}

TEST_CASE("dataset validation and feature selection") {
    Dataset ds = toy_dataset(10, 2, 8);
    ds.validate();

    const Dataset sub = ds.select_features({"c", "a"});
    CHECK(sub.feature_names == std::vector<std::string>{"c", "a"});
    CHECK(sub.X.col(1) == ds.X.col(0));
    CHECK_THROWS(ds.select_features({"nope"}));

    Dataset bad = ds;
    bad.y[0] = 7;
    CHECK_THROWS(bad.validate());
    Dataset missing = ds;
    for (auto& label : missing.y) label = 0;
    CHECK_THROWS(missing.validate());
}

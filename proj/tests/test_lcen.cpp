#include <doctest.h>

#include <algorithm>
#include <set>

#include "lcenclf/lcen.hpp"
#include "lcenclf/metrics.hpp"
#include "lcenclf/rng.hpp"

using namespace lcenclf;

namespace {

LogisticFit fit_with_rows(std::initializer_list<std::initializer_list<double>> rows) {
    LogisticFit fit;
    fit.W.resize(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.begin()->size()));
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (const double v : row) fit.W(r, c++) = v;
        ++r;
    }
    fit.b = Eigen::VectorXd::Zero(fit.W.rows());
    return fit;
}

LcenConfig small_config(LcenVariant variant, std::uint64_t seed = 0) {
    LcenConfig cfg;
    cfg.variant = variant;
    cfg.degree_grid = {1};
    cfg.cutoff_grid = {0.01, 0.1, 0.3};
    cfg.alpha_grid = {1e-3, 1e-2, 1e-1};
    cfg.l1_ratio_grid = {0.5, 0.9};
    cfg.cv_folds = 3;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("clip step") {
    SUBCASE("hand-computed scaled coefficients") {
        const auto fit = fit_with_rows({{0.5, 0.05, 0.0}});
        const auto masks02 = clip_step(fit, 0.2);
        REQUIRE(masks02.size() == 1);
        CHECK(masks02[0] == std::vector<bool>{true, false, false});
        CHECK(clip_step(fit, 0.0)[0] == std::vector<bool>{true, true, false});
        CHECK(clip_step(fit, 0.1)[0] == std::vector<bool>{true, true, false});
        CHECK(clip_step(fit, 1.0)[0] == std::vector<bool>{true, false, false});
    }
    SUBCASE("cutoff 1 keeps only the argmax coefficients") {
        const auto fit = fit_with_rows({{0.2, -0.9, 0.9}});
        CHECK(clip_step(fit, 1.0)[0] == std::vector<bool>{false, true, true});
    }
    SUBCASE("all-zero row gives an empty mask") {
        const auto fit = fit_with_rows({{0.0, 0.0, 0.0}});
        CHECK(clip_step(fit, 0.0)[0] == std::vector<bool>{false, false, false});
    }
    SUBCASE("masks are invariant to positive rescaling of a class row") {
        Rng rng(17);
        for (int trial = 0; trial < 50; ++trial) {
            LogisticFit fit;
            fit.W.resize(1, 6);
            for (int j = 0; j < 6; ++j) fit.W(0, j) = rng.next_uniform(-1.0, 1.0);
            fit.b = Eigen::VectorXd::Zero(1);
            const double cutoff = rng.next_double();
            const auto base = clip_step(fit, cutoff);
            fit.W *= rng.next_uniform(0.1, 50.0);
            CHECK(clip_step(fit, cutoff) == base);
        }
    }
    SUBCASE("per-class masks, one per coefficient row") {
        const auto fit = fit_with_rows({{1.0, 0.0}, {0.0, 2.0}, {0.5, 0.5}});
        const auto masks = clip_step(fit, 0.5);
        REQUIRE(masks.size() == 3);
        CHECK(masks[0] == std::vector<bool>{true, false});
        CHECK(masks[1] == std::vector<bool>{false, true});
        CHECK(masks[2] == std::vector<bool>{true, true});
    }
}

TEST_CASE("harmonize") {
    const std::vector<std::vector<bool>> masks = {
        {true, true, false}, {false, true, false}, {true, false, false}};
    // per-feature counts: (2, 2, 0)
    CHECK(harmonize(masks, 1) == std::vector<bool>{true, true, false});
    CHECK(harmonize(masks, 2) == std::vector<bool>{true, true, false});
    CHECK(harmonize(masks, 3) == std::vector<bool>{false, false, false});

    // the documented example: selected by exactly 2 classes, threshold 3
    const std::vector<std::vector<bool>> two_of_three = {{true}, {true}, {false}};
    CHECK(harmonize(two_of_three, 3) == std::vector<bool>{false});
    CHECK(harmonize(two_of_three, 1) == std::vector<bool>{true});

    SUBCASE("raising min_classes never adds a feature") {
        Rng rng(23);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<bool>> random_masks(4, std::vector<bool>(8));
            for (auto& mask : random_masks) {
                for (std::size_t j = 0; j < 8; ++j) mask[j] = rng.next_double() < 0.4;
            }
            auto previous = harmonize(random_masks, 1);
            for (int m = 2; m <= 4; ++m) {
                const auto current = harmonize(random_masks, m);
                for (std::size_t j = 0; j < 8; ++j) {
                    CHECK((!current[j] || previous[j]));  // monotone shrinkage
                }
                previous = current;
            }
        }
    }
    CHECK_THROWS(harmonize(masks, 0));
    CHECK_THROWS(harmonize(masks, 4));
}

TEST_CASE("binary pipeline uses the positive-class mask directly") {
    const Dataset ds = make_synthetic(120, 8, 4, {0.5, 0.5}, 3);
    const LcenModel model = fit_lcen(ds, small_config(LcenVariant::LCEN));
    REQUIRE(model.per_class_masks.size() == 1);
    CHECK(model.final_mask == model.per_class_masks[0]);
}

TEST_CASE("multiclass harmonization bounds the final mask") {
    const Dataset ds = make_synthetic(150, 10, 5, {0.34, 0.33, 0.33}, 5);
    LcenConfig cfg = small_config(LcenVariant::LCEN);
    cfg.min_classes_selected = 2;
    const LcenModel model = fit_lcen(ds, cfg);
    REQUIRE(model.per_class_masks.size() == 3);
    for (std::size_t j = 0; j < model.final_mask.size(); ++j) {
        if (!model.final_mask[j]) continue;
        int count = 0;
        for (const auto& mask : model.per_class_masks) count += mask[j] ? 1 : 0;
        CHECK(count >= 2);  // the survival threshold held
        bool in_union = false;
        for (const auto& mask : model.per_class_masks) in_union = in_union || mask[j];
        CHECK(in_union);
    }
}

TEST_CASE("len is exactly lcen with the cutoff grid pinned to zero") {
    const Dataset ds = make_synthetic(130, 8, 4, {0.5, 0.5}, 11);

    LcenConfig len_cfg = small_config(LcenVariant::LEN);  // grid is ignored for LEN
    const LcenModel len_model = fit_lcen(ds, len_cfg);

    LcenConfig lcen_cfg = small_config(LcenVariant::LCEN);
    lcen_cfg.cutoff_grid = {0.0};
    const LcenModel lcen_model = fit_lcen(ds, lcen_cfg);

    CHECK(len_model.final_mask == lcen_model.final_mask);
    CHECK(len_model.chosen.final_alpha == lcen_model.chosen.final_alpha);
    CHECK(len_model.chosen.final_l1_ratio == lcen_model.chosen.final_l1_ratio);
    CHECK(len_model.final_fit.W == lcen_model.final_fit.W);
    CHECK(len_model.chosen.cutoff == 0.0);
}

TEST_CASE("two-step variants reuse the stage-1 penalty in the refit") {
    const Dataset ds = make_synthetic(130, 8, 4, {0.5, 0.5}, 13);

    const LcenModel lc = fit_lcen(ds, small_config(LcenVariant::LC));
    CHECK(lc.chosen.final_alpha == lc.chosen.stage1_alpha);
    CHECK(lc.chosen.final_l1_ratio == 1.0);
    CHECK(lc.final_fit.penalty.l1_ratio == 1.0);

    const LcenModel enc = fit_lcen(ds, small_config(LcenVariant::ENC));
    CHECK(enc.chosen.final_alpha == enc.chosen.stage1_alpha);
    CHECK(enc.chosen.final_l1_ratio == enc.chosen.stage1_l1_ratio);

    // LCL re-selects its refit alpha over the grid with pure L1
    const LcenModel lcl = fit_lcen(ds, small_config(LcenVariant::LCL));
    CHECK(lcl.final_fit.penalty.l1_ratio == 1.0);
}

TEST_CASE("empty selection falls back to an intercept-only model") {
    // cutoff 1 keeps only each class's argmax column; with K classes whose
    // argmax columns differ, intersection harmonization leaves nothing
    const Dataset ds = make_synthetic(150, 10, 5, {0.34, 0.33, 0.33}, 29);
    LcenConfig cfg = small_config(LcenVariant::LCEN);
    cfg.cutoff_grid = {1.0};
    cfg.min_classes_selected = 3;
    const LcenModel model = fit_lcen(ds, cfg);
    if (model.no_features_selected) {
        CHECK(model.surviving_columns.empty());
        const auto pred = lcen_predict_labels(model, ds.X);
        CHECK(pred.size() == static_cast<std::size_t>(ds.n_samples()));
        // intercept-only predicts one class everywhere
        const std::set<int> unique(pred.begin(), pred.end());
        CHECK(unique.size() == 1);
        const std::string report = lcen_report(model, ds.feature_names, ds.class_names);
        CHECK(report.find("no features selected") != std::string::npos);
    } else {
        // the data allowed an aligned argmax; the pipeline must still be valid
        CHECK(!model.surviving_columns.empty());
    }
}

TEST_CASE("selected raw features resolve through the parent map") {
    LcenModel model;
    model.n_raw_features = 4;
    model.n_classes = 2;
    model.expanded_names = {"x0", "x1", "x2", "x3", "x0*x2", "x1^2"};
    model.parent_map = {{0}, {1}, {2}, {3}, {0, 2}, {1}};
    model.surviving_columns = {4};  // only "x0*x2"
    model.final_fit.W = Eigen::MatrixXd::Constant(1, 1, 0.8);
    model.final_fit.b = Eigen::VectorXd::Zero(1);
    model.final_fit.mode = FitMode::binary;
    model.final_fit.n_classes = 2;

    const auto selected = selected_raw_features(model, {"a", "b", "c", "d"});
    REQUIRE(selected.size() == 2);
    CHECK(selected[0].first == "a");
    CHECK(selected[1].first == "c");
    CHECK(selected[0].second == doctest::Approx(0.8));

    model.surviving_columns.clear();
    model.final_fit.W = Eigen::MatrixXd::Zero(1, 0);
    CHECK(selected_raw_features(model, {"a", "b", "c", "d"}).empty());
}

TEST_CASE("raw feature ranking follows column importance") {
    const Dataset ds = make_synthetic(140, 6, 3, {0.5, 0.5}, 31);
    const LcenModel model = fit_lcen(ds, small_config(LcenVariant::LCEN));
    const auto ranked = selected_raw_features(model, ds.feature_names);
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        CHECK(ranked[i - 1].second >= ranked[i].second);
    }
    // importance ordering mirrors feature_importance heads
    if (!model.feature_importance.empty() && !ranked.empty()) {
        const auto& top_col = model.feature_importance.front();
        CHECK(top_col.second == doctest::Approx(ranked.front().second));
    }
}

TEST_CASE("pipeline selects informative features above the base rate") {
    const Dataset ds = make_synthetic(400, 20, 8, {0.5, 0.5}, 11);
    const LcenModel model = fit_lcen(ds, small_config(LcenVariant::LCEN));
    const auto informative = synthetic_informative_columns(ds);
    const std::set<int> inf_set(informative.begin(), informative.end());
    const auto ranked = selected_raw_features(model, ds.feature_names);
    REQUIRE(!ranked.empty());
    double hits = 0.0;
    for (const auto& [name, importance] : ranked) {
        hits += inf_set.count(std::stoi(name.substr(1))) ? 1.0 : 0.0;
    }
    const double precision = hits / static_cast<double>(ranked.size());
    CHECK(precision > 8.0 / 20.0);  // better than picking at random
}

TEST_CASE("fit is deterministic") {
    const Dataset ds = make_synthetic(120, 8, 4, {0.5, 0.5}, 41);
    const LcenConfig cfg = small_config(LcenVariant::LCEN, 7);
    const LcenModel a = fit_lcen(ds, cfg);
    const LcenModel b = fit_lcen(ds, cfg);
    CHECK(a.final_mask == b.final_mask);
    CHECK(a.final_fit.W == b.final_fit.W);
    CHECK(a.chosen.cutoff == b.chosen.cutoff);
    CHECK(a.cv_score == b.cv_score);
}

TEST_CASE("prediction pipeline round trip") {
    const Dataset ds = make_synthetic(160, 8, 4, {0.5, 0.5}, 43);
    LcenConfig cfg = small_config(LcenVariant::LCEN);
    cfg.degree_grid = {1, 2};
    const LcenModel model = fit_lcen(ds, cfg);
    const Eigen::MatrixXd probs = lcen_predict_proba(model, ds.X);
    CHECK(probs.rows() == ds.n_samples());
    CHECK(probs.cols() == 2);
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        CHECK(probs.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
    // the fitted model beats the class prior on its own training data
    const auto pred = lcen_predict_labels(model, ds.X);
    const auto cm = ConfusionMatrix::from_labels(ds.y, pred, 2);
    CHECK(macro_f1(cm) > 60.0);
    CHECK_THROWS(lcen_predict_proba(model, Eigen::MatrixXd::Zero(3, 5)));
}

TEST_CASE("config validation") {
    const Dataset ds = make_synthetic(60, 5, 3, {0.5, 0.5}, 47);
    LcenConfig cfg = small_config(LcenVariant::LCEN);
    cfg.min_classes_selected = 3;  // K = 2
    CHECK_THROWS(fit_lcen(ds, cfg));
    cfg = small_config(LcenVariant::LCEN);
    cfg.cutoff_grid = {1.5};
    CHECK_THROWS(fit_lcen(ds, cfg));
    cfg = small_config(LcenVariant::LCEN);
    cfg.alpha_grid.clear();
    CHECK_THROWS(fit_lcen(ds, cfg));
    cfg = small_config(LcenVariant::LCEN);
    cfg.l1_ratio_grid.clear();
    CHECK_THROWS(fit_lcen(ds, cfg));
}

TEST_CASE("variant names round trip") {
    for (const auto variant : {LcenVariant::LCEN, LcenVariant::LC, LcenVariant::ENC,
                               LcenVariant::LEN, LcenVariant::LCL, LcenVariant::ENCEN}) {
        CHECK(lcen_variant_from_string(to_string(variant)) == variant);
    }
    CHECK_THROWS(lcen_variant_from_string("nope"));
}

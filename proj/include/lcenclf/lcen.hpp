#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcenclf/dataset.hpp"
#include "lcenclf/expand.hpp"
#include "lcenclf/logistic.hpp"

namespace lcenclf {

/// LCEN and its ablations/variants. LC/ENC stop after the clip step (refit of
/// the surviving columns at the stage-1 penalty); LEN forces cutoff 0;
/// LCL/ENCEN re-run a cross-validated refit stage.
enum class LcenVariant { LCEN, LC, ENC, LEN, LCL, ENCEN };

LcenVariant lcen_variant_from_string(const std::string& name);
std::string to_string(LcenVariant variant);

struct LcenConfig {
    std::vector<int> degree_grid = {1, 2, 3};
    std::vector<double> cutoff_grid = {0.01, 0.02, 0.03, 0.05, 0.07, 0.1};
    std::vector<double> alpha_grid = {};      // shared by selection and refit stages
    std::vector<double> l1_ratio_grid = {};   // elastic-net stages
    int min_classes_selected = 1;
    LcenVariant variant = LcenVariant::LCEN;
    int cv_folds = 5;
    std::uint64_t seed = 0;
    FitOptions fit_options{};
};

struct LcenChoice {
    int degree = 1;
    double cutoff = 0.0;
    double stage1_alpha = 0.0;
    double stage1_l1_ratio = 1.0;
    double final_alpha = 0.0;
    double final_l1_ratio = 1.0;
};

/**
 * Fitted LCEN model. Masks are over the P expanded columns of the chosen
 * degree. The final fit acts on the surviving columns, standardized with the
 * training statistics stored here, so the model is self-contained for
 * prediction on raw feature matrices.
 */
struct LcenModel {
    std::vector<std::vector<bool>> per_class_masks;  // post-clip, pre-harmonization
    std::vector<bool> final_mask;                    // post-harmonization
    LogisticFit final_fit;                           // on surviving columns
    LcenChoice chosen;
    double cv_score = 0.0;                           // validation macro F1 of the chosen cell
    bool no_features_selected = false;
    std::vector<std::string> log;                    // degenerate/fallback events

    // prediction pipeline
    int n_raw_features = 0;
    int n_classes = 2;
    std::vector<std::string> expanded_names;         // all P derivation strings
    std::vector<std::vector<int>> parent_map;        // all P
    std::vector<int> surviving_columns;              // global indices, mask order
    Eigen::VectorXd col_mean, col_std;               // per surviving column

    /// Surviving derived features with importance = max over classes of the
    /// absolute standardized coefficient, sorted by decreasing importance.
    std::vector<std::pair<std::string, double>> feature_importance;
};

/**
 * Clip step: for each class row w of the coefficient matrix, the scaled
 * coefficient is |w_j| / max_k |w_k|; feature j is selected when w_j != 0 and
 * its scaled coefficient is >= cutoff. An all-zero row yields an empty mask.
 */
std::vector<std::vector<bool>> clip_step(const LogisticFit& fit, double cutoff);

/// Feature j survives when it appears in at least `min_classes` of the masks.
std::vector<bool> harmonize(const std::vector<std::vector<bool>>& masks, int min_classes);

/**
 * Fit the LCEN pipeline (or a variant) on a training set. Degree, cutoff and
 * the per-stage penalties are selected by k-fold cross-validation on
 * validation macro F1 (ties: higher MCC, then smaller model). If
 * harmonization leaves no features, the model falls back to intercept-only
 * and sets `no_features_selected`.
 */
LcenModel fit_lcen(const Dataset& train, const LcenConfig& config);

Eigen::MatrixXd lcen_predict_proba(const LcenModel& model, const Eigen::MatrixXd& X_raw);
std::vector<int> lcen_predict_labels(const LcenModel& model, const Eigen::MatrixXd& X_raw);

/**
 * Raw features behind the surviving expanded columns, ranked by the maximum
 * importance of any surviving column deriving from them (ties by feature
 * index). Returns (feature name, importance) pairs.
 */
std::vector<std::pair<std::string, double>>
selected_raw_features(const LcenModel& model, const std::vector<std::string>& raw_feature_names);

/**
 * Human-readable model report: chosen hyperparameters, surviving derived
 * features with standardized coefficients, and the de-standardized closed-form
 * logit expression per class.
 */
std::string lcen_report(const LcenModel& model, const std::vector<std::string>& raw_feature_names,
                        const std::vector<std::string>& class_names);

}  // namespace lcenclf

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lcenclf {

/**
 * A labeled tabular dataset. Labels are contiguous class indices in [0, K);
 * `provenance` records every preprocessing step applied since load so a
 * result table can state exactly what the models saw.
 */
struct Dataset {
    std::string name;
    Eigen::MatrixXd X;                        // N x D
    std::vector<int> y;                       // length N, values in [0, K)
    std::vector<std::string> feature_names;   // length D
    std::vector<std::string> class_names;     // length K
    std::vector<std::string> provenance;

    Eigen::Index n_samples() const { return X.rows(); }
    Eigen::Index n_features() const { return X.cols(); }
    int n_classes() const { return static_cast<int>(class_names.size()); }

    /// Subset by row indices (keeps names/classes, appends a provenance note).
    Dataset take_rows(const std::vector<int>& idx, const std::string& note) const;
    /// Subset by named columns; throws if a name does not exist.
    Dataset select_features(const std::vector<std::string>& names) const;

    /// Checks label range, class coverage, shape agreement; throws on violation.
    void validate() const;
};

enum class SplitKind { random_fraction, last_n_rows, stratified_fraction };

struct SplitPolicy {
    SplitKind kind = SplitKind::random_fraction;
    double fraction = 0.2;       // for *_fraction kinds
    long n = 0;                  // for last_n_rows
    std::uint64_t seed = 0;
};

/**
 * Load one of the benchmark datasets from its published UCI export.
 * Dataset-specific preprocessing is applied here:
 *   heart_failure     - drops the follow-up "time" column; target DEATH_EVENT.
 *   bank_marketing    - drops call "duration"; encodes categoricals to the
 *                       54-column design (see docs in dataset.cpp); target y.
 *   wine_quality_red  - removes the grade-3 rows; grades 4..8 -> classes 0..4.
 *   glass             - drops Id; groups the 6 subtypes into float /
 *                       non-float / non-window.
 * Throws on schema mismatch (naming the offending column) or unknown name.
 */
Dataset load_dataset(const std::string& name, const std::string& csv_path);

/**
 * One-hot encode a categorical column. Levels are sorted lexicographically;
 * one indicator column per level, so each row sums to 1. Throws if the column
 * has fewer than two distinct levels (the result would be constant).
 */
Eigen::MatrixXd one_hot_encode(const std::vector<std::string>& column,
                               std::vector<std::string>* level_names = nullptr);

/// Disjoint, exhaustive train/test partition per the policy. Deterministic.
std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitPolicy& policy);

/// k-fold CV index pairs: validation sets disjoint, exhaustive, sizes within 1.
std::vector<std::pair<std::vector<int>, std::vector<int>>>
kfold(long n, int k, std::uint64_t seed);

struct Standardization {
    Eigen::MatrixXd train;   // column means 0, sample std 1
    Eigen::MatrixXd other;   // scaled with the train statistics
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;  // sample std, divisor N-1
};

/**
 * Column-standardize `train_X` (sample std, divisor N-1) and apply the train
 * statistics to `other_X`. Throws if any train column is constant: constant
 * columns must be dropped upstream.
 */
Standardization standardize(const Eigen::MatrixXd& train_X,
                            const Eigen::MatrixXd& other_X = Eigen::MatrixXd());

/**
 * Generate a synthetic classification dataset: `d_informative` columns carry
 * class signal (hypercube-vertex class centers in a latent space, pushed
 * through a random rotation), the remaining columns are pure N(0,1) noise
 * independent of the labels. Class counts follow `class_fractions` by largest
 * remainder rounding. The shuffled indices of the informative columns are
 * recorded in provenance ("informative_columns: i0,i1,...") as ground truth
 * for feature-selection studies.
 */
Dataset make_synthetic(long n, int d, int d_informative,
                       const std::vector<double>& class_fractions,
                       std::uint64_t seed);

/// Parse the ground-truth informative column indices out of a synthetic
/// dataset's provenance. Empty if not present.
std::vector<int> synthetic_informative_columns(const Dataset& dataset);

}  // namespace lcenclf

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lcenclf/dataset.hpp"
#include "lcenclf/lcen.hpp"

namespace lcenclf {

enum class FeatureSetKind { all, named_list, lcen_selected };
enum class ReportFormat { csv, markdown };

struct ExperimentConfig {
    std::string dataset;
    std::string model = "lr";
    FeatureSetKind feature_set = FeatureSetKind::all;
    std::vector<std::string> features;            // for named_list
    std::vector<std::uint64_t> seeds = {0, 1, 2};
    int folds = 5;
    int min_classes = 1;                          // LCEN harmonization threshold
    bool full_grid = false;                       // full A2 grids instead of the reduced defaults
    std::string data_dir = "data";
    int workers = 1;
    std::string cv_metric = "f1";                 // selection metric: "f1" or "mcc"
    bool mlp_full_cv = false;                     // k-fold per MLP cell instead of one holdout
};

struct ExperimentResult {
    std::string dataset;
    std::string model;
    std::string feature_note;                     // "all", "list:...", "lcen"
    std::vector<double> f1_per_seed, mcc_per_seed;
    double f1_mean = 0.0, f1_std = 0.0;
    double mcc_mean = 0.0, mcc_std = 0.0;
    std::vector<std::vector<std::string>> selected_per_seed;  // lcen variants only
    std::string chosen;                           // per-seed hyperparameter summary
    double wall_seconds = 0.0;
};

/**
 * One benchmark run: per seed, split per the dataset policy, grid-search by
 * k-fold CV on the training set, refit, evaluate on the held-out test set.
 * Fully determined by (config, seeds).
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Side-by-side all-features vs named-features comparison across models, plus
/// paired t-test p-values over (model, seed) metric pairs.
struct FeatureSelectionStudy {
    std::vector<ExperimentResult> all_features;
    std::vector<ExperimentResult> selected_features;
    double p_f1 = 1.0;
    double p_mcc = 1.0;
    double p_f1_model_means = 1.0;   // alternative pairing: per-model means
    double p_mcc_model_means = 1.0;
};
FeatureSelectionStudy feature_selection_study(const ExperimentConfig& base,
                                              const std::vector<std::string>& features,
                                              const std::vector<std::string>& models);

/// One LCEN run per min-classes value ("lcen-k" rows).
std::vector<ExperimentResult> min_classes_sweep(const ExperimentConfig& base,
                                                const std::vector<int>& values);

/// LCEN plus its ablations/variants (lc, enc, len, lcl, encen).
std::vector<ExperimentResult> ablation_study(const ExperimentConfig& base);

void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 std::ostream& out);
void emit_report_file(const std::vector<ExperimentResult>& results, ReportFormat format,
                      const std::string& path);
std::string render_report(const std::vector<ExperimentResult>& results, ReportFormat format);

/// Parse a CSV report back (displayed precision); for round-trip checks.
std::vector<ExperimentResult> parse_csv_report(const std::string& text);

/// Features selected in at least half of the seeds, ordered by selection
/// frequency then by first appearance.
std::vector<std::string> most_frequent_selection(const ExperimentResult& result);

// -- hyperparameter grids ----------------------------------------------------

/// 0 plus 20 log-spaced values over exponents [-4.3, 0].
std::vector<double> alpha_grid_full();
/// The 13 protocol L1 ratios.
std::vector<double> l1_ratio_grid_full();
/// Cutoff grid per dataset: 1e-2..1e-1 for most, 1e-2..6e-1 for glass.
std::vector<double> cutoff_grid_full(const std::string& dataset);
/// The 63 architecture shape templates as multiples of the feature count.
std::vector<std::vector<double>> mlp_architecture_menu();
/// Per-dataset class-weight menus.
std::vector<std::vector<double>> class_weight_menu(const std::string& dataset);

std::vector<double> alpha_grid_reduced(bool for_lcen);
std::vector<double> l1_ratio_grid_reduced();
std::vector<double> cutoff_grid_reduced(const std::string& dataset);
std::vector<int> degree_grid(const std::string& dataset, bool full_grid);

/// LCEN configuration for a dataset under the chosen grid size.
LcenConfig make_lcen_config(const std::string& dataset, LcenVariant variant, int min_classes,
                            int folds, std::uint64_t seed, bool full_grid);

// -- dataset registry ---------------------------------------------------------

/// Resolve a dataset by name: synthetic_* variants are generated in memory;
/// the UCI datasets are read from `data_dir` via the manifest.
Dataset load_benchmark_dataset(const std::string& name, const std::string& data_dir);
SplitPolicy dataset_split_policy(const std::string& name, std::uint64_t seed);
bool dataset_available(const std::string& name, const std::string& data_dir);
std::vector<std::string> known_datasets();

}  // namespace lcenclf

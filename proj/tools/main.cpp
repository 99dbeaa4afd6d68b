// Command-line benchmark harness: reproduces the dataset studies, the
// min-classes sweeps, and the ablation tables from the library.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcenclf/bench.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
    }
    if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
    return seeds;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> values;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) values.push_back(std::stoi(tok));
    }
    return values;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> names;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) names.push_back(tok);
    }
    return names;
}

void apply_features_flag(lcenclf::ExperimentConfig& config, const std::string& features) {
    if (features == "all") {
        config.feature_set = lcenclf::FeatureSetKind::all;
    } else if (features == "lcen") {
        config.feature_set = lcenclf::FeatureSetKind::lcen_selected;
    } else if (features.rfind("list:", 0) == 0) {
        config.feature_set = lcenclf::FeatureSetKind::named_list;
        config.features = parse_names(features.substr(5));
        if (config.features.empty()) {
            throw CLI::ValidationError("--features", "empty feature list");
        }
    } else {
        throw CLI::ValidationError("--features", "expected all, lcen, or list:<csv>");
    }
}

void write_out(const std::string& rendered, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << rendered;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write to " + out_path);
    out << rendered;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LCEN classification benchmark harness"};
    app.set_config("--config", "", "key=value config file replacing flags");
    app.require_subcommand(1);
    app.fallthrough();

    std::string dataset, model = "lcen", features = "all", seeds_csv = "0,1,2";
    std::string out_path, format = "csv", data_dir = "data", cv_metric = "f1";
    std::string values_csv = "1,2,3", models_csv;
    int folds = 5, workers = 1, min_classes = 1;
    bool full_grid = false, mlp_full_cv = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->configurable();  // allow [subcommand] sections in --config files
        cmd->add_option("--dataset", dataset, "dataset name")->required();
        cmd->add_option("--seeds", seeds_csv, "comma-separated CV seeds");
        cmd->add_option("--folds", folds, "cross-validation folds");
        cmd->add_option("--out", out_path, "output path (stdout if omitted)");
        cmd->add_option("--format", format, "csv or markdown")
            ->check(CLI::IsMember({"csv", "markdown"}));
        cmd->add_option("--workers", workers, "parallel workers");
        cmd->add_option("--data-dir", data_dir, "directory with the UCI files + manifest");
        cmd->add_option("--cv-metric", cv_metric, "grid selection metric")
            ->check(CLI::IsMember({"f1", "mcc"}));
        cmd->add_flag("--full-grid", full_grid, "use the full benchmark grids");
        cmd->add_flag("--mlp-full-cv", mlp_full_cv, "k-fold CV per MLP grid cell");
    };

    CLI::App* run = app.add_subcommand("run", "one dataset x model experiment");
    add_common(run);
    run->add_option("--model", model,
                    "lr, lasso, rr, en, lcen, lc, enc, len, lcl, encen, mlp_ce, mlp_diffmcc");
    run->add_option("--features", features, "all | lcen | list:<csv>");
    run->add_option("--min-classes", min_classes, "LCEN harmonization threshold");

    CLI::App* sweep = app.add_subcommand("sweep-min-classes",
                                         "LCEN runs across min-classes values");
    add_common(sweep);
    sweep->add_option("--values", values_csv, "comma-separated min-classes values");

    CLI::App* ablate = app.add_subcommand("ablate", "LCEN vs its ablations/variants");
    add_common(ablate);
    ablate->add_option("--min-classes", min_classes, "LCEN harmonization threshold");

    CLI::App* fs = app.add_subcommand("fs-study",
                                      "all-features vs selected-features comparison");
    add_common(fs);
    fs->add_option("--features", features, "lcen | list:<csv>")->required();
    fs->add_option("--models", models_csv, "models to retrain (comma-separated)")->required();
    fs->add_option("--min-classes", min_classes, "LCEN harmonization threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        lcenclf::ExperimentConfig config;
        config.dataset = dataset;
        config.seeds = parse_seeds(seeds_csv);
        config.folds = folds;
        config.workers = workers;
        config.data_dir = data_dir;
        config.cv_metric = cv_metric;
        config.full_grid = full_grid;
        config.mlp_full_cv = mlp_full_cv;
        config.min_classes = min_classes;
        const auto report_format = format == "markdown" ? lcenclf::ReportFormat::markdown
                                                        : lcenclf::ReportFormat::csv;

        if (*run) {
            config.model = model;
            apply_features_flag(config, features);
            const auto result = lcenclf::run_experiment(config);
            write_out(lcenclf::render_report({result}, report_format), out_path);
        } else if (*sweep) {
            const auto values = parse_ints(values_csv);
            if (values.empty()) throw std::runtime_error("no --values given");
            const auto results = lcenclf::min_classes_sweep(config, values);
            write_out(lcenclf::render_report(results, report_format), out_path);
        } else if (*ablate) {
            const auto results = lcenclf::ablation_study(config);
            write_out(lcenclf::render_report(results, report_format), out_path);
        } else if (*fs) {
            const auto models = parse_names(models_csv);
            if (models.empty()) throw std::runtime_error("no --models given");
            std::vector<std::string> feature_list;
            if (features.rfind("list:", 0) == 0) {
                feature_list = parse_names(features.substr(5));
            } else if (features == "lcen") {
                lcenclf::ExperimentConfig selector = config;
                selector.model = "lcen";
                selector.feature_set = lcenclf::FeatureSetKind::all;
                const auto lcen_run = lcenclf::run_experiment(selector);
                feature_list = lcenclf::most_frequent_selection(lcen_run);
                if (feature_list.empty()) {
                    throw std::runtime_error("lcen selected no features");
                }
            } else {
                throw std::runtime_error("fs-study --features must be lcen or list:<csv>");
            }
            const auto study = lcenclf::feature_selection_study(config, feature_list, models);
            std::ostringstream rendered;
            rendered << "# all features\n"
                     << lcenclf::render_report(study.all_features, report_format)
                     << "# selected features: " << [&] {
                            std::string joined;
                            for (std::size_t i = 0; i < feature_list.size(); ++i) {
                                joined += (i ? "," : "") + feature_list[i];
                            }
                            return joined;
                        }() << "\n"
                     << lcenclf::render_report(study.selected_features, report_format);
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "# paired t-tests (model x seed pairs): p_f1=%.3g p_mcc=%.3g\n"
                          "# paired t-tests (model means): p_f1=%.3g p_mcc=%.3g\n",
                          study.p_f1, study.p_mcc, study.p_f1_model_means,
                          study.p_mcc_model_means);
            rendered << buf;
            write_out(rendered.str(), out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

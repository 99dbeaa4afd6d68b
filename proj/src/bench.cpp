#include "lcenclf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "lcenclf/csv.hpp"
#include "lcenclf/logistic.hpp"
#include "lcenclf/metrics.hpp"
#include "lcenclf/mlp.hpp"

namespace lcenclf {

// ---------------------------------------------------------------------------
// Hyperparameter grids. The full grids are the complete benchmark protocol;
// the reduced defaults are documented desk-scale subsets (same endpoints,
// fewer points) used unless --full-grid is given.
// ---------------------------------------------------------------------------

std::vector<double> alpha_grid_full() {
    std::vector<double> grid = {0.0};
    for (int i = 0; i < 20; ++i) {
        grid.push_back(std::pow(10.0, -4.3 + 4.3 * static_cast<double>(i) / 19.0));
    }
    return grid;
}

std::vector<double> l1_ratio_grid_full() {
    return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99};
}

std::vector<double> cutoff_grid_full(const std::string& dataset) {
    if (dataset == "glass") {
        return {0.01, 0.02, 0.03, 0.05, 0.07, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    }
    return {0.01, 0.02, 0.03, 0.05, 0.07, 0.1};
}

std::vector<double> alpha_grid_reduced(bool for_lcen) {
    if (for_lcen) return {1e-3, 1e-2, 1e-1, 1.0};
    std::vector<double> grid = {0.0};
    for (int i = 0; i < 5; ++i) {
        grid.push_back(std::pow(10.0, -4.3 + 4.3 * static_cast<double>(i) / 4.0));
    }
    return grid;
}

std::vector<double> l1_ratio_grid_reduced() { return {0.1, 0.5, 0.9, 0.99}; }

std::vector<double> cutoff_grid_reduced(const std::string& dataset) {
    if (dataset == "glass") return {0.01, 0.05, 0.1, 0.3, 0.6};
    return {0.01, 0.05, 0.1};
}

std::vector<int> degree_grid(const std::string& dataset, bool full_grid) {
    if (full_grid) return {1, 2, 3};
    if (dataset == "heart_failure" || dataset == "glass") return {1, 2};
    return {1};
}

std::vector<std::vector<double>> mlp_architecture_menu() {
    std::vector<std::vector<double>> menu;
    // three hidden layers: non-increasing triples over {6,5,4,3,2}
    for (int a = 6; a >= 2; --a) {
        for (int b = a; b >= 2; --b) {
            for (int c = b; c >= 2; --c) {
                menu.push_back({static_cast<double>(a), static_cast<double>(b),
                                static_cast<double>(c)});
            }
        }
    }
    // two hidden layers
    for (int a = 6; a >= 2; --a) {
        const int lo = (a == 6) ? 2 : 1;
        for (int b = a; b >= lo; --b) {
            menu.push_back({static_cast<double>(a), static_cast<double>(b)});
        }
    }
    menu.push_back({1.0, 1.0});
    menu.push_back({1.0, 0.5});
    // one hidden layer
    for (const double a : {6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.5}) menu.push_back({a});
    return menu;
}

std::vector<std::vector<double>> class_weight_menu(const std::string& dataset) {
    if (dataset == "heart_failure" || dataset == "bank_marketing") {
        return {{1, 1}, {1, 2}};
    }
    if (dataset == "wine_quality_red") {
        return {{1, 1, 1, 1, 1}, {1, 1, 1, 1, 2}, {2, 1, 1, 1, 2}};
    }
    if (dataset == "glass") {
        return {{1, 1, 1}, {1, 1, 2}};
    }
    if (dataset.rfind("synthetic_4c", 0) == 0) return {{1, 1, 1, 1}};
    if (dataset.rfind("synthetic_3c", 0) == 0) return {{1, 1, 1}};
    return {};
}

LcenConfig make_lcen_config(const std::string& dataset, LcenVariant variant, int min_classes,
                            int folds, std::uint64_t seed, bool full_grid) {
    LcenConfig cfg;
    cfg.variant = variant;
    cfg.min_classes_selected = min_classes;
    cfg.cv_folds = folds;
    cfg.seed = seed;
    cfg.degree_grid = degree_grid(dataset, full_grid);
    if (full_grid) {
        cfg.alpha_grid = alpha_grid_full();
        cfg.l1_ratio_grid = l1_ratio_grid_full();
        cfg.cutoff_grid = cutoff_grid_full(dataset);
    } else {
        cfg.alpha_grid = alpha_grid_reduced(true);
        cfg.l1_ratio_grid = l1_ratio_grid_reduced();
        cfg.cutoff_grid = cutoff_grid_reduced(dataset);
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Dataset registry
// ---------------------------------------------------------------------------

namespace {

struct SyntheticSpec {
    long n = 750;
    int d = 300;
    int d_informative = 200;
    std::vector<double> fractions;
    std::uint64_t generator_seed = 42;  // the dataset is a fixed artifact
};

const std::map<std::string, SyntheticSpec>& synthetic_registry() {
    static const std::map<std::string, SyntheticSpec> registry = {
        {"synthetic_3c_balanced", {750, 300, 200, {0.4, 0.3, 0.3}, 42}},
        {"synthetic_3c_imbalanced", {750, 300, 200, {0.45, 0.45, 0.10}, 42}},
        {"synthetic_4c_balanced", {750, 300, 200, {0.25, 0.25, 0.25, 0.25}, 42}},
        {"synthetic_4c_imbalanced", {750, 300, 200, {0.4, 0.4, 0.1, 0.1}, 42}},
    };
    return registry;
}

std::string manifest_file_for(const std::string& name, const std::string& data_dir) {
    const std::string manifest_path = data_dir + "/manifest.json";
    std::ifstream in(manifest_path);
    if (!in) {
        throw std::runtime_error("cannot open dataset manifest: " + manifest_path);
    }
    nlohmann::json manifest;
    in >> manifest;
    if (!manifest.contains(name)) {
        throw std::runtime_error("dataset '" + name + "' not present in " + manifest_path);
    }
    return data_dir + "/" + manifest.at(name).at("file").get<std::string>();
}

}  // namespace

std::vector<std::string> known_datasets() {
    std::vector<std::string> names = {"heart_failure", "bank_marketing", "wine_quality_red",
                                      "glass"};
    for (const auto& [name, spec] : synthetic_registry()) names.push_back(name);
    return names;
}

Dataset load_benchmark_dataset(const std::string& name, const std::string& data_dir) {
    const auto synth = synthetic_registry().find(name);
    if (synth != synthetic_registry().end()) {
        const SyntheticSpec& spec = synth->second;
        Dataset ds = make_synthetic(spec.n, spec.d, spec.d_informative, spec.fractions,
                                    spec.generator_seed);
        ds.name = name;
        return ds;
    }
    return load_dataset(name, manifest_file_for(name, data_dir));
}

SplitPolicy dataset_split_policy(const std::string& name, std::uint64_t seed) {
    SplitPolicy policy;
    policy.seed = seed;
    if (name == "bank_marketing") {
        policy.kind = SplitKind::last_n_rows;
        policy.n = 2058;  // the final year of contacts, in file order
    } else if (name == "glass" || name.rfind("synthetic_", 0) == 0) {
        policy.kind = SplitKind::stratified_fraction;
        policy.fraction = 0.2;
    } else {
        policy.kind = SplitKind::random_fraction;
        policy.fraction = 0.2;
    }
    return policy;
}

bool dataset_available(const std::string& name, const std::string& data_dir) {
    if (synthetic_registry().count(name)) return true;
    try {
        return std::filesystem::exists(manifest_file_for(name, data_dir));
    } catch (const std::exception&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Experiment machinery
// ---------------------------------------------------------------------------

namespace {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    pool.reserve(static_cast<std::size_t>(n_threads));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) break;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

struct CellScore {
    double f1 = -1.0;
    double mcc = -200.0;
    double size = 0.0;
    bool failed = true;
};

bool cell_better(const CellScore& a, const CellScore& b, const std::string& metric) {
    if (a.failed != b.failed) return !a.failed;
    const double a1 = metric == "mcc" ? a.mcc : a.f1;
    const double b1 = metric == "mcc" ? b.mcc : b.f1;
    const double a2 = metric == "mcc" ? a.f1 : a.mcc;
    const double b2 = metric == "mcc" ? b.f1 : b.mcc;
    if (a1 != b1) return a1 > b1;
    if (a2 != b2) return a2 > b2;
    return a.size < b.size;
}

struct LinearFold {
    Eigen::MatrixXd Ztr, Zval;
    std::vector<int> ytr, yval;
};

std::vector<LinearFold> prepare_linear_folds(const Dataset& train, int k_folds,
                                             std::uint64_t seed) {
    std::vector<LinearFold> folds;
    for (const auto& [tr_idx, val_idx] : kfold(train.n_samples(), k_folds, seed)) {
        LinearFold fold;
        Eigen::MatrixXd tr(static_cast<Eigen::Index>(tr_idx.size()), train.X.cols());
        for (std::size_t r = 0; r < tr_idx.size(); ++r) tr.row(static_cast<Eigen::Index>(r)) = train.X.row(tr_idx[r]);
        Eigen::MatrixXd va(static_cast<Eigen::Index>(val_idx.size()), train.X.cols());
        for (std::size_t r = 0; r < val_idx.size(); ++r) va.row(static_cast<Eigen::Index>(r)) = train.X.row(val_idx[r]);

        // columns constant within the fold train cannot be standardized; keep
        // the usable ones (the full-train design has no constant columns)
        std::vector<int> usable;
        for (Eigen::Index j = 0; j < tr.cols(); ++j) {
            if (tr.col(j).maxCoeff() - tr.col(j).minCoeff() > 0.0) usable.push_back(static_cast<int>(j));
        }
        Eigen::MatrixXd tr_u(tr.rows(), static_cast<Eigen::Index>(usable.size()));
        Eigen::MatrixXd va_u(va.rows(), static_cast<Eigen::Index>(usable.size()));
        for (std::size_t j = 0; j < usable.size(); ++j) {
            tr_u.col(static_cast<Eigen::Index>(j)) = tr.col(usable[j]);
            va_u.col(static_cast<Eigen::Index>(j)) = va.col(usable[j]);
        }
        const Standardization st = standardize(tr_u, va_u);
        fold.Ztr = st.train;
        fold.Zval = st.other;
        fold.ytr.reserve(tr_idx.size());
        for (const int i : tr_idx) fold.ytr.push_back(train.y[static_cast<std::size_t>(i)]);
        for (const int i : val_idx) fold.yval.push_back(train.y[static_cast<std::size_t>(i)]);
        folds.push_back(std::move(fold));
    }
    return folds;
}

std::pair<LogisticFit, bool> fit_retry(const Eigen::MatrixXd& Z, const std::vector<int>& y,
                                       const Penalty& penalty, FitMode mode) {
    FitOptions options;
    LogisticFit fit = fit_logistic(Z, y, penalty, mode, options);
    if (fit.converged) return {std::move(fit), true};
    options.max_iter *= 10;
    fit = fit_logistic(Z, y, penalty, mode, options);
    return {fit, fit.converged};
}

struct SeedOutcome {
    double f1 = 0.0;
    double mcc = 0.0;
    std::vector<std::string> selected;
    std::string chosen;
};

double nonzero_count(const LogisticFit& fit) {
    double count = 0.0;
    for (Eigen::Index r = 0; r < fit.W.rows(); ++r) {
        for (Eigen::Index c = 0; c < fit.W.cols(); ++c) {
            if (fit.W(r, c) != 0.0) count += 1.0;
        }
    }
    return count;
}

SeedOutcome run_linear_seed(const Dataset& train, const Dataset& test,
                            const ExperimentConfig& config, std::uint64_t seed) {
    const int k = train.n_classes();
    const FitMode mode = (k == 2) ? FitMode::binary : FitMode::one_vs_rest;

    std::vector<Penalty> cells;
    const auto alphas = config.full_grid ? alpha_grid_full() : alpha_grid_reduced(false);
    const auto ratios = config.full_grid ? l1_ratio_grid_full() : l1_ratio_grid_reduced();
    if (config.model == "lr") {
        cells.push_back({0.0, 0.0});
    } else if (config.model == "lasso") {
        for (const double a : alphas) cells.push_back({a, 1.0});
    } else if (config.model == "rr") {
        for (const double a : alphas) cells.push_back({a, 0.0});
    } else if (config.model == "en") {
        for (const double a : alphas) {
            for (const double r : ratios) cells.push_back({a, r});
        }
    } else {
        throw std::runtime_error("unknown linear model: " + config.model);
    }

    Penalty best_cell = cells.front();
    if (cells.size() > 1) {
        const auto folds = prepare_linear_folds(train, config.folds, seed);
        std::vector<CellScore> scores(cells.size());
        parallel_for(cells.size(), config.workers, [&](std::size_t c) {
            CellScore score;
            score.failed = false;
            double f1 = 0.0, m = 0.0, nnz = 0.0;
            for (const auto& fold : folds) {
                auto [fit, ok] = fit_retry(fold.Ztr, fold.ytr, cells[c], mode);
                if (!ok) {
                    score.failed = true;
                    std::fprintf(stderr,
                                 "[bench] %s cell alpha=%g l1_ratio=%g did not converge at "
                                 "10x iterations; cell excluded\n",
                                 config.model.c_str(), cells[c].alpha, cells[c].l1_ratio);
                    break;
                }
                const auto pred = predict_labels(fit, fold.Zval);
                const auto cm = ConfusionMatrix::from_labels(fold.yval, pred, k);
                f1 += macro_f1(cm);
                m += mcc(cm);
                nnz += nonzero_count(fit);
            }
            if (!score.failed) {
                score.f1 = f1 / static_cast<double>(folds.size());
                score.mcc = m / static_cast<double>(folds.size());
                score.size = nnz / static_cast<double>(folds.size());
            }
            scores[c] = score;
        });
        CellScore best;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cell_better(scores[c], best, config.cv_metric)) {
                best = scores[c];
                best_cell = cells[c];
            }
        }
    }

    const Standardization st = standardize(train.X, test.X);
    auto [fit, ok] = fit_retry(st.train, train.y, best_cell, mode);
    if (!ok) {
        std::fprintf(stderr, "[bench] %s final refit did not converge at 10x iterations\n",
                     config.model.c_str());
    }
    const auto pred = predict_labels(fit, st.other);
    const auto cm = ConfusionMatrix::from_labels(test.y, pred, k);

    SeedOutcome outcome;
    outcome.f1 = macro_f1(cm);
    outcome.mcc = mcc(cm);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "alpha=%g l1_ratio=%g", best_cell.alpha, best_cell.l1_ratio);
    outcome.chosen = buf;
    return outcome;
}

SeedOutcome run_lcen_seed(const Dataset& train, const Dataset& test,
                          const ExperimentConfig& config, std::uint64_t seed) {
    const LcenVariant variant = lcen_variant_from_string(config.model);
    const LcenConfig cfg = make_lcen_config(train.name, variant, config.min_classes,
                                            config.folds, seed, config.full_grid);
    const LcenModel model = fit_lcen(train, cfg);
    const auto pred = lcen_predict_labels(model, test.X);
    const auto cm = ConfusionMatrix::from_labels(test.y, pred, train.n_classes());

    SeedOutcome outcome;
    outcome.f1 = macro_f1(cm);
    outcome.mcc = mcc(cm);
    for (const auto& [name, importance] : selected_raw_features(model, train.feature_names)) {
        outcome.selected.push_back(name);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "degree=%d cutoff=%g alpha1=%g alpha2=%g l1_ratio2=%g%s",
                  model.chosen.degree, model.chosen.cutoff, model.chosen.stage1_alpha,
                  model.chosen.final_alpha, model.chosen.final_l1_ratio,
                  model.no_features_selected ? " [no features selected]" : "");
    outcome.chosen = buf;
    return outcome;
}

struct MlpCell {
    std::vector<int> hidden;
    double lr;
    Activation activation;
    int batch;
    double weight_decay;
    int epochs;
    double gamma;
    std::vector<double> class_weights;
};

std::vector<MlpCell> mlp_grid(const std::string& dataset, int n_features, bool diffmcc,
                              bool full_grid) {
    std::vector<MlpCell> cells;
    const auto weight_menu = class_weight_menu(dataset);
    const std::vector<std::vector<double>> weights =
        full_grid ? (weight_menu.empty() ? std::vector<std::vector<double>>{{}} : weight_menu)
                  : std::vector<std::vector<double>>{
                        weight_menu.empty() ? std::vector<double>{} : weight_menu.front()};

    const auto arch_to_sizes = [n_features](const std::vector<double>& multipliers) {
        std::vector<int> sizes;
        for (const double m : multipliers) {
            sizes.push_back(std::max(1, static_cast<int>(std::lround(m * n_features))));
        }
        return sizes;
    };

    if (full_grid) {
        for (const auto& arch : mlp_architecture_menu()) {
            for (const double lr : {0.0005, 0.001, 0.005, 0.01, 0.05}) {
                for (const Activation act : {Activation::relu, Activation::tanhshrink}) {
                    for (const int batch : {32, 64, 128, 256, 512, 1024, 2048}) {
                        for (const double wd : {0.0, 0.01}) {
                            for (const int epochs : {50, 100}) {
                                for (const double gamma :
                                     diffmcc ? std::vector<double>{1.0, 1.5, 2.0}
                                             : std::vector<double>{1.0}) {
                                    for (const auto& w : weights) {
                                        cells.push_back({arch_to_sizes(arch), lr, act, batch,
                                                         wd, epochs, gamma, w});
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        for (const auto& arch :
             std::vector<std::vector<double>>{{2.0}, {4.0, 2.0}}) {
            for (const double lr : {0.005, 0.05}) {
                for (const auto& w : weights) {
                    cells.push_back({arch_to_sizes(arch), lr, Activation::relu, 64, 0.01, 60,
                                     1.5, w});
                }
            }
        }
    }
    return cells;
}

SeedOutcome run_mlp_seed(const Dataset& train, const Dataset& test,
                         const ExperimentConfig& config, std::uint64_t seed) {
    const int k = train.n_classes();
    const bool diffmcc = (config.model == "mlp_diffmcc");
    const Standardization st = standardize(train.X, test.X);

    Dataset train_std = train;
    train_std.X = st.train;
    Dataset test_std = test;
    test_std.X = st.other;

    SplitPolicy inner_policy;
    inner_policy.kind = SplitKind::stratified_fraction;
    inner_policy.fraction = 0.2;
    inner_policy.seed = seed;
    const auto [inner_train, inner_val] = split(train_std, inner_policy);

    const auto cells = mlp_grid(train.name, static_cast<int>(train.n_features()), diffmcc,
                                config.full_grid);
    const auto make_spec = [&](const MlpCell& cell) {
        MlpSpec spec;
        spec.hidden_sizes = cell.hidden;
        spec.lr = cell.lr;
        spec.activation = cell.activation;
        spec.batch_size = cell.batch;
        spec.weight_decay = cell.weight_decay;
        spec.epochs = cell.epochs;
        spec.gamma = cell.gamma;
        spec.class_weights = cell.class_weights;
        spec.loss = diffmcc ? MlpLoss::diffmcc : MlpLoss::weighted_ce;
        spec.seed = seed;
        return spec;
    };
    const auto validation_score = [&](const TrainedMlp& net, const Dataset& val) {
        const Eigen::MatrixXd probs = mlp_forward(net, val.X).second;
        std::vector<int> pred(static_cast<std::size_t>(probs.rows()));
        for (Eigen::Index i = 0; i < probs.rows(); ++i) {
            Eigen::Index arg = 0;
            probs.row(i).maxCoeff(&arg);
            pred[static_cast<std::size_t>(i)] = static_cast<int>(arg);
        }
        const auto cm = ConfusionMatrix::from_labels(val.y, pred, k);
        return std::make_pair(macro_f1(cm), mcc(cm));
    };

    struct Trained {
        CellScore score;
        TrainedMlp net;
    };
    std::vector<Trained> results(cells.size());
    parallel_for(cells.size(), config.workers, [&](std::size_t c) {
        const MlpSpec spec = make_spec(cells[c]);
        Trained trained;
        if (config.mlp_full_cv) {
            // k-fold per grid cell (the heavyweight protocol, off by default)
            double f1 = 0.0, m = 0.0;
            const auto folds = kfold(train_std.n_samples(), config.folds, seed);
            for (const auto& [tr_idx, val_idx] : folds) {
                const Dataset ftr = train_std.take_rows(tr_idx, "");
                const Dataset fval = train_std.take_rows(val_idx, "");
                const TrainedMlp net = train_mlp(spec, ftr, fval);
                const auto [sf1, smcc] = validation_score(net, fval);
                f1 += sf1;
                m += smcc;
            }
            trained.score.f1 = f1 / static_cast<double>(folds.size());
            trained.score.mcc = m / static_cast<double>(folds.size());
            trained.net = train_mlp(spec, inner_train, inner_val);
        } else {
            trained.net = train_mlp(spec, inner_train, inner_val);
            std::tie(trained.score.f1, trained.score.mcc) =
                validation_score(trained.net, inner_val);
        }
        trained.score.failed = false;
        trained.score.size = static_cast<double>(trained.net.param_count);
        results[c] = std::move(trained);
    });

    std::size_t best_idx = 0;
    CellScore best;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cell_better(results[c].score, best, config.cv_metric)) {
            best = results[c].score;
            best_idx = c;
        }
    }
    const TrainedMlp& net = results[best_idx].net;

    const Eigen::MatrixXd probs = mlp_forward(net, test_std.X).second;
    std::vector<int> pred(static_cast<std::size_t>(probs.rows()));
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        Eigen::Index arg = 0;
        probs.row(i).maxCoeff(&arg);
        pred[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    }
    const auto cm = ConfusionMatrix::from_labels(test_std.y, pred, k);

    SeedOutcome outcome;
    outcome.f1 = macro_f1(cm);
    outcome.mcc = mcc(cm);
    std::string arch = "[";
    for (std::size_t i = 0; i < net.spec.hidden_sizes.size(); ++i) {
        arch += (i ? "," : "") + std::to_string(net.spec.hidden_sizes[i]);
    }
    arch += "]";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "arch=%s lr=%g batch=%d wd=%g epochs=%d params=%ld",
                  arch.c_str(), net.spec.lr, net.spec.batch_size, net.spec.weight_decay,
                  net.spec.epochs, net.param_count);
    outcome.chosen = buf;
    return outcome;
}

SeedOutcome run_seed(const Dataset& dataset, const ExperimentConfig& config,
                     std::uint64_t seed) {
    const SplitPolicy policy = dataset_split_policy(dataset.name, seed);
    const auto [train, test] = split(dataset, policy);

    static const std::vector<std::string> registry_slots = {"svm", "rf", "gbdt", "adab"};
    if (std::find(registry_slots.begin(), registry_slots.end(), config.model) !=
        registry_slots.end()) {
        throw std::runtime_error("model '" + config.model +
                                 "' is a registry slot not implemented in this artifact");
    }
    if (config.model == "lr" || config.model == "lasso" || config.model == "rr" ||
        config.model == "en") {
        return run_linear_seed(train, test, config, seed);
    }
    if (config.model == "mlp_ce" || config.model == "mlp_diffmcc") {
        return run_mlp_seed(train, test, config, seed);
    }
    return run_lcen_seed(train, test, config, seed);
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

std::vector<std::string> most_frequent_selection(const ExperimentResult& result) {
    std::map<std::string, int> counts;
    std::vector<std::string> order;
    for (const auto& per_seed : result.selected_per_seed) {
        for (const auto& name : per_seed) {
            if (counts.emplace(name, 0).second) order.push_back(name);
            ++counts[name];
        }
    }
    const int needed = (static_cast<int>(result.selected_per_seed.size()) + 1) / 2;
    std::vector<std::string> out;
    for (const auto& name : order) {
        if (counts[name] >= needed) out.push_back(name);
    }
    std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
        return counts[a] > counts[b];
    });
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    Dataset dataset = load_benchmark_dataset(config.dataset, config.data_dir);

    std::string feature_note = "all";
    if (config.feature_set == FeatureSetKind::named_list) {
        dataset = dataset.select_features(config.features);
        feature_note = "list";
    } else if (config.feature_set == FeatureSetKind::lcen_selected) {
        ExperimentConfig selector = config;
        selector.feature_set = FeatureSetKind::all;
        selector.model = "lcen";
        const ExperimentResult lcen_run = run_experiment(selector);
        const auto chosen = most_frequent_selection(lcen_run);
        if (chosen.empty()) {
            throw std::runtime_error("lcen selected no features; cannot restrict dataset");
        }
        dataset = dataset.select_features(chosen);
        feature_note = "lcen";
    }

    ExperimentResult result;
    result.dataset = config.dataset;
    result.model = config.model;
    result.feature_note = feature_note;
    result.f1_per_seed.resize(config.seeds.size());
    result.mcc_per_seed.resize(config.seeds.size());
    result.selected_per_seed.resize(config.seeds.size());
    std::vector<std::string> chosen_per_seed(config.seeds.size());

    // Seeds run in parallel when workers allow; outputs land in fixed slots so
    // the aggregate is schedule independent.
    parallel_for(config.seeds.size(), config.workers, [&](std::size_t s) {
        const SeedOutcome outcome = run_seed(dataset, config, config.seeds[s]);
        result.f1_per_seed[s] = outcome.f1;
        result.mcc_per_seed[s] = outcome.mcc;
        result.selected_per_seed[s] = outcome.selected;
        chosen_per_seed[s] = outcome.chosen;
    });

    std::tie(result.f1_mean, result.f1_std) = mean_std(result.f1_per_seed);
    std::tie(result.mcc_mean, result.mcc_std) = mean_std(result.mcc_per_seed);
    for (std::size_t s = 0; s < chosen_per_seed.size(); ++s) {
        result.chosen += (s ? " | " : "") + chosen_per_seed[s];
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

FeatureSelectionStudy feature_selection_study(const ExperimentConfig& base,
                                              const std::vector<std::string>& features,
                                              const std::vector<std::string>& models) {
    FeatureSelectionStudy study;
    std::vector<double> all_metrics_f1, sel_metrics_f1, all_metrics_mcc, sel_metrics_mcc;
    std::vector<double> all_means_f1, sel_means_f1, all_means_mcc, sel_means_mcc;
    for (const auto& model : models) {
        ExperimentConfig cfg = base;
        cfg.model = model;
        cfg.feature_set = FeatureSetKind::all;
        study.all_features.push_back(run_experiment(cfg));
        cfg.feature_set = FeatureSetKind::named_list;
        cfg.features = features;
        study.selected_features.push_back(run_experiment(cfg));

        const auto& a = study.all_features.back();
        const auto& b = study.selected_features.back();
        all_metrics_f1.insert(all_metrics_f1.end(), a.f1_per_seed.begin(), a.f1_per_seed.end());
        sel_metrics_f1.insert(sel_metrics_f1.end(), b.f1_per_seed.begin(), b.f1_per_seed.end());
        all_metrics_mcc.insert(all_metrics_mcc.end(), a.mcc_per_seed.begin(), a.mcc_per_seed.end());
        sel_metrics_mcc.insert(sel_metrics_mcc.end(), b.mcc_per_seed.begin(), b.mcc_per_seed.end());
        all_means_f1.push_back(a.f1_mean);
        sel_means_f1.push_back(b.f1_mean);
        all_means_mcc.push_back(a.mcc_mean);
        sel_means_mcc.push_back(b.mcc_mean);
    }
    study.p_f1 = paired_t_test(sel_metrics_f1, all_metrics_f1);
    study.p_mcc = paired_t_test(sel_metrics_mcc, all_metrics_mcc);
    if (all_means_f1.size() >= 2) {
        study.p_f1_model_means = paired_t_test(sel_means_f1, all_means_f1);
        study.p_mcc_model_means = paired_t_test(sel_means_mcc, all_means_mcc);
    }
    return study;
}

std::vector<ExperimentResult> min_classes_sweep(const ExperimentConfig& base,
                                                const std::vector<int>& values) {
    std::vector<ExperimentResult> out;
    for (const int v : values) {
        ExperimentConfig cfg = base;
        cfg.model = "lcen";
        cfg.min_classes = v;
        ExperimentResult result = run_experiment(cfg);
        result.model = "lcen-" + std::to_string(v);
        out.push_back(std::move(result));
    }
    return out;
}

std::vector<ExperimentResult> ablation_study(const ExperimentConfig& base) {
    std::vector<ExperimentResult> out;
    for (const std::string model : {"lc", "enc", "len", "lcl", "encen", "lcen"}) {
        ExperimentConfig cfg = base;
        cfg.model = model;
        out.push_back(run_experiment(cfg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

}  // namespace

std::string render_report(const std::vector<ExperimentResult>& results, ReportFormat format) {
    if (results.empty()) throw std::runtime_error("render_report: no results");
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "dataset,model,features,f1_mean,f1_std,mcc_mean,mcc_std,selected,chosen\n";
        for (const auto& r : results) {
            std::vector<std::string> per_seed;
            for (const auto& sel : r.selected_per_seed) per_seed.push_back(join(sel, ";"));
            out << r.dataset << ',' << r.model << ',' << r.feature_note << ','
                << fmt1(r.f1_mean) << ',' << fmt1(r.f1_std) << ',' << fmt1(r.mcc_mean) << ','
                << fmt1(r.mcc_std) << ',' << join(per_seed, "|") << ',' << r.chosen << "\n";
        }
    } else {
        out << "| Model | F1 score (%) | MCC (%) | Selected features |\n";
        out << "| --- | --- | --- | --- |\n";
        for (const auto& r : results) {
            const auto frequent = most_frequent_selection(r);
            out << "| " << r.model << " | " << fmt1(r.f1_mean) << "±" << fmt1(r.f1_std)
                << " | " << fmt1(r.mcc_mean) << "±" << fmt1(r.mcc_std) << " | "
                << (frequent.empty() ? std::string("-") : join(frequent, ", ")) << " |\n";
        }
    }
    return out.str();
}

void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 std::ostream& out) {
    out << render_report(results, format);
}

void emit_report_file(const std::vector<ExperimentResult>& results, ReportFormat format,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to " + path);
    out << render_report(results, format);
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<ExperimentResult> parse_csv_report(const std::string& text) {
    const Table table = parse_delimited(text, ',', true);
    const std::vector<std::string> expected = {"dataset", "model",    "features",
                                               "f1_mean", "f1_std",   "mcc_mean",
                                               "mcc_std", "selected", "chosen"};
    if (table.header != expected) {
        throw std::runtime_error("parse_csv_report: unexpected header");
    }
    std::vector<ExperimentResult> out;
    for (const auto& row : table.rows) {
        ExperimentResult r;
        r.dataset = row[0];
        r.model = row[1];
        r.feature_note = row[2];
        r.f1_mean = std::stod(row[3]);
        r.f1_std = std::stod(row[4]);
        r.mcc_mean = std::stod(row[5]);
        r.mcc_std = std::stod(row[6]);
        std::stringstream seeds(row[7]);
        std::string seed_part;
        while (std::getline(seeds, seed_part, '|')) {
            std::vector<std::string> names;
            std::stringstream parts(seed_part);
            std::string name;
            while (std::getline(parts, name, ';')) {
                if (!name.empty()) names.push_back(name);
            }
            r.selected_per_seed.push_back(std::move(names));
        }
        r.chosen = row[8];
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lcenclf

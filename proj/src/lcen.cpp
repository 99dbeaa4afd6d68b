#include "lcenclf/lcen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "lcenclf/metrics.hpp"

namespace lcenclf {

LcenVariant lcen_variant_from_string(const std::string& name) {
    if (name == "lcen") return LcenVariant::LCEN;
    if (name == "lc") return LcenVariant::LC;
    if (name == "enc") return LcenVariant::ENC;
    if (name == "len") return LcenVariant::LEN;
    if (name == "lcl") return LcenVariant::LCL;
    if (name == "encen") return LcenVariant::ENCEN;
    throw std::runtime_error("unknown LCEN variant: " + name);
}

std::string to_string(LcenVariant variant) {
    switch (variant) {
        case LcenVariant::LCEN: return "lcen";
        case LcenVariant::LC: return "lc";
        case LcenVariant::ENC: return "enc";
        case LcenVariant::LEN: return "len";
        case LcenVariant::LCL: return "lcl";
        case LcenVariant::ENCEN: return "encen";
    }
    return "?";
}

std::vector<std::vector<bool>> clip_step(const LogisticFit& fit, double cutoff) {
    std::vector<std::vector<bool>> masks;
    masks.reserve(static_cast<std::size_t>(fit.W.rows()));
    for (Eigen::Index r = 0; r < fit.W.rows(); ++r) {
        const double w_max = fit.W.row(r).cwiseAbs().maxCoeff();
        std::vector<bool> mask(static_cast<std::size_t>(fit.W.cols()), false);
        if (w_max > 0.0) {
            for (Eigen::Index j = 0; j < fit.W.cols(); ++j) {
                const double w = std::abs(fit.W(r, j));
                mask[static_cast<std::size_t>(j)] = (w > 0.0) && (w / w_max >= cutoff);
            }
        }
        masks.push_back(std::move(mask));
    }
    return masks;
}

std::vector<bool> harmonize(const std::vector<std::vector<bool>>& masks, int min_classes) {
    if (masks.empty()) throw std::runtime_error("harmonize: no masks");
    if (min_classes < 1 || min_classes > static_cast<int>(masks.size())) {
        throw std::runtime_error("harmonize: min_classes must be in [1, K]");
    }
    const std::size_t p = masks.front().size();
    std::vector<bool> out(p, false);
    for (std::size_t j = 0; j < p; ++j) {
        int count = 0;
        for (const auto& mask : masks) count += mask[j] ? 1 : 0;
        out[j] = count >= min_classes;
    }
    return out;
}

namespace {

struct Score {
    double f1 = -1.0;
    double mcc = -200.0;
    double size = 0.0;  // mean nonzeros / selected features, for tie-breaks
    bool failed = true;
};

/// a strictly preferable to b: higher F1, then higher MCC, then smaller model.
bool better(const Score& a, const Score& b) {
    if (a.failed != b.failed) return !a.failed;
    if (a.f1 != b.f1) return a.f1 > b.f1;
    if (a.mcc != b.mcc) return a.mcc > b.mcc;
    return a.size < b.size;
}

struct FoldData {
    Eigen::MatrixXd Ztr, Zval;     // standardized, usable columns only
    std::vector<int> ytr, yval;
    std::vector<int> local_of;     // P-sized: global column -> local index or -1
};

constexpr double kStdFloor = 1e-12;

std::vector<int> usable_columns(const Eigen::MatrixXd& Z) {
    std::vector<int> usable;
    for (Eigen::Index j = 0; j < Z.cols(); ++j) {
        const double mean = Z.col(j).mean();
        const double ss = (Z.col(j).array() - mean).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(Z.rows() - 1));
        if (sd >= kStdFloor * std::max(1.0, std::abs(mean))) usable.push_back(static_cast<int>(j));
    }
    return usable;
}

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& Z, const std::vector<int>& cols) {
    Eigen::MatrixXd out(Z.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = Z.col(cols[j]);
    }
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& y, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (const int i : idx) out.push_back(y[static_cast<std::size_t>(i)]);
    return out;
}

FoldData prepare_fold(const Eigen::MatrixXd& Z, const std::vector<int>& y,
                      const std::vector<int>& train_idx, const std::vector<int>& val_idx) {
    FoldData fold;
    fold.ytr = gather_labels(y, train_idx);
    fold.yval = gather_labels(y, val_idx);

    Eigen::MatrixXd tr(static_cast<Eigen::Index>(train_idx.size()), Z.cols());
    for (std::size_t r = 0; r < train_idx.size(); ++r) tr.row(static_cast<Eigen::Index>(r)) = Z.row(train_idx[r]);
    Eigen::MatrixXd va(static_cast<Eigen::Index>(val_idx.size()), Z.cols());
    for (std::size_t r = 0; r < val_idx.size(); ++r) va.row(static_cast<Eigen::Index>(r)) = Z.row(val_idx[r]);

    const std::vector<int> usable = usable_columns(tr);
    fold.local_of.assign(static_cast<std::size_t>(Z.cols()), -1);
    for (std::size_t j = 0; j < usable.size(); ++j) {
        fold.local_of[static_cast<std::size_t>(usable[j])] = static_cast<int>(j);
    }
    const Standardization st = standardize(gather_columns(tr, usable), gather_columns(va, usable));
    fold.Ztr = st.train;
    fold.Zval = st.other;
    return fold;
}

std::pair<LogisticFit, bool> fit_with_retry(const Eigen::MatrixXd& Z, const std::vector<int>& y,
                                            const Penalty& penalty, FitMode mode,
                                            const FitOptions& options) {
    LogisticFit fit = fit_logistic(Z, y, penalty, mode, options);
    if (fit.converged) return {std::move(fit), true};
    FitOptions extended = options;
    extended.max_iter = options.max_iter * 10;
    fit = fit_logistic(Z, y, penalty, mode, extended);
    return {fit, fit.converged};
}

LogisticFit intercept_only_fit(const std::vector<int>& y, int k, FitMode mode) {
    LogisticFit fit;
    fit.mode = mode;
    fit.n_classes = k;
    fit.converged = true;
    const int rows = (mode == FitMode::binary) ? 1 : k;
    fit.W = Eigen::MatrixXd::Zero(rows, 0);
    fit.b.resize(rows);
    const double n = static_cast<double>(y.size());
    auto logit = [](double p) {
        p = std::clamp(p, 1e-12, 1.0 - 1e-12);
        return std::log(p / (1.0 - p));
    };
    if (mode == FitMode::binary) {
        double pos = 0.0;
        for (const int label : y) pos += label;
        fit.b(0) = logit(pos / n);
    } else {
        for (int c = 0; c < k; ++c) {
            double count = 0.0;
            for (const int label : y) count += (label == c) ? 1.0 : 0.0;
            fit.b(c) = logit(count / n);
        }
    }
    return fit;
}

std::pair<double, double> score_fit(const LogisticFit& fit, const Eigen::MatrixXd& Zval,
                                    const std::vector<int>& yval, int k) {
    const std::vector<int> pred = predict_labels(fit, Zval);
    const ConfusionMatrix cm = ConfusionMatrix::from_labels(yval, pred, k);
    return {macro_f1(cm), mcc(cm)};
}

double mean_nonzeros(const LogisticFit& fit) {
    double nnz = 0.0;
    for (Eigen::Index r = 0; r < fit.W.rows(); ++r) {
        for (Eigen::Index j = 0; j < fit.W.cols(); ++j) {
            if (fit.W(r, j) != 0.0) nnz += 1.0;
        }
    }
    return nnz;
}

struct GridCell {
    double alpha = 0.0;
    double l1_ratio = 1.0;
};

std::vector<GridCell> stage_grid(const std::vector<double>& alphas,
                                 const std::vector<double>& ratios, bool elastic) {
    std::vector<GridCell> cells;
    for (const double a : alphas) {
        if (elastic) {
            for (const double r : ratios) cells.push_back({a, r});
        } else {
            cells.push_back({a, 1.0});
        }
    }
    return cells;
}

/// Map a mask over usable (local) columns back to global column indices.
std::vector<bool> to_global(const std::vector<bool>& local_mask,
                            const std::vector<int>& usable, std::size_t p) {
    std::vector<bool> out(p, false);
    for (std::size_t j = 0; j < local_mask.size(); ++j) {
        if (local_mask[j]) out[static_cast<std::size_t>(usable[j])] = true;
    }
    return out;
}

}  // namespace

LcenModel fit_lcen(const Dataset& train, const LcenConfig& config) {
    const int k = train.n_classes();
    const long n = train.n_samples();
    if (config.degree_grid.empty() || config.alpha_grid.empty() || config.cutoff_grid.empty()) {
        throw std::runtime_error("fit_lcen: empty hyperparameter grid");
    }
    if (config.min_classes_selected < 1 || config.min_classes_selected > k) {
        throw std::runtime_error("fit_lcen: min_classes_selected must be in [1, K]");
    }
    for (const double c : config.cutoff_grid) {
        if (c < 0.0 || c > 1.0) throw std::runtime_error("fit_lcen: cutoff outside [0,1]");
    }
    const bool binary = (k == 2);
    const FitMode mode = binary ? FitMode::binary : FitMode::one_vs_rest;
    const LcenVariant variant = config.variant;
    const bool stage1_elastic = (variant == LcenVariant::ENC || variant == LcenVariant::ENCEN);
    const bool stage2_cv = !(variant == LcenVariant::LC || variant == LcenVariant::ENC);
    const bool stage2_elastic = (variant == LcenVariant::LCEN || variant == LcenVariant::LEN ||
                                 variant == LcenVariant::ENCEN);
    if ((stage1_elastic || stage2_elastic) && config.l1_ratio_grid.empty()) {
        throw std::runtime_error("fit_lcen: variant needs a nonempty l1_ratio grid");
    }
    const std::vector<double> cutoffs =
        (variant == LcenVariant::LEN) ? std::vector<double>{0.0} : config.cutoff_grid;

    const auto folds = kfold(n, config.cv_folds, config.seed);

    struct Candidate {
        Score score;
        LcenChoice choice;
        std::vector<bool> final_mask;                    // global
        std::vector<std::vector<bool>> per_class_masks;  // global
        bool empty_mask = false;
    };
    Candidate best;
    LcenModel model;
    model.n_raw_features = static_cast<int>(train.n_features());
    model.n_classes = k;

    for (const int degree : config.degree_grid) {
        ExpandedDesign design = expand_features(train.X, degree);
        const std::size_t p = design.names.size();

        std::vector<FoldData> fold_data;
        fold_data.reserve(folds.size());
        for (const auto& [tr_idx, val_idx] : folds) {
            fold_data.push_back(prepare_fold(design.Z, train.y, tr_idx, val_idx));
        }

        // Stage 1: cross-validate the selection fit over the expanded design.
        const auto stage1_cells = stage_grid(config.alpha_grid, config.l1_ratio_grid, stage1_elastic);
        Score best1;
        GridCell best1_cell;
        for (const auto& cell : stage1_cells) {
            Score score;
            score.failed = false;
            double f1 = 0.0, m = 0.0, nnz = 0.0;
            for (const auto& fold : fold_data) {
                auto [fit, ok] = fit_with_retry(fold.Ztr, fold.ytr, {cell.alpha, cell.l1_ratio},
                                                mode, config.fit_options);
                if (!ok) {
                    score.failed = true;
                    model.log.push_back("stage1 cell alpha=" + std::to_string(cell.alpha) +
                                        " did not converge; cell excluded");
                    break;
                }
                const auto [sf1, smcc] = score_fit(fit, fold.Zval, fold.yval, k);
                f1 += sf1;
                m += smcc;
                nnz += mean_nonzeros(fit);
            }
            if (!score.failed) {
                const double nf = static_cast<double>(fold_data.size());
                score.f1 = f1 / nf;
                score.mcc = m / nf;
                score.size = nnz / nf;
            }
            if (better(score, best1)) {
                best1 = score;
                best1_cell = cell;
            }
        }
        if (best1.failed) {
            model.log.push_back("stage1: no converged cell at degree " + std::to_string(degree) +
                                "; best-effort cell used");
        }

        // Per-fold selection fits at the chosen stage-1 cell: the cutoff is
        // selected here, by validation score of the clipped fit itself (no
        // refit), before the refit stage runs once on the winning mask.
        std::vector<LogisticFit> fold_fits;
        fold_fits.reserve(fold_data.size());
        for (const auto& fold : fold_data) {
            fold_fits.push_back(fit_with_retry(fold.Ztr, fold.ytr,
                                               {best1_cell.alpha, best1_cell.l1_ratio}, mode,
                                               config.fit_options)
                                    .first);
        }
        Score best_cut;
        double best_cutoff = cutoffs.front();
        for (const double cutoff : cutoffs) {
            Score score;
            score.failed = false;
            double f1 = 0.0, m = 0.0, selected = 0.0;
            for (std::size_t f = 0; f < fold_data.size(); ++f) {
                const auto fold_masks = clip_step(fold_fits[f], cutoff);
                const std::vector<bool> fold_final =
                    binary ? fold_masks.front()
                           : harmonize(fold_masks, config.min_classes_selected);
                LogisticFit clipped = fold_fits[f];
                for (Eigen::Index r = 0; r < clipped.W.rows(); ++r) {
                    for (Eigen::Index j = 0; j < clipped.W.cols(); ++j) {
                        if (!fold_final[static_cast<std::size_t>(j)]) clipped.W(r, j) = 0.0;
                    }
                }
                const auto [sf1, smcc] = score_fit(clipped, fold_data[f].Zval,
                                                   fold_data[f].yval, k);
                f1 += sf1;
                m += smcc;
                selected += static_cast<double>(
                    std::count(fold_final.begin(), fold_final.end(), true));
            }
            const double nf = static_cast<double>(fold_data.size());
            score.f1 = f1 / nf;
            score.mcc = m / nf;
            score.size = selected / nf;
            if (better(score, best_cut)) {
                best_cut = score;
                best_cutoff = cutoff;
            }
        }

        // Full-train stage-1 fit and the clip/harmonize step at the chosen cutoff.
        const std::vector<int> usable_full = usable_columns(design.Z);
        const Standardization full_std = standardize(gather_columns(design.Z, usable_full));
        const LogisticFit stage1_full =
            fit_with_retry(full_std.train, train.y, {best1_cell.alpha, best1_cell.l1_ratio},
                           mode, config.fit_options)
                .first;
        const auto local_masks = clip_step(stage1_full, best_cutoff);
        std::vector<std::vector<bool>> global_masks;
        global_masks.reserve(local_masks.size());
        for (const auto& mask : local_masks) {
            global_masks.push_back(to_global(mask, usable_full, p));
        }
        const std::vector<bool> final_mask =
            binary ? global_masks.front()
                   : harmonize(global_masks, config.min_classes_selected);
        const long n_selected = std::count(final_mask.begin(), final_mask.end(), true);

        // Refit stage on the surviving columns: a cross-validated grid for
        // LCEN/LEN/LCL, a plain refit at the stage-1 penalty for LC/ENC.
        Score stage2_score;
        GridCell stage2_cell = best1_cell;
        if (n_selected == 0) {
            stage2_score.failed = false;
            double f1 = 0.0, m = 0.0;
            for (const auto& fold : fold_data) {
                const LogisticFit fit = intercept_only_fit(fold.ytr, k, mode);
                const Eigen::MatrixXd empty(static_cast<Eigen::Index>(fold.yval.size()), 0);
                const auto [sf1, smcc] = score_fit(fit, empty, fold.yval, k);
                f1 += sf1;
                m += smcc;
            }
            stage2_score.f1 = f1 / static_cast<double>(fold_data.size());
            stage2_score.mcc = m / static_cast<double>(fold_data.size());
            stage2_score.size = 0.0;
        } else {
            std::vector<int> cols_global;
            for (std::size_t j = 0; j < p; ++j) {
                if (final_mask[j]) cols_global.push_back(static_cast<int>(j));
            }
            const auto stage2_cells =
                stage2_cv ? stage_grid(config.alpha_grid, config.l1_ratio_grid, stage2_elastic)
                          : std::vector<GridCell>{best1_cell};
            for (const auto& cell : stage2_cells) {
                Score score;
                score.failed = false;
                double f1 = 0.0, m = 0.0, nnz = 0.0;
                for (const auto& fold : fold_data) {
                    std::vector<int> local_cols;
                    for (const int gcol : cols_global) {
                        const int lcol = fold.local_of[static_cast<std::size_t>(gcol)];
                        if (lcol >= 0) local_cols.push_back(lcol);
                    }
                    const Eigen::MatrixXd ztr = gather_columns(fold.Ztr, local_cols);
                    const Eigen::MatrixXd zval = gather_columns(fold.Zval, local_cols);
                    auto [fit, ok] = fit_with_retry(ztr, fold.ytr, {cell.alpha, cell.l1_ratio},
                                                    mode, config.fit_options);
                    if (!ok) {
                        score.failed = true;
                        model.log.push_back("stage2 cell alpha=" + std::to_string(cell.alpha) +
                                            " l1_ratio=" + std::to_string(cell.l1_ratio) +
                                            " did not converge; cell excluded");
                        break;
                    }
                    const auto [sf1, smcc] = score_fit(fit, zval, fold.yval, k);
                    f1 += sf1;
                    m += smcc;
                    nnz += mean_nonzeros(fit);
                }
                if (!score.failed) {
                    const double nf = static_cast<double>(fold_data.size());
                    score.f1 = f1 / nf;
                    score.mcc = m / nf;
                    score.size = nnz / nf;
                }
                if (better(score, stage2_score)) {
                    stage2_score = score;
                    stage2_cell = cell;
                }
            }
        }

        Candidate candidate;
        candidate.score = stage2_score;
        candidate.score.size = static_cast<double>(n_selected);
        candidate.choice.degree = degree;
        candidate.choice.cutoff = best_cutoff;
        candidate.choice.stage1_alpha = best1_cell.alpha;
        candidate.choice.stage1_l1_ratio = best1_cell.l1_ratio;
        candidate.choice.final_alpha = stage2_cell.alpha;
        candidate.choice.final_l1_ratio = stage2_cell.l1_ratio;
        candidate.final_mask = final_mask;
        candidate.per_class_masks = global_masks;
        candidate.empty_mask = (n_selected == 0);
        if (better(candidate.score, best.score)) {
            best = std::move(candidate);
        }
    }

    // Final refit on the full training set at the chosen configuration.
    ExpandedDesign design = expand_features(train.X, best.choice.degree);
    model.chosen = best.choice;
    model.cv_score = best.score.f1;
    model.per_class_masks = best.per_class_masks;
    model.final_mask = best.final_mask;
    model.expanded_names = design.names;
    model.parent_map = design.parent_map;
    model.no_features_selected = best.empty_mask;

    if (best.empty_mask) {
        model.final_fit = intercept_only_fit(train.y, k, mode);
        model.log.push_back("no features selected; intercept-only fallback");
        return model;
    }

    for (std::size_t j = 0; j < best.final_mask.size(); ++j) {
        if (best.final_mask[j]) model.surviving_columns.push_back(static_cast<int>(j));
    }
    const Standardization st =
        standardize(gather_columns(design.Z, model.surviving_columns));
    model.col_mean = st.mean;
    model.col_std = st.stddev;
    auto [final_fit, ok] =
        fit_with_retry(st.train, train.y,
                       {best.choice.final_alpha, best.choice.final_l1_ratio}, mode,
                       config.fit_options);
    if (!ok) model.log.push_back("final refit did not converge at 10x iteration cap");
    model.final_fit = std::move(final_fit);

    std::vector<std::pair<std::string, double>> importance;
    for (std::size_t j = 0; j < model.surviving_columns.size(); ++j) {
        const double imp = model.final_fit.W.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff();
        importance.emplace_back(model.expanded_names[static_cast<std::size_t>(model.surviving_columns[j])], imp);
    }
    std::stable_sort(importance.begin(), importance.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    model.feature_importance = std::move(importance);
    return model;
}

Eigen::MatrixXd lcen_predict_proba(const LcenModel& model, const Eigen::MatrixXd& X_raw) {
    if (static_cast<int>(X_raw.cols()) != model.n_raw_features) {
        throw std::runtime_error("lcen_predict_proba: raw feature count mismatch");
    }
    if (model.surviving_columns.empty()) {
        const Eigen::MatrixXd empty(X_raw.rows(), 0);
        return predict_proba(model.final_fit, empty);
    }
    const ExpandedDesign design = expand_features(X_raw, model.chosen.degree);
    Eigen::MatrixXd Z(X_raw.rows(), static_cast<Eigen::Index>(model.surviving_columns.size()));
    for (std::size_t j = 0; j < model.surviving_columns.size(); ++j) {
        Z.col(static_cast<Eigen::Index>(j)) =
            (design.Z.col(model.surviving_columns[j]).array() - model.col_mean(static_cast<Eigen::Index>(j))) /
            model.col_std(static_cast<Eigen::Index>(j));
    }
    return predict_proba(model.final_fit, Z);
}

std::vector<int> lcen_predict_labels(const LcenModel& model, const Eigen::MatrixXd& X_raw) {
    const Eigen::MatrixXd probs = lcen_predict_proba(model, X_raw);
    std::vector<int> labels(static_cast<std::size_t>(probs.rows()));
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        Eigen::Index arg = 0;
        probs.row(i).maxCoeff(&arg);
        labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    }
    return labels;
}

std::vector<std::pair<std::string, double>>
selected_raw_features(const LcenModel& model, const std::vector<std::string>& raw_feature_names) {
    std::vector<double> importance(raw_feature_names.size(), -1.0);
    for (std::size_t j = 0; j < model.surviving_columns.size(); ++j) {
        const int gcol = model.surviving_columns[j];
        const double imp =
            model.final_fit.W.cols() > 0
                ? model.final_fit.W.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff()
                : 0.0;
        for (const int raw : model.parent_map[static_cast<std::size_t>(gcol)]) {
            importance[static_cast<std::size_t>(raw)] =
                std::max(importance[static_cast<std::size_t>(raw)], imp);
        }
    }
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t f = 0; f < raw_feature_names.size(); ++f) {
        if (importance[f] >= 0.0) out.emplace_back(raw_feature_names[f], importance[f]);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

std::string lcen_report(const LcenModel& model, const std::vector<std::string>& raw_feature_names,
                        const std::vector<std::string>& class_names) {
    char buf[256];
    std::string out;
    out += "LCEN model report\n";
    std::snprintf(buf, sizeof(buf),
                  "chosen: degree=%d cutoff=%g stage1_alpha=%g final_alpha=%g final_l1_ratio=%g\n",
                  model.chosen.degree, model.chosen.cutoff, model.chosen.stage1_alpha,
                  model.chosen.final_alpha, model.chosen.final_l1_ratio);
    out += buf;
    if (model.no_features_selected) {
        out += "no features selected: intercept-only model\n";
        return out;
    }
    out += "surviving derived features (importance = max |standardized coefficient|):\n";
    for (const auto& [name, imp] : model.feature_importance) {
        std::snprintf(buf, sizeof(buf), "  %-24s %.6f\n", name.c_str(), imp);
        out += buf;
    }
    out += "selected raw features, most important first:\n";
    for (const auto& [name, imp] : selected_raw_features(model, raw_feature_names)) {
        std::snprintf(buf, sizeof(buf), "  %-24s %.6f\n", name.c_str(), imp);
        out += buf;
    }
    // De-standardized closed form: w/sigma per monomial, intercept absorbs the means.
    for (Eigen::Index r = 0; r < model.final_fit.W.rows(); ++r) {
        const std::string label =
            (model.final_fit.mode == FitMode::binary)
                ? (class_names.size() > 1 ? class_names[1] : "positive")
                : class_names[static_cast<std::size_t>(r)];
        double intercept = model.final_fit.b(r);
        for (std::size_t j = 0; j < model.surviving_columns.size(); ++j) {
            intercept -= model.final_fit.W(r, static_cast<Eigen::Index>(j)) *
                         model.col_mean(static_cast<Eigen::Index>(j)) /
                         model.col_std(static_cast<Eigen::Index>(j));
        }
        std::snprintf(buf, sizeof(buf), "logit(%s) = %.6g", label.c_str(), intercept);
        out += buf;
        for (std::size_t j = 0; j < model.surviving_columns.size(); ++j) {
            const double coef = model.final_fit.W(r, static_cast<Eigen::Index>(j)) /
                                model.col_std(static_cast<Eigen::Index>(j));
            if (coef == 0.0) continue;
            std::snprintf(buf, sizeof(buf), " %c %.6g*%s", coef >= 0.0 ? '+' : '-',
                          std::abs(coef),
                          model.expanded_names[static_cast<std::size_t>(model.surviving_columns[j])].c_str());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace lcenclf

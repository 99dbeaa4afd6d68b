// Python bindings for the core operations: data handling, feature expansion,
// penalized logistic fits, the LCEN pipeline, metrics, losses, and the MLP
// trainer.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcenclf/bench.hpp"
#include "lcenclf/dataset.hpp"
#include "lcenclf/expand.hpp"
#include "lcenclf/lcen.hpp"
#include "lcenclf/logistic.hpp"
#include "lcenclf/metrics.hpp"
#include "lcenclf/mlp.hpp"

namespace py = pybind11;
using namespace lcenclf;

namespace {

ConfusionMatrix cm_from(const std::vector<int>& y_true, const std::vector<int>& y_pred, int k) {
    return ConfusionMatrix::from_labels(y_true, y_pred, k);
}

}  // namespace

PYBIND11_MODULE(_lcenclf, m) {
    m.doc() = "LCEN classification pipeline, losses, metrics, and benchmark harness";

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("name", &Dataset::name)
        .def_readwrite("X", &Dataset::X)
        .def_readwrite("y", &Dataset::y)
        .def_readwrite("feature_names", &Dataset::feature_names)
        .def_readwrite("class_names", &Dataset::class_names)
        .def_readwrite("provenance", &Dataset::provenance)
        .def("n_classes", &Dataset::n_classes)
        .def("select_features", &Dataset::select_features)
        .def("validate", &Dataset::validate);

    py::enum_<SplitKind>(m, "SplitKind")
        .value("random_fraction", SplitKind::random_fraction)
        .value("last_n_rows", SplitKind::last_n_rows)
        .value("stratified_fraction", SplitKind::stratified_fraction);

    py::class_<SplitPolicy>(m, "SplitPolicy")
        .def(py::init<>())
        .def_readwrite("kind", &SplitPolicy::kind)
        .def_readwrite("fraction", &SplitPolicy::fraction)
        .def_readwrite("n", &SplitPolicy::n)
        .def_readwrite("seed", &SplitPolicy::seed);

    m.def("load_dataset", &load_dataset, py::arg("name"), py::arg("csv_path"));
    m.def("make_synthetic", &make_synthetic, py::arg("n"), py::arg("d"),
          py::arg("d_informative"), py::arg("class_fractions"), py::arg("seed"));
    m.def("synthetic_informative_columns", &synthetic_informative_columns);
    m.def("split", &split, py::arg("dataset"), py::arg("policy"));
    m.def("kfold", &kfold, py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def(
        "one_hot_encode",
        [](const std::vector<std::string>& column) {
            std::vector<std::string> levels;
            Eigen::MatrixXd out = one_hot_encode(column, &levels);
            return py::make_tuple(out, levels);
        },
        py::arg("column"));
    m.def(
        "standardize",
        [](const Eigen::MatrixXd& train, const Eigen::MatrixXd& other) {
            const Standardization st = standardize(train, other);
            return py::make_tuple(st.train, st.other, st.mean, st.stddev);
        },
        py::arg("train_X"), py::arg("other_X") = Eigen::MatrixXd());

    py::class_<ExpandedDesign>(m, "ExpandedDesign")
        .def_readonly("Z", &ExpandedDesign::Z)
        .def_readonly("names", &ExpandedDesign::names)
        .def_readonly("parent_map", &ExpandedDesign::parent_map)
        .def_readonly("degree", &ExpandedDesign::degree)
        .def_readonly("lag", &ExpandedDesign::lag);
    m.def("expand_features", &expand_features, py::arg("X"), py::arg("degree"),
          py::arg("lag") = 0);
    m.def("parse_derivation", &parse_derivation);

    py::class_<Penalty>(m, "Penalty")
        .def(py::init<double, double>(), py::arg("alpha") = 0.0, py::arg("l1_ratio") = 1.0)
        .def_readwrite("alpha", &Penalty::alpha)
        .def_readwrite("l1_ratio", &Penalty::l1_ratio);

    py::enum_<FitMode>(m, "FitMode")
        .value("binary", FitMode::binary)
        .value("one_vs_rest", FitMode::one_vs_rest);

    py::class_<LogisticFit>(m, "LogisticFit")
        .def_readonly("W", &LogisticFit::W)
        .def_readonly("b", &LogisticFit::b)
        .def_readonly("converged", &LogisticFit::converged)
        .def_readonly("n_iter", &LogisticFit::n_iter)
        .def_readonly("objective", &LogisticFit::objective)
        .def_readonly("n_classes", &LogisticFit::n_classes);
    m.def(
        "fit_logistic",
        [](const Eigen::MatrixXd& Z, const std::vector<int>& y, double alpha, double l1_ratio,
           FitMode mode, double tol, int max_iter) {
            FitOptions options;
            options.tol = tol;
            options.max_iter = max_iter;
            return fit_logistic(Z, y, {alpha, l1_ratio}, mode, options);
        },
        py::arg("Z"), py::arg("y"), py::arg("alpha"), py::arg("l1_ratio"),
        py::arg("mode") = FitMode::binary, py::arg("tol") = 1e-6, py::arg("max_iter") = 10000);
    m.def("predict_proba", &predict_proba, py::arg("fit"), py::arg("Z"));
    m.def("predict_labels", &predict_labels, py::arg("fit"), py::arg("Z"));

    py::enum_<LcenVariant>(m, "LcenVariant")
        .value("LCEN", LcenVariant::LCEN)
        .value("LC", LcenVariant::LC)
        .value("ENC", LcenVariant::ENC)
        .value("LEN", LcenVariant::LEN)
        .value("LCL", LcenVariant::LCL)
        .value("ENCEN", LcenVariant::ENCEN);

    py::class_<LcenConfig>(m, "LcenConfig")
        .def(py::init<>())
        .def_readwrite("degree_grid", &LcenConfig::degree_grid)
        .def_readwrite("cutoff_grid", &LcenConfig::cutoff_grid)
        .def_readwrite("alpha_grid", &LcenConfig::alpha_grid)
        .def_readwrite("l1_ratio_grid", &LcenConfig::l1_ratio_grid)
        .def_readwrite("min_classes_selected", &LcenConfig::min_classes_selected)
        .def_readwrite("variant", &LcenConfig::variant)
        .def_readwrite("cv_folds", &LcenConfig::cv_folds)
        .def_readwrite("seed", &LcenConfig::seed);

    py::class_<LcenChoice>(m, "LcenChoice")
        .def_readonly("degree", &LcenChoice::degree)
        .def_readonly("cutoff", &LcenChoice::cutoff)
        .def_readonly("stage1_alpha", &LcenChoice::stage1_alpha)
        .def_readonly("final_alpha", &LcenChoice::final_alpha)
        .def_readonly("final_l1_ratio", &LcenChoice::final_l1_ratio);

    py::class_<LcenModel>(m, "LcenModel")
        .def_readonly("per_class_masks", &LcenModel::per_class_masks)
        .def_readonly("final_mask", &LcenModel::final_mask)
        .def_readonly("chosen", &LcenModel::chosen)
        .def_readonly("cv_score", &LcenModel::cv_score)
        .def_readonly("no_features_selected", &LcenModel::no_features_selected)
        .def_readonly("surviving_columns", &LcenModel::surviving_columns)
        .def_readonly("expanded_names", &LcenModel::expanded_names)
        .def_readonly("feature_importance", &LcenModel::feature_importance)
        .def("predict_proba", &lcen_predict_proba)
        .def("predict_labels", &lcen_predict_labels);

    m.def(
        "clip_step",
        [](const LogisticFit& fit, double cutoff) { return clip_step(fit, cutoff); },
        py::arg("fit"), py::arg("cutoff"));
    m.def("harmonize", &harmonize, py::arg("masks"), py::arg("min_classes"));
    m.def("fit_lcen", &fit_lcen, py::arg("train"), py::arg("config"));
    m.def("selected_raw_features", &selected_raw_features, py::arg("model"),
          py::arg("raw_feature_names"));
    m.def("lcen_report", &lcen_report, py::arg("model"), py::arg("raw_feature_names"),
          py::arg("class_names"));

    m.def(
        "macro_f1",
        [](const std::vector<int>& y_true, const std::vector<int>& y_pred, int k) {
            return macro_f1(cm_from(y_true, y_pred, k));
        },
        py::arg("y_true"), py::arg("y_pred"), py::arg("n_classes"));
    m.def(
        "mcc",
        [](const std::vector<int>& y_true, const std::vector<int>& y_pred, int k) {
            return mcc(cm_from(y_true, y_pred, k));
        },
        py::arg("y_true"), py::arg("y_pred"), py::arg("n_classes"));
    m.def("paired_t_test", &paired_t_test, py::arg("a"), py::arg("b"));
    m.def(
        "tukey_hsd",
        [](const std::vector<std::vector<double>>& groups) {
            const TukeyResult result = tukey_hsd(groups);
            return py::make_tuple(result.p, result.degenerate);
        },
        py::arg("groups"));
    m.def("student_t_cdf", &student_t_cdf);
    m.def("studentized_range_cdf", &studentized_range_cdf);

    py::enum_<Activation>(m, "Activation")
        .value("relu", Activation::relu)
        .value("tanhshrink", Activation::tanhshrink);
    py::enum_<MlpLoss>(m, "MlpLoss")
        .value("weighted_ce", MlpLoss::weighted_ce)
        .value("diffmcc", MlpLoss::diffmcc);

    py::class_<MlpSpec>(m, "MlpSpec")
        .def(py::init<>())
        .def_readwrite("hidden_sizes", &MlpSpec::hidden_sizes)
        .def_readwrite("activation", &MlpSpec::activation)
        .def_readwrite("lr", &MlpSpec::lr)
        .def_readwrite("weight_decay", &MlpSpec::weight_decay)
        .def_readwrite("batch_size", &MlpSpec::batch_size)
        .def_readwrite("epochs", &MlpSpec::epochs)
        .def_readwrite("warmup_epochs", &MlpSpec::warmup_epochs)
        .def_readwrite("lr_floor_ratio", &MlpSpec::lr_floor_ratio)
        .def_readwrite("class_weights", &MlpSpec::class_weights)
        .def_readwrite("loss", &MlpSpec::loss)
        .def_readwrite("gamma", &MlpSpec::gamma)
        .def_readwrite("seed", &MlpSpec::seed);

    py::class_<TrainedMlp>(m, "TrainedMlp")
        .def_readonly("train_loss_curve", &TrainedMlp::train_loss_curve)
        .def_readonly("param_count", &TrainedMlp::param_count)
        .def_readonly("best_val_f1", &TrainedMlp::best_val_f1)
        .def_readonly("best_epoch", &TrainedMlp::best_epoch)
        .def("forward", [](const TrainedMlp& net, const Eigen::MatrixXd& batch) {
            const auto [logits, probs] = mlp_forward(net, batch);
            return py::make_tuple(logits, probs);
        });

    m.def(
        "weighted_ce_loss",
        [](const Eigen::MatrixXd& probs, const std::vector<int>& labels,
           const Eigen::VectorXd& class_weights) {
            const LossValue loss = weighted_ce_loss(probs, labels, class_weights);
            return py::make_tuple(loss.value, loss.grad_logits, loss.flagged);
        },
        py::arg("probs"), py::arg("labels"), py::arg("class_weights") = Eigen::VectorXd());
    m.def(
        "diffmcc_loss",
        [](const Eigen::MatrixXd& probs, const std::vector<int>& labels,
           const Eigen::VectorXd& class_weights, double gamma) {
            const LossValue loss = diffmcc_loss(probs, labels, class_weights, gamma);
            return py::make_tuple(loss.value, loss.grad_logits, loss.flagged);
        },
        py::arg("probs"), py::arg("labels"), py::arg("class_weights") = Eigen::VectorXd(),
        py::arg("gamma") = 1.0);
    m.def("lr_at_epoch", &lr_at_epoch, py::arg("spec"), py::arg("epoch"));
    m.def("train_mlp", &train_mlp, py::arg("spec"), py::arg("train"), py::arg("val"));
    m.def("save_checkpoint", &save_checkpoint);
    m.def("load_checkpoint", &load_checkpoint);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("dataset", &ExperimentResult::dataset)
        .def_readonly("model", &ExperimentResult::model)
        .def_readonly("f1_per_seed", &ExperimentResult::f1_per_seed)
        .def_readonly("mcc_per_seed", &ExperimentResult::mcc_per_seed)
        .def_readonly("f1_mean", &ExperimentResult::f1_mean)
        .def_readonly("f1_std", &ExperimentResult::f1_std)
        .def_readonly("mcc_mean", &ExperimentResult::mcc_mean)
        .def_readonly("mcc_std", &ExperimentResult::mcc_std)
        .def_readonly("selected_per_seed", &ExperimentResult::selected_per_seed)
        .def_readonly("chosen", &ExperimentResult::chosen);

    m.def(
        "run_experiment",
        [](const std::string& dataset, const std::string& model,
           const std::vector<std::uint64_t>& seeds, int folds, int min_classes, bool full_grid,
           const std::string& data_dir, int workers) {
            ExperimentConfig config;
            config.dataset = dataset;
            config.model = model;
            config.seeds = seeds;
            config.folds = folds;
            config.min_classes = min_classes;
            config.full_grid = full_grid;
            config.data_dir = data_dir;
            config.workers = workers;
            return run_experiment(config);
        },
        py::arg("dataset"), py::arg("model"), py::arg("seeds") = std::vector<std::uint64_t>{0, 1, 2},
        py::arg("folds") = 5, py::arg("min_classes") = 1, py::arg("full_grid") = false,
        py::arg("data_dir") = "data", py::arg("workers") = 1);
    m.def("known_datasets", &known_datasets);
    m.def("dataset_available", &dataset_available, py::arg("name"), py::arg("data_dir") = "data");
}

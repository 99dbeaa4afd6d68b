#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lcenclf {

/// Elastic-net penalty: alpha * (l1_ratio*|w|_1 + (1-l1_ratio)/2*|w|_2^2).
/// l1_ratio 1 is pure L1 (LASSO), 0 is pure L2 (ridge).
struct Penalty {
    double alpha = 0.0;
    double l1_ratio = 1.0;
};

enum class FitMode { binary, one_vs_rest };

struct FitOptions {
    double tol = 1e-6;      // convergence: max coefficient change per iteration
    int max_iter = 10000;
    std::vector<double>* objective_trace = nullptr;  // per-iteration penalized objective
};

/**
 * Fitted penalized logistic model. W has one row for binary mode and K rows
 * for one-vs-rest. The intercept is never penalized. `objective` is the final
 * penalized mean-NLL, summed over the per-class subproblems in OVR mode.
 */
struct LogisticFit {
    Eigen::MatrixXd W;       // K' x P
    Eigen::VectorXd b;       // K'
    Penalty penalty;
    FitMode mode = FitMode::binary;
    int n_classes = 2;
    bool converged = false;
    int n_iter = 0;
    double objective = 0.0;

    Eigen::Index n_features() const { return W.cols(); }
};

/**
 * Minimize mean negative log-likelihood plus the elastic-net penalty by
 * proximal gradient with backtracking line search. The loss is normalized by
 * N so one alpha grid is comparable across dataset sizes. Soft-thresholding
 * produces exact zeros for L1-dominated penalties; the monitored objective is
 * non-increasing across iterations.
 *
 * Z must already be standardized (caller's responsibility). y must contain at
 * least two classes; binary mode requires labels in {0,1}.
 */
LogisticFit fit_logistic(const Eigen::MatrixXd& Z, const std::vector<int>& y,
                         const Penalty& penalty, FitMode mode,
                         const FitOptions& options = {});

/**
 * Class probabilities, rows summing to 1. Binary mode returns [1-p, p];
 * one-vs-rest normalizes the per-class sigmoid scores (uniform row if all
 * scores vanish).
 */
Eigen::MatrixXd predict_proba(const LogisticFit& fit, const Eigen::MatrixXd& Z);

/// argmax of predict_proba per row.
std::vector<int> predict_labels(const LogisticFit& fit, const Eigen::MatrixXd& Z);

/// Penalized objective at given coefficients (exposed for tests and oracles).
double logistic_objective(const Eigen::MatrixXd& Z, const std::vector<int>& y01,
                          const Eigen::VectorXd& w, double b, const Penalty& penalty);

}  // namespace lcenclf

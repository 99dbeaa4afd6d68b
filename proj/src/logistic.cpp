#include "lcenclf/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lcenclf {

namespace {

/// log(1 + exp(z)) without overflow.
inline double log1pexp(double z) {
    if (z > 35.0) return z;
    if (z < -35.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
    if (z >= 0.0) {
        const double e = std::exp(-z);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

inline double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

/// Smooth part: mean logistic NLL + (alpha*(1-l1_ratio)/2)*|w|^2.
double smooth_value(const Eigen::VectorXd& margins, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& w, double l2) {
    const Eigen::Index n = margins.size();
    double nll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        nll += log1pexp(margins(i)) - y(i) * margins(i);
    }
    return nll / static_cast<double>(n) + 0.5 * l2 * w.squaredNorm();
}

struct BinaryFit {
    Eigen::VectorXd w;
    double b = 0.0;
    bool converged = false;
    int n_iter = 0;
    double objective = 0.0;
};

BinaryFit fit_binary(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                     const Penalty& penalty, const FitOptions& options) {
    const Eigen::Index n = Z.rows();
    const Eigen::Index p = Z.cols();
    const double l1 = penalty.alpha * penalty.l1_ratio;
    const double l2 = penalty.alpha * (1.0 - penalty.l1_ratio);

    BinaryFit fit;
    fit.w = Eigen::VectorXd::Zero(p);

    Eigen::VectorXd margins = Eigen::VectorXd::Zero(n);  // Z*w + b
    double smooth = smooth_value(margins, y, fit.w, l2);
    double step = 1.0;

    Eigen::VectorXd grad_w(p), w_next(p), margins_next(n);
    for (int iter = 0; iter < options.max_iter; ++iter) {
        Eigen::VectorXd residual(n);
        for (Eigen::Index i = 0; i < n; ++i) residual(i) = sigmoid(margins(i)) - y(i);
        grad_w.noalias() = Z.transpose() * residual / static_cast<double>(n);
        grad_w += l2 * fit.w;
        const double grad_b = residual.mean();

        // Backtracking on the proximal step: accept when the smooth part is
        // majorized by its quadratic model at the trial point.
        double b_next = 0.0;
        double smooth_next = 0.0;
        for (;;) {
            for (Eigen::Index j = 0; j < p; ++j) {
                w_next(j) = soft_threshold(fit.w(j) - step * grad_w(j), step * l1);
            }
            b_next = fit.b - step * grad_b;
            margins_next.noalias() = Z * w_next;
            margins_next.array() += b_next;
            smooth_next = smooth_value(margins_next, y, w_next, l2);
            const Eigen::VectorXd dw = w_next - fit.w;
            const double db = b_next - fit.b;
            const double quad = smooth + grad_w.dot(dw) + grad_b * db +
                                (dw.squaredNorm() + db * db) / (2.0 * step);
            if (smooth_next <= quad + 1e-14 * std::abs(quad)) break;
            step *= 0.5;
            if (step < 1e-18) break;
        }

        double max_change = std::abs(b_next - fit.b);
        for (Eigen::Index j = 0; j < p; ++j) {
            max_change = std::max(max_change, std::abs(w_next(j) - fit.w(j)));
        }
        fit.w.swap(w_next);
        fit.b = b_next;
        margins.swap(margins_next);
        smooth = smooth_next;
        fit.n_iter = iter + 1;
        if (options.objective_trace) {
            options.objective_trace->push_back(smooth + l1 * fit.w.lpNorm<1>());
        }
        if (max_change < options.tol) {
            fit.converged = true;
            break;
        }
        step *= 2.0;  // regrow after possible backtracking
    }
    fit.objective = smooth + l1 * fit.w.lpNorm<1>();
    return fit;
}

}  // namespace

double logistic_objective(const Eigen::MatrixXd& Z, const std::vector<int>& y01,
                          const Eigen::VectorXd& w, double b, const Penalty& penalty) {
    const Eigen::Index n = Z.rows();
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = static_cast<double>(y01[static_cast<std::size_t>(i)]);
    Eigen::VectorXd margins = Z * w;
    margins.array() += b;
    const double l2 = penalty.alpha * (1.0 - penalty.l1_ratio);
    return smooth_value(margins, y, w, l2) + penalty.alpha * penalty.l1_ratio * w.lpNorm<1>();
}

LogisticFit fit_logistic(const Eigen::MatrixXd& Z, const std::vector<int>& y,
                         const Penalty& penalty, FitMode mode,
                         const FitOptions& options) {
    if (static_cast<std::size_t>(Z.rows()) != y.size()) {
        throw std::runtime_error("fit_logistic: X/y size mismatch");
    }
    if (!Z.allFinite()) throw std::runtime_error("fit_logistic: non-finite input");
    if (penalty.alpha < 0.0 || penalty.l1_ratio < 0.0 || penalty.l1_ratio > 1.0) {
        throw std::runtime_error("fit_logistic: invalid penalty");
    }
    const std::set<int> classes(y.begin(), y.end());
    if (classes.size() < 2) {
        throw std::runtime_error("fit_logistic: need at least two classes in y");
    }
    const int k = *classes.rbegin() + 1;

    LogisticFit fit;
    fit.penalty = penalty;
    fit.mode = mode;
    const Eigen::Index n = Z.rows();

    if (mode == FitMode::binary) {
        if (k != 2 || *classes.begin() < 0) {
            throw std::runtime_error("fit_logistic: binary mode requires labels in {0,1}");
        }
        fit.n_classes = 2;
        Eigen::VectorXd target(n);
        for (Eigen::Index i = 0; i < n; ++i) target(i) = static_cast<double>(y[static_cast<std::size_t>(i)]);
        const BinaryFit bin = fit_binary(Z, target, penalty, options);
        fit.W = bin.w.transpose();
        fit.b = Eigen::VectorXd::Constant(1, bin.b);
        fit.converged = bin.converged;
        fit.n_iter = bin.n_iter;
        fit.objective = bin.objective;
    } else {
        fit.n_classes = k;
        fit.W.resize(k, Z.cols());
        fit.b.resize(k);
        fit.converged = true;
        fit.objective = 0.0;
        for (int c = 0; c < k; ++c) {
            Eigen::VectorXd target(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                target(i) = (y[static_cast<std::size_t>(i)] == c) ? 1.0 : 0.0;
            }
            const BinaryFit bin = fit_binary(Z, target, penalty, options);
            fit.W.row(c) = bin.w.transpose();
            fit.b(c) = bin.b;
            fit.converged = fit.converged && bin.converged;
            fit.n_iter = std::max(fit.n_iter, bin.n_iter);
            fit.objective += bin.objective;
        }
    }
    return fit;
}

Eigen::MatrixXd predict_proba(const LogisticFit& fit, const Eigen::MatrixXd& Z) {
    if (Z.cols() != fit.W.cols()) {
        throw std::runtime_error("predict_proba: feature count mismatch");
    }
    const Eigen::Index n = Z.rows();
    Eigen::MatrixXd probs(n, fit.n_classes);
    if (fit.mode == FitMode::binary) {
        const Eigen::VectorXd margins = Z * fit.W.row(0).transpose() +
                                        Eigen::VectorXd::Constant(n, fit.b(0));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double p1 = sigmoid(margins(i));
            probs(i, 0) = 1.0 - p1;
            probs(i, 1) = p1;
        }
    } else {
        Eigen::MatrixXd scores = Z * fit.W.transpose();
        scores.rowwise() += fit.b.transpose();
        for (Eigen::Index i = 0; i < n; ++i) {
            double total = 0.0;
            for (int c = 0; c < fit.n_classes; ++c) {
                const double s = sigmoid(scores(i, c));
                probs(i, c) = s;
                total += s;
            }
            if (total <= 0.0) {
                probs.row(i).setConstant(1.0 / static_cast<double>(fit.n_classes));
            } else {
                probs.row(i) /= total;
            }
        }
    }
    return probs;
}

std::vector<int> predict_labels(const LogisticFit& fit, const Eigen::MatrixXd& Z) {
    const Eigen::MatrixXd probs = predict_proba(fit, Z);
    std::vector<int> labels(static_cast<std::size_t>(probs.rows()));
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        Eigen::Index best = 0;
        probs.row(i).maxCoeff(&best);
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return labels;
}

}  // namespace lcenclf

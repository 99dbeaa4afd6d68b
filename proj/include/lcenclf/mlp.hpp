#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcenclf/dataset.hpp"

namespace lcenclf {

enum class Activation { relu, tanhshrink };
enum class MlpLoss { weighted_ce, diffmcc };

struct MlpSpec {
    std::vector<int> hidden_sizes;       // 1-3 dense hidden layers
    Activation activation = Activation::relu;
    double lr = 1e-3;
    double weight_decay = 0.0;           // decoupled (AdamW)
    int batch_size = 32;
    int epochs = 50;
    int warmup_epochs = 10;
    double lr_floor_ratio = 1.0 / 16.0;  // cosine floor as a fraction of lr
    std::vector<double> class_weights;   // empty = unweighted
    MlpLoss loss = MlpLoss::weighted_ce;
    double gamma = 1.0;                  // focal exponent (diffmcc only)
    std::uint64_t seed = 0;
};

struct TrainedMlp {
    std::vector<Eigen::MatrixXd> weights;  // layer l: (fan_in x fan_out)
    std::vector<Eigen::VectorXd> biases;
    MlpSpec spec;
    std::vector<double> train_loss_curve;  // one value per epoch
    long param_count = 0;
    int input_size = 0;
    int n_classes = 0;
    double best_val_f1 = 0.0;
    int best_epoch = -1;
};

struct LossValue {
    double value = 0.0;
    Eigen::MatrixXd grad_logits;  // N x K
    bool flagged = false;         // clamped probability or degenerate denominator
};

/// Forward pass: (logits, probs) with probs = row-softmax(logits).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> mlp_forward(const TrainedMlp& net,
                                                        const Eigen::MatrixXd& batch);

/**
 * Class-weighted cross-entropy: sum_i w_{y_i} * (-log p_{i,y_i}) / sum_i w_{y_i},
 * with the analytic gradient taken with respect to the logits. Probabilities
 * below 1e-12 at the true label are clamped and flagged.
 */
LossValue weighted_ce_loss(const Eigen::MatrixXd& probs, const std::vector<int>& labels,
                           const Eigen::VectorXd& class_weights);

/**
 * Weighted focal differentiable-MCC loss. Sample i adds
 * w_{y_i} * (1 - p_{i,y_i})^gamma * p_{i,.} to row y_i of a soft confusion
 * matrix; the loss is 1 minus the multiclass correlation coefficient of that
 * matrix. gamma = 0 turns the focal factor off. The batch must contain at
 * least two distinct true classes. A degenerate correlation denominator
 * yields loss 1 with zero gradient, flagged.
 */
LossValue diffmcc_loss(const Eigen::MatrixXd& probs, const std::vector<int>& labels,
                       const Eigen::VectorXd& class_weights, double gamma);

/// Learning rate at an epoch: linear warm-up then cosine decay to
/// lr * lr_floor_ratio at the final epoch.
double lr_at_epoch(const MlpSpec& spec, int epoch);

/**
 * Mini-batch AdamW training with the configured loss and schedule. Expects
 * standardized inputs. Deterministic for a fixed spec (seeded init and
 * shuffles, single-threaded). Batches are dealt class-stratified so the
 * diffMCC loss always sees at least two classes. Returns the weights of the
 * best validation-macro-F1 epoch.
 */
TrainedMlp train_mlp(const MlpSpec& spec, const Dataset& train, const Dataset& val);

long mlp_param_count(int input_size, const std::vector<int>& hidden_sizes, int n_classes);

/// Bit-stable text checkpoint (hex floats), round-trips exactly.
std::string save_checkpoint(const TrainedMlp& net);
TrainedMlp load_checkpoint(const std::string& text);

}  // namespace lcenclf

#include "lcenclf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lcenclf/csv.hpp"
#include "lcenclf/rng.hpp"

namespace lcenclf {

namespace {

// locale-independent numeric field parser
double parse_number(const std::string& field, const std::string& column, long row) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size() || field.empty()) {
        throw std::runtime_error("non-numeric value '" + field + "' in column '" +
                                 column + "' (row " + std::to_string(row + 1) + ")");
    }
    return value;
}

int column_index(const Table& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == name) return static_cast<int>(i);
    }
    throw std::runtime_error("schema mismatch: expected column '" + name + "' not found");
}

std::vector<std::string> string_column(const Table& table, int idx) {
    std::vector<std::string> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) out.push_back(row[static_cast<std::size_t>(idx)]);
    return out;
}

Eigen::VectorXd numeric_column(const Table& table, int idx, const std::string& name) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(table.rows.size()));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out(static_cast<Eigen::Index>(r)) =
            parse_number(table.rows[r][static_cast<std::size_t>(idx)], name, static_cast<long>(r));
    }
    return out;
}

/// Drop constant columns in place, recording each drop in provenance.
void drop_constant_columns(Dataset& ds) {
    std::vector<int> keep;
    for (Eigen::Index j = 0; j < ds.X.cols(); ++j) {
        const double lo = ds.X.col(j).minCoeff();
        const double hi = ds.X.col(j).maxCoeff();
        if (hi - lo > 0.0) {
            keep.push_back(static_cast<int>(j));
        } else {
            ds.provenance.push_back("dropped constant column: " + ds.feature_names[static_cast<std::size_t>(j)]);
        }
    }
    if (keep.size() == static_cast<std::size_t>(ds.X.cols())) return;
    Eigen::MatrixXd X(ds.X.rows(), static_cast<Eigen::Index>(keep.size()));
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        X.col(static_cast<Eigen::Index>(j)) = ds.X.col(keep[j]);
        names.push_back(ds.feature_names[static_cast<std::size_t>(keep[j])]);
    }
    ds.X = std::move(X);
    ds.feature_names = std::move(names);
}

void expect_header(const Table& table, const std::vector<std::string>& expected) {
    for (const auto& name : expected) column_index(table, name);
}

Dataset load_heart_failure(const std::string& path) {
    const Table table = parse_delimited(read_file(path), ',', true);
    const std::vector<std::string> features = {
        "age", "anaemia", "creatinine_phosphokinase", "diabetes", "ejection_fraction",
        "high_blood_pressure", "platelets", "serum_creatinine", "serum_sodium",
        "sex", "smoking"};
    expect_header(table, features);
    const int target_idx = column_index(table, "DEATH_EVENT");
    column_index(table, "time");  // present in the published file, dropped below

    Dataset ds;
    ds.name = "heart_failure";
    ds.feature_names = features;
    ds.class_names = {"no_event", "death_event"};
    const auto n = static_cast<Eigen::Index>(table.rows.size());
    ds.X.resize(n, static_cast<Eigen::Index>(features.size()));
    for (std::size_t j = 0; j < features.size(); ++j) {
        ds.X.col(static_cast<Eigen::Index>(j)) =
            numeric_column(table, column_index(table, features[j]), features[j]);
    }
    ds.y.reserve(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double v = parse_number(table.rows[r][static_cast<std::size_t>(target_idx)],
                                      "DEATH_EVENT", static_cast<long>(r));
        if (v != 0.0 && v != 1.0) {
            throw std::runtime_error("DEATH_EVENT must be 0/1 (row " + std::to_string(r + 1) + ")");
        }
        ds.y.push_back(static_cast<int>(v));
    }
    ds.provenance = {"loaded heart_failure", "dropped column: time (not predictive a priori)"};
    drop_constant_columns(ds);
    ds.validate();
    return ds;
}

// Encoding that yields the 54-column bank marketing design: the nine numeric
// columns stay as-is (call duration removed), education maps to a documented
// ordinal scale, the two-level contact column becomes a single indicator, and
// every remaining categorical is one-hot encoded.
Dataset load_bank_marketing(const std::string& path) {
    const Table table = parse_delimited(read_file(path), ';', true);
    const std::vector<std::string> numeric = {
        "age", "campaign", "pdays", "previous", "emp.var.rate",
        "cons.price.idx", "cons.conf.idx", "euribor3m", "nr.employed"};
    const std::vector<std::string> onehot = {
        "job", "marital", "default", "housing", "loan", "month", "day_of_week", "poutcome"};
    expect_header(table, numeric);
    expect_header(table, onehot);
    column_index(table, "duration");
    const int target_idx = column_index(table, "y");
    const int education_idx = column_index(table, "education");
    const int contact_idx = column_index(table, "contact");

    const std::map<std::string, double> education_rank = {
        {"unknown", 0},   {"illiterate", 1},          {"basic.4y", 2},
        {"basic.6y", 3},  {"basic.9y", 4},            {"high.school", 5},
        {"professional.course", 6},                   {"university.degree", 7}};

    const auto n = static_cast<Eigen::Index>(table.rows.size());
    std::vector<std::pair<std::string, Eigen::VectorXd>> columns;
    for (const auto& name : numeric) {
        columns.emplace_back(name, numeric_column(table, column_index(table, name), name));
    }
    {
        Eigen::VectorXd edu(n);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& level = table.rows[r][static_cast<std::size_t>(education_idx)];
            const auto it = education_rank.find(level);
            if (it == education_rank.end()) {
                throw std::runtime_error("unexpected level '" + level + "' in column 'education'");
            }
            edu(static_cast<Eigen::Index>(r)) = it->second;
        }
        columns.emplace_back("education_rank", edu);
    }
    {
        Eigen::VectorXd contact(n);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& level = table.rows[r][static_cast<std::size_t>(contact_idx)];
            if (level == "telephone") {
                contact(static_cast<Eigen::Index>(r)) = 1.0;
            } else if (level == "cellular") {
                contact(static_cast<Eigen::Index>(r)) = 0.0;
            } else {
                throw std::runtime_error("unexpected level '" + level + "' in column 'contact'");
            }
        }
        columns.emplace_back("contact=telephone", contact);
    }
    for (const auto& name : onehot) {
        std::vector<std::string> levels;
        const Eigen::MatrixXd indicators =
            one_hot_encode(string_column(table, column_index(table, name)), &levels);
        for (std::size_t l = 0; l < levels.size(); ++l) {
            columns.emplace_back(name + "=" + levels[l], indicators.col(static_cast<Eigen::Index>(l)));
        }
    }

    Dataset ds;
    ds.name = "bank_marketing";
    ds.class_names = {"no", "yes"};
    ds.X.resize(n, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        ds.feature_names.push_back(columns[j].first);
        ds.X.col(static_cast<Eigen::Index>(j)) = columns[j].second;
    }
    ds.y.reserve(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& label = table.rows[r][static_cast<std::size_t>(target_idx)];
        if (label == "no") {
            ds.y.push_back(0);
        } else if (label == "yes") {
            ds.y.push_back(1);
        } else {
            throw std::runtime_error("unexpected label '" + label + "' in column 'y'");
        }
    }
    ds.provenance = {"loaded bank_marketing",
                     "dropped column: duration (not known a priori)",
                     "education encoded as ordinal rank; contact as single indicator; "
                     "other categoricals one-hot encoded"};
    drop_constant_columns(ds);
    ds.validate();
    return ds;
}

Dataset load_wine_quality_red(const std::string& path) {
    const Table table = parse_delimited(read_file(path), ';', true);
    const std::vector<std::string> features = {
        "fixed acidity", "volatile acidity", "citric acid", "residual sugar",
        "chlorides", "free sulfur dioxide", "total sulfur dioxide", "density",
        "pH", "sulphates", "alcohol"};
    expect_header(table, features);
    const int target_idx = column_index(table, "quality");

    std::vector<int> keep_rows;
    std::vector<int> grades;
    long removed = 0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const int grade = static_cast<int>(
            parse_number(table.rows[r][static_cast<std::size_t>(target_idx)], "quality",
                         static_cast<long>(r)));
        if (grade == 3) {
            ++removed;
            continue;
        }
        if (grade < 4 || grade > 8) {
            throw std::runtime_error("unexpected quality grade " + std::to_string(grade) +
                                     " (row " + std::to_string(r + 1) + ")");
        }
        keep_rows.push_back(static_cast<int>(r));
        grades.push_back(grade);
    }

    Dataset ds;
    ds.name = "wine_quality_red";
    ds.feature_names = features;
    ds.class_names = {"grade_4", "grade_5", "grade_6", "grade_7", "grade_8"};
    ds.X.resize(static_cast<Eigen::Index>(keep_rows.size()), static_cast<Eigen::Index>(features.size()));
    for (std::size_t j = 0; j < features.size(); ++j) {
        const Eigen::VectorXd full =
            numeric_column(table, column_index(table, features[j]), features[j]);
        for (std::size_t r = 0; r < keep_rows.size(); ++r) {
            ds.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = full(keep_rows[r]);
        }
    }
    ds.y.reserve(grades.size());
    for (const int g : grades) ds.y.push_back(g - 4);  // grades 4..8 -> classes 0..4
    ds.provenance = {"loaded wine_quality_red",
                     "removed " + std::to_string(removed) + " grade-3 rows",
                     "grades 4..8 remapped to classes 0..4"};
    drop_constant_columns(ds);
    ds.validate();
    return ds;
}

Dataset load_glass(const std::string& path) {
    const Table table = parse_delimited(read_file(path), ',', false);
    const std::vector<std::string> features = {"RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe"};
    if (!table.rows.empty() && table.rows.front().size() != 11) {
        throw std::runtime_error("schema mismatch: glass.data must have 11 columns "
                                 "(Id, 9 features, Type), got " +
                                 std::to_string(table.rows.front().size()));
    }

    Dataset ds;
    ds.name = "glass";
    ds.feature_names = features;
    ds.class_names = {"float", "non_float", "non_window"};
    const auto n = static_cast<Eigen::Index>(table.rows.size());
    ds.X.resize(n, static_cast<Eigen::Index>(features.size()));
    ds.y.reserve(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t j = 0; j < features.size(); ++j) {
            ds.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                parse_number(table.rows[r][j + 1], features[j], static_cast<long>(r));
        }
        const int type = static_cast<int>(parse_number(table.rows[r][10], "Type", static_cast<long>(r)));
        int cls = -1;
        if (type == 1 || type == 3) cls = 0;        // float-processed windows
        else if (type == 2 || type == 4) cls = 1;   // non-float-processed windows
        else if (type >= 5 && type <= 7) cls = 2;   // non-window glass
        else {
            throw std::runtime_error("unexpected Type " + std::to_string(type) +
                                     " (row " + std::to_string(r + 1) + ")");
        }
        ds.y.push_back(cls);
    }
    ds.provenance = {"loaded glass", "dropped column: Id",
                     "6 subtypes grouped into float / non_float / non_window"};
    drop_constant_columns(ds);
    ds.validate();
    return ds;
}

}  // namespace

Dataset load_dataset(const std::string& name, const std::string& csv_path) {
    if (name == "heart_failure") return load_heart_failure(csv_path);
    if (name == "bank_marketing") return load_bank_marketing(csv_path);
    if (name == "wine_quality_red") return load_wine_quality_red(csv_path);
    if (name == "glass") return load_glass(csv_path);
    throw std::runtime_error("unknown dataset name: " + name);
}

Eigen::MatrixXd one_hot_encode(const std::vector<std::string>& column,
                               std::vector<std::string>* level_names) {
    std::set<std::string> level_set(column.begin(), column.end());
    if (level_set.size() < 2) {
        throw std::runtime_error("one_hot_encode: column has fewer than 2 distinct levels");
    }
    std::vector<std::string> levels(level_set.begin(), level_set.end());
    std::map<std::string, int> index;
    for (std::size_t l = 0; l < levels.size(); ++l) index[levels[l]] = static_cast<int>(l);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(column.size()),
                                                static_cast<Eigen::Index>(levels.size()));
    for (std::size_t r = 0; r < column.size(); ++r) {
        out(static_cast<Eigen::Index>(r), index[column[r]]) = 1.0;
    }
    if (level_names) *level_names = std::move(levels);
    return out;
}

Dataset Dataset::take_rows(const std::vector<int>& idx, const std::string& note) const {
    Dataset out;
    out.name = name;
    out.feature_names = feature_names;
    out.class_names = class_names;
    out.provenance = provenance;
    if (!note.empty()) out.provenance.push_back(note);
    out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
    out.y.reserve(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        out.X.row(static_cast<Eigen::Index>(r)) = X.row(idx[r]);
        out.y.push_back(y[static_cast<std::size_t>(idx[r])]);
    }
    return out;
}

Dataset Dataset::select_features(const std::vector<std::string>& names) const {
    std::vector<int> cols;
    for (const auto& want : names) {
        const auto it = std::find(feature_names.begin(), feature_names.end(), want);
        if (it == feature_names.end()) {
            throw std::runtime_error("select_features: no feature named '" + want + "'");
        }
        cols.push_back(static_cast<int>(it - feature_names.begin()));
    }
    Dataset out;
    out.name = name;
    out.class_names = class_names;
    out.provenance = provenance;
    out.y = y;
    out.X.resize(X.rows(), static_cast<Eigen::Index>(cols.size()));
    std::string note = "selected features:";
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.X.col(static_cast<Eigen::Index>(j)) = X.col(cols[j]);
        out.feature_names.push_back(feature_names[static_cast<std::size_t>(cols[j])]);
        note += " " + out.feature_names.back();
    }
    out.provenance.push_back(note);
    return out;
}

void Dataset::validate() const {
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw std::runtime_error("dataset invariant: row count of X must equal length of y");
    }
    if (static_cast<std::size_t>(X.cols()) != feature_names.size()) {
        throw std::runtime_error("dataset invariant: column count must equal feature_names size");
    }
    const int k = n_classes();
    std::vector<long> counts(static_cast<std::size_t>(k), 0);
    for (const int label : y) {
        if (label < 0 || label >= k) {
            throw std::runtime_error("dataset invariant: label " + std::to_string(label) +
                                     " outside [0, " + std::to_string(k) + ")");
        }
        ++counts[static_cast<std::size_t>(label)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) {
            throw std::runtime_error("dataset invariant: class " + std::to_string(c) +
                                     " has no samples");
        }
    }
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (X.col(j).maxCoeff() - X.col(j).minCoeff() == 0.0) {
            throw std::runtime_error("dataset invariant: constant column '" +
                                     feature_names[static_cast<std::size_t>(j)] + "'");
        }
        if (!X.col(j).allFinite()) {
            throw std::runtime_error("dataset invariant: non-finite value in column '" +
                                     feature_names[static_cast<std::size_t>(j)] + "'");
        }
    }
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitPolicy& policy) {
    const long n = dataset.n_samples();
    std::vector<int> test_idx;

    switch (policy.kind) {
        case SplitKind::random_fraction: {
            if (policy.fraction <= 0.0 || policy.fraction >= 1.0) {
                throw std::runtime_error("split: fraction must be in (0,1)");
            }
            Rng rng(policy.seed);
            const std::vector<int> perm = rng.permutation(static_cast<int>(n));
            long n_test = std::lround(policy.fraction * static_cast<double>(n));
            n_test = std::clamp(n_test, 1L, n - 1);
            test_idx.assign(perm.begin(), perm.begin() + n_test);
            break;
        }
        case SplitKind::last_n_rows: {
            if (policy.n <= 0 || policy.n >= n) {
                throw std::runtime_error("split: last_n_rows requires 0 < n < N");
            }
            for (long r = n - policy.n; r < n; ++r) test_idx.push_back(static_cast<int>(r));
            break;
        }
        case SplitKind::stratified_fraction: {
            if (policy.fraction <= 0.0 || policy.fraction >= 1.0) {
                throw std::runtime_error("split: fraction must be in (0,1)");
            }
            Rng rng(policy.seed);
            const int k = dataset.n_classes();
            for (int c = 0; c < k; ++c) {
                std::vector<int> members;
                for (long r = 0; r < n; ++r) {
                    if (dataset.y[static_cast<std::size_t>(r)] == c) members.push_back(static_cast<int>(r));
                }
                if (members.size() < 2) {
                    throw std::runtime_error("split: stratified split infeasible, class " +
                                             std::to_string(c) + " has fewer than 2 samples");
                }
                rng.shuffle(members);
                long take = std::lround(policy.fraction * static_cast<double>(members.size()));
                take = std::clamp(take, 1L, static_cast<long>(members.size()) - 1);
                test_idx.insert(test_idx.end(), members.begin(), members.begin() + take);
            }
            break;
        }
    }

    std::sort(test_idx.begin(), test_idx.end());
    std::vector<int> train_idx;
    train_idx.reserve(static_cast<std::size_t>(n) - test_idx.size());
    std::size_t t = 0;
    for (long r = 0; r < n; ++r) {
        if (t < test_idx.size() && test_idx[t] == r) {
            ++t;
        } else {
            train_idx.push_back(static_cast<int>(r));
        }
    }
    return {dataset.take_rows(train_idx, "split: train part"),
            dataset.take_rows(test_idx, "split: test part")};
}

std::vector<std::pair<std::vector<int>, std::vector<int>>>
kfold(long n, int k, std::uint64_t seed) {
    if (k < 2) throw std::runtime_error("kfold: k must be >= 2");
    if (static_cast<long>(k) > n) throw std::runtime_error("kfold: k must not exceed n");

    Rng rng(seed);
    const std::vector<int> perm = rng.permutation(static_cast<int>(n));
    std::vector<std::pair<std::vector<int>, std::vector<int>>> folds;
    folds.reserve(static_cast<std::size_t>(k));
    long start = 0;
    for (int f = 0; f < k; ++f) {
        const long size = n / k + (f < static_cast<int>(n % k) ? 1 : 0);
        std::vector<int> val(perm.begin() + start, perm.begin() + start + size);
        std::sort(val.begin(), val.end());
        std::vector<int> train;
        train.reserve(static_cast<std::size_t>(n - size));
        std::size_t v = 0;
        for (long r = 0; r < n; ++r) {
            if (v < val.size() && val[v] == static_cast<int>(r)) {
                ++v;
            } else {
                train.push_back(static_cast<int>(r));
            }
        }
        folds.emplace_back(std::move(train), std::move(val));
        start += size;
    }
    return folds;
}

Standardization standardize(const Eigen::MatrixXd& train_X, const Eigen::MatrixXd& other_X) {
    const Eigen::Index n = train_X.rows();
    const Eigen::Index p = train_X.cols();
    if (n < 2) throw std::runtime_error("standardize: need at least 2 rows");
    if (other_X.size() > 0 && other_X.cols() != p) {
        throw std::runtime_error("standardize: column count mismatch");
    }

    Standardization out;
    out.mean = train_X.colwise().mean();
    out.stddev.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double ss = (train_X.col(j).array() - out.mean(j)).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd < 1e-12 * std::max(1.0, std::abs(out.mean(j)))) {
            throw std::runtime_error("standardize: column " + std::to_string(j) +
                                     " is constant; drop it upstream");
        }
        out.stddev(j) = sd;
    }
    out.train = (train_X.rowwise() - out.mean.transpose()).array().rowwise() /
                out.stddev.transpose().array();
    if (other_X.size() > 0) {
        out.other = (other_X.rowwise() - out.mean.transpose()).array().rowwise() /
                    out.stddev.transpose().array();
    }
    return out;
}

Dataset make_synthetic(long n, int d, int d_informative,
                       const std::vector<double>& class_fractions,
                       std::uint64_t seed) {
    const int k = static_cast<int>(class_fractions.size());
    if (k < 2) throw std::runtime_error("make_synthetic: need at least 2 classes");
    if (d_informative < 1 || d_informative > d) {
        throw std::runtime_error("make_synthetic: d_informative must be in [1, d]");
    }
    double total = 0.0;
    for (const double f : class_fractions) {
        if (f <= 0.0) throw std::runtime_error("make_synthetic: fractions must be positive");
        total += f;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::runtime_error("make_synthetic: fractions must sum to 1");
    }

    // Largest-remainder rounding of the class counts.
    std::vector<long> counts(static_cast<std::size_t>(k));
    std::vector<std::pair<double, int>> remainders;
    long assigned = 0;
    for (int c = 0; c < k; ++c) {
        const double exact = class_fractions[static_cast<std::size_t>(c)] * static_cast<double>(n);
        counts[static_cast<std::size_t>(c)] = static_cast<long>(std::floor(exact));
        assigned += counts[static_cast<std::size_t>(c)];
        remainders.emplace_back(-(exact - std::floor(exact)), c);
    }
    std::sort(remainders.begin(), remainders.end());
    for (long r = 0; r < n - assigned; ++r) {
        ++counts[static_cast<std::size_t>(remainders[static_cast<std::size_t>(r)].second)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] < 1) {
            throw std::runtime_error("make_synthetic: infeasible fractions, class " +
                                     std::to_string(c) + " gets 0 samples");
        }
    }

    Rng rng(seed);
    const int m = d_informative;

    // Class centers at hypercube vertices of the latent space; kept small so
    // the task is learnable but far from separable, like the reference tasks.
    const double center_scale = 0.11;
    Eigen::MatrixXd centers(k, m);
    for (;;) {
        for (int c = 0; c < k; ++c) {
            for (int j = 0; j < m; ++j) {
                centers(c, j) = (rng.next_double() < 0.5 ? -center_scale : center_scale);
            }
        }
        bool distinct = true;
        for (int a = 0; a < k && distinct; ++a) {
            for (int b = a + 1; b < k; ++b) {
                if ((centers.row(a) - centers.row(b)).norm() == 0.0) {
                    distinct = false;
                    break;
                }
            }
        }
        if (distinct) break;
    }

    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < k; ++c) {
        labels.insert(labels.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(c)]), c);
    }

    Eigen::MatrixXd latent(n, m);
    for (long r = 0; r < n; ++r) {
        for (int j = 0; j < m; ++j) {
            latent(r, j) = centers(labels[static_cast<std::size_t>(r)], j) + rng.next_normal();
        }
    }

    // Random rotation of the informative block.
    Eigen::MatrixXd gauss(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) gauss(a, b) = rng.next_normal();
    }
    const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();
    const Eigen::MatrixXd informative = latent * rotation;

    Eigen::MatrixXd noise(n, d - m);
    for (long r = 0; r < n; ++r) {
        for (int j = 0; j < d - m; ++j) noise(r, j) = rng.next_normal();
    }

    // Shuffle rows and columns so neither class blocks nor informative
    // columns sit in a fixed position.
    const std::vector<int> row_perm = rng.permutation(static_cast<int>(n));
    const std::vector<int> col_perm = rng.permutation(d);

    Dataset ds;
    ds.name = "synthetic";
    ds.X.resize(n, d);
    ds.y.resize(static_cast<std::size_t>(n));
    std::vector<int> informative_positions;
    for (int j = 0; j < d; ++j) {
        if (col_perm[static_cast<std::size_t>(j)] < m) informative_positions.push_back(j);
    }
    for (long r = 0; r < n; ++r) {
        const int src_row = row_perm[static_cast<std::size_t>(r)];
        ds.y[static_cast<std::size_t>(r)] = labels[static_cast<std::size_t>(src_row)];
        for (int j = 0; j < d; ++j) {
            const int src_col = col_perm[static_cast<std::size_t>(j)];
            ds.X(r, j) = (src_col < m) ? informative(src_row, src_col)
                                       : noise(src_row, src_col - m);
        }
    }
    for (int j = 0; j < d; ++j) ds.feature_names.push_back("x" + std::to_string(j));
    for (int c = 0; c < k; ++c) ds.class_names.push_back("class_" + std::to_string(c));

    std::string informative_note = "informative_columns:";
    for (std::size_t i = 0; i < informative_positions.size(); ++i) {
        informative_note += (i == 0 ? " " : ",") + std::to_string(informative_positions[i]);
    }
    char header[160];
    std::snprintf(header, sizeof(header),
                  "make_synthetic(n=%ld, d=%d, d_informative=%d, seed=%llu)",
                  n, d, d_informative, static_cast<unsigned long long>(seed));
    ds.provenance = {header, informative_note};
    ds.validate();
    return ds;
}

std::vector<int> synthetic_informative_columns(const Dataset& dataset) {
    for (const auto& note : dataset.provenance) {
        const std::string prefix = "informative_columns: ";
        if (note.rfind(prefix, 0) == 0) {
            std::vector<int> out;
            std::stringstream ss(note.substr(prefix.size()));
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
            return out;
        }
    }
    return {};
}

}  // namespace lcenclf

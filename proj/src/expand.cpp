#include "lcenclf/expand.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lcenclf {

namespace {

// Exponent vectors of total degree in [1, degree], graded lexicographic:
// degree 1 terms first, within a degree block lexicographic by leading index.
// Each term is the sorted multiset of participating raw feature indices.
std::vector<std::vector<int>> monomial_terms(int d, int degree) {
    std::vector<std::vector<int>> terms;
    for (int deg = 1; deg <= degree; ++deg) {
        std::vector<int> combo(static_cast<std::size_t>(deg), 0);
        for (;;) {
            terms.push_back(combo);
            // next multiset combination (non-decreasing index tuples)
            int pos = deg - 1;
            while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == d - 1) --pos;
            if (pos < 0) break;
            const int v = combo[static_cast<std::size_t>(pos)] + 1;
            for (int q = pos; q < deg; ++q) combo[static_cast<std::size_t>(q)] = v;
        }
    }
    return terms;
}

std::string term_name(const std::vector<int>& term) {
    std::string name;
    std::size_t i = 0;
    while (i < term.size()) {
        std::size_t j = i;
        while (j < term.size() && term[j] == term[i]) ++j;
        if (!name.empty()) name += "*";
        name += "x" + std::to_string(term[i]);
        if (j - i > 1) name += "^" + std::to_string(j - i);
        i = j;
    }
    return name;
}

}  // namespace

ExpandedDesign expand_features(const Eigen::MatrixXd& X, int degree, int lag) {
    if (degree < 1 || degree > 3) {
        throw std::runtime_error("expand_features: degree must be in {1,2,3}");
    }
    if (lag != 0) {
        throw std::runtime_error("expand_features: lag != 0 unsupported in this artifact");
    }
    const int d = static_cast<int>(X.cols());
    const auto terms = monomial_terms(d, degree);

    ExpandedDesign design;
    design.degree = degree;
    design.lag = 0;
    design.Z.resize(X.rows(), static_cast<Eigen::Index>(terms.size()));
    design.names.reserve(terms.size());
    design.parent_map.reserve(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
        Eigen::VectorXd col = X.col(terms[t][0]);
        for (std::size_t q = 1; q < terms[t].size(); ++q) {
            col = col.cwiseProduct(X.col(terms[t][q]));
        }
        design.Z.col(static_cast<Eigen::Index>(t)) = col;
        design.names.push_back(term_name(terms[t]));
        std::vector<int> parents(terms[t]);
        parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
        design.parent_map.push_back(std::move(parents));
    }
    return design;
}

std::vector<std::string> expansion_names(int n_raw_features, int degree) {
    std::vector<std::string> names;
    for (const auto& term : monomial_terms(n_raw_features, degree)) {
        names.push_back(term_name(term));
    }
    return names;
}

std::vector<int> parse_derivation(const std::string& name) {
    std::set<int> parents;
    std::size_t i = 0;
    while (i < name.size()) {
        if (name[i] != 'x') throw std::runtime_error("bad derivation string: " + name);
        ++i;
        std::size_t j = i;
        while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
        if (j == i) throw std::runtime_error("bad derivation string: " + name);
        parents.insert(std::stoi(name.substr(i, j - i)));
        i = j;
        if (i < name.size() && name[i] == '^') {
            ++i;
            while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
        }
        if (i < name.size()) {
            if (name[i] != '*') throw std::runtime_error("bad derivation string: " + name);
            ++i;
        }
    }
    return {parents.begin(), parents.end()};
}

}  // namespace lcenclf

#include "specvar/quadrature.hpp"

#include "specvar/errors.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <mutex>
#include <utility>

namespace specvar::quad {

namespace {

// Golub-Welsch on the Jacobi matrix of the weight (1+x)^beta on [-1,1],
// then mapped to u = (1+x)/2.
Rule build_rule(double beta, int points) {
    const int m = points;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
    const double ab = beta;  // alpha = 0
    for (int i = 0; i < m; ++i) {
        const double n = i;
        if (i == 0) {
            jac(0, 0) = beta / (ab + 2.0);
        } else {
            const double s = 2.0 * n + ab;
            jac(i, i) = (beta * beta) / (s * (s + 2.0));
        }
        if (i + 1 < m) {
            const double k = n + 1.0;
            const double s = 2.0 * k + ab;
            const double num = 4.0 * k * k * (k + beta) * (k + ab);
            const double den = s * s * (s + 1.0) * (s - 1.0);
            const double off = std::sqrt(num / den);
            jac(i, i + 1) = off;
            jac(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
    if (eig.info() != Eigen::Success) {
        throw NumericError("Gauss-Jacobi eigen-decomposition failed");
    }
    // mu0 = int_{-1}^{1} (1+x)^beta dx, and the map to [0,1] divides by 2^(beta+1).
    const double total = 1.0 / (beta + 1.0);
    Rule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const double x = eig.eigenvalues()(i);
        const double v0 = eig.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (1.0 + x);
        rule.weights[i] = total * v0 * v0;
    }
    return rule;
}

}  // namespace

const Rule& power_weight_rule(double exponent, int points) {
    if (!(exponent > -1.0)) throw DomainError("power weight exponent must exceed -1");
    if (points < 1) throw DomainError("rule needs at least one point");
    static std::mutex mutex;
    static std::map<std::pair<double, int>, Rule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(exponent, points);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_rule(exponent, points)).first;
    return it->second;
}

}  // namespace specvar::quad

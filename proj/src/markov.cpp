#include "burstpower/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "burstpower/error.hpp"

namespace burstpower {

namespace {

constexpr double kResidualTol = 1e-10;

}  // namespace

OutageVector::OutageVector(std::vector<double> eps) : eps_(std::move(eps)) {
    if (eps_.size() < 2) throw std::invalid_argument("N must be >= 1");
    if (eps_.size() > kMaxStates)
        throw std::invalid_argument("N must be < " + std::to_string(kMaxStates));
    for (double e : eps_) {
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("outage probabilities must lie strictly inside (0, 1)");
    }
}

TransitionMatrix::TransitionMatrix(const OutageVector& eps) {
    const auto n = static_cast<Eigen::Index>(eps.size());
    const Eigen::Index last = n - 1;
    a_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e = eps[static_cast<std::size_t>(i)];
        a_(i, 0) = 1.0 - e;
        a_(i, std::min(i + 1, last)) += e;
    }
}

TransitionMatrix build_transition_matrix(const OutageVector& eps) { return TransitionMatrix(eps); }

SteadyState steady_state(const TransitionMatrix& a) {
    const Eigen::MatrixXd& m = a.matrix();
    const Eigen::Index n = m.rows();

    Eigen::MatrixXd lhs = m.transpose() - Eigen::MatrixXd::Identity(n, n);
    lhs.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;

    const Eigen::VectorXd pi = lhs.partialPivLu().solve(rhs);

    const double residual = (pi.transpose() * m - pi.transpose()).cwiseAbs().maxCoeff();
    if (!(residual <= kResidualTol) || !(std::abs(pi.sum() - 1.0) <= kResidualTol))
        throw ModelError("stationary solve failed");

    SteadyState out;
    out.pi.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        // LU round-off can leave -1e-17 on states with negligible mass.
        if (pi(i) < -kResidualTol) throw ModelError("stationary solve failed");
        out.pi[static_cast<std::size_t>(i)] = std::max(pi(i), 0.0);
    }
    return out;
}

SteadyState steady_state(const OutageVector& eps) { return steady_state(TransitionMatrix(eps)); }

double achieved_loss_rate(const OutageVector& eps, const SteadyState& pi) {
    if (pi.pi.size() != eps.size()) throw std::invalid_argument("eps/pi length mismatch");
    double gamma_r = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) gamma_r += eps[i] * pi.pi[i];
    return gamma_r;
}

}  // namespace burstpower

#include "wfront/gp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wfront::gp {

double gauss_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const KernelParams& kp) {
    if (x.size() != y.size() || x.size() != kp.length_scales.size())
        throw std::invalid_argument("gauss_kernel: dimension mismatch");
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double d = (x[j] - y[j]) / kp.length_scales[j];
        s += d * d;
    }
    return kp.amplitude * kp.amplitude * std::exp(-s);
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const KernelParams& kp) {
    const double a2 = kp.amplitude * kp.amplitude;
    Eigen::MatrixXd scaled_a = A, scaled_b = B;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        scaled_a.col(j) /= kp.length_scales[j];
        scaled_b.col(j) /= kp.length_scales[j];
    }
    Eigen::MatrixXd out(A.rows(), B.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < B.rows(); ++j)
            out(i, j) = a2 * std::exp(-(scaled_a.row(i) - scaled_b.row(j)).squaredNorm());
    return out;
}

Eigen::VectorXd ols(const Eigen::MatrixXd& basis, const Eigen::VectorXd& targets) {
    if (basis.rows() < basis.cols())
        throw std::invalid_argument("ols: fewer rows than columns");
    if (basis.rows() != targets.size())
        throw std::invalid_argument("ols: row count does not match targets");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    qr.setThreshold(1e-10);
    if (qr.rank() < basis.cols()) {
        const auto perm = qr.colsPermutation().indices();
        std::ostringstream ss;
        ss << "ols: rank-deficient basis; collinear column(s):";
        for (Eigen::Index k = qr.rank(); k < basis.cols(); ++k) ss << ' ' << perm[k];
        throw std::runtime_error(ss.str());
    }
    return qr.solve(targets);
}

Conditioning::Conditioning(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                           Eigen::VectorXd mean_at_inputs, KernelParams kp,
                           Eigen::VectorXd nugget)
    : inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      kp_(std::move(kp)) {
    const Eigen::Index n = inputs_.rows();
    if (nugget.size() == 0)
        nugget = Eigen::VectorXd::Constant(n, 1e-8 * kp_.amplitude * kp_.amplitude);
    if (targets_.size() != n || mean_at_inputs.size() != n || nugget.size() != n)
        throw std::invalid_argument("Conditioning: size mismatch");
    resid_ = targets_ - mean_at_inputs;
    Eigen::MatrixXd K = kernel_matrix(inputs_, inputs_, kp_);
    K.diagonal() += nugget;
    llt_.compute(K);
    if (llt_.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
        std::ostringstream ss;
        ss << "Conditioning: training covariance not positive definite"
           << " (smallest eigenvalue ~ " << es.eigenvalues().minCoeff() << ")";
        throw std::runtime_error(ss.str());
    }
    weights_ = llt_.solve(resid_);
    logdet_ = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

Conditioning::Conditioning(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                           Eigen::VectorXd mean_at_inputs, KernelParams kp)
    : Conditioning(std::move(inputs), std::move(targets), std::move(mean_at_inputs),
                   std::move(kp), Eigen::VectorXd()) {}

void Conditioning::condition(const Eigen::MatrixXd& queries,
                             const Eigen::VectorXd& mean_at_queries,
                             Eigen::VectorXd& mu, Eigen::MatrixXd& cov) const {
    const Eigen::MatrixXd Kq = kernel_matrix(queries, inputs_, kp_);
    mu = mean_at_queries + Kq * weights_;
    cov = kernel_matrix(queries, queries, kp_) - Kq * llt_.solve(Kq.transpose());
    cov = 0.5 * (cov + cov.transpose()).eval();
    const double tol = 1e-8 * kp_.amplitude * kp_.amplitude;
    for (Eigen::Index i = 0; i < cov.rows(); ++i) {
        if (cov(i, i) < -tol) {
            std::ostringstream ss;
            ss << "condition: negative predictive variance " << cov(i, i) << " at query " << i;
            throw std::runtime_error(ss.str());
        }
        if (cov(i, i) < 0.0) cov(i, i) = 0.0;
    }
}

void Conditioning::condition_marginal(const Eigen::MatrixXd& queries,
                                      const Eigen::VectorXd& mean_at_queries,
                                      Eigen::VectorXd& mu, Eigen::VectorXd& var) const {
    const Eigen::MatrixXd Kq = kernel_matrix(queries, inputs_, kp_);
    mu = mean_at_queries + Kq * weights_;
    const double a2 = kp_.amplitude * kp_.amplitude;
    const double tol = 1e-8 * a2;
    var.resize(queries.rows());
    // v_i = k(q,q) - k_q^T K^{-1} k_q via one triangular solve per query
    const auto& L = llt_.matrixL();
    for (Eigen::Index i = 0; i < queries.rows(); ++i) {
        const Eigen::VectorXd s = L.solve(Kq.row(i).transpose());
        double v = a2 - s.squaredNorm();
        if (v < -tol) {
            std::ostringstream ss;
            ss << "condition_marginal: negative predictive variance " << v << " at query " << i;
            throw std::runtime_error(ss.str());
        }
        var[i] = std::max(v, 0.0);
    }
}

double Conditioning::loglik() const {
    const double n = static_cast<double>(inputs_.rows());
    return -0.5 * resid_.dot(weights_) - 0.5 * logdet_ - 0.5 * n * std::log(2.0 * M_PI);
}

double mvn_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                  const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mvn_logpdf: covariance not positive definite");
    const Eigen::VectorXd d = x - mean;
    const Eigen::VectorXd s = llt.matrixL().solve(d);
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return -0.5 * s.squaredNorm() - 0.5 * logdet -
           0.5 * static_cast<double>(x.size()) * std::log(2.0 * M_PI);
}

}  // namespace wfront::gp

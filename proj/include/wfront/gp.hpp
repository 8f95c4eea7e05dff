#pragma once

#include <Eigen/Dense>

namespace wfront::gp {

// Amplitude/length-scale pair of the squared-exponential kernel
//   k(x, x') = a^2 exp{-sum_j (x_j - x'_j)^2 / r_j^2}
// (no factor of 2 in the denominator).
struct KernelParams {
    double amplitude = 1.0;
    Eigen::VectorXd length_scales;  // one per input dimension
};

double gauss_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const KernelParams& kp);

// Kernel cross-matrix K(A, B); rows of A and B are points.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const KernelParams& kp);

// Ordinary least squares through a column-pivoted QR decomposition. Throws
// on rank deficiency, naming the collinear columns.
Eigen::VectorXd ols(const Eigen::MatrixXd& basis, const Eigen::VectorXd& targets);

// Exact GP conditioning on a fixed training set. The training covariance
// plus per-point nugget is factorized once at construction; queries reuse
// the factorization and are concurrent-safe.
class Conditioning {
public:
    Conditioning(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                 Eigen::VectorXd mean_at_inputs, KernelParams kp,
                 Eigen::VectorXd nugget);

    // Convenience: uniform nugget of 1e-8 * amplitude^2.
    Conditioning(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                 Eigen::VectorXd mean_at_inputs, KernelParams kp);

    // Posterior mean and full covariance at query rows.
    void condition(const Eigen::MatrixXd& queries, const Eigen::VectorXd& mean_at_queries,
                   Eigen::VectorXd& mu, Eigen::MatrixXd& cov) const;

    // Marginal variances only (diagonal of the posterior covariance).
    void condition_marginal(const Eigen::MatrixXd& queries,
                            const Eigen::VectorXd& mean_at_queries,
                            Eigen::VectorXd& mu, Eigen::VectorXd& var) const;

    // Exact log marginal density of the targets, constants included.
    double loglik() const;

    int size() const { return static_cast<int>(inputs_.rows()); }
    const KernelParams& params() const { return kp_; }
    const Eigen::MatrixXd& inputs() const { return inputs_; }
    const Eigen::VectorXd& targets() const { return targets_; }

private:
    Eigen::MatrixXd inputs_;
    Eigen::VectorXd targets_;
    Eigen::VectorXd resid_;  // targets - mean
    KernelParams kp_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd weights_;  // K^{-1} resid
    double logdet_ = 0.0;
};

// Log density of N(mean, cov) at x via Cholesky. Shared by the emulated
// likelihood and its tests.
double mvn_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                  const Eigen::MatrixXd& cov);

}  // namespace wfront::gp

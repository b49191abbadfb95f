#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "bosent/errors.hpp"

namespace bosent {

// Tolerances used across state validation.
inline constexpr double k_symmetry_tol = 1e-12;   // relative symmetry/hermiticity
inline constexpr double k_psd_tol = 1e-12;        // smallest eigenvalue > -tol * largest
inline constexpr double k_physical_tol = 1e-9;    // mu_i >= 1 - tol
inline constexpr double k_default_cond_limit = 1e12;

// Kernel parameters Theta = {A, C, d} of the Gaussian density matrix
//   rho(q,q') ~ exp[-1/2 (q A q + q' A* q') + q C q' + d q + d* q'],
// stored as split real/imaginary parts.  A = A' + iA'' is complex symmetric,
// C = C' + iC'' is Hermitian (C' symmetric, C'' antisymmetric).
struct KernelParams {
    Eigen::MatrixXd a_real, a_imag;
    Eigen::MatrixXd c_real, c_imag;
    Eigen::VectorXd d_real, d_imag;

    Eigen::Index n_modes() const { return a_real.rows(); }

    // all-zero C and d, A = a_real (convenience for tests and simple states)
    static KernelParams real_diagonal(const Eigen::VectorXd& a_diag);
};

// Moment set Xi = {Q, P, S, <q>, <p>}: position covariances Q, momentum
// covariances P, symmetrized cross covariances S (not necessarily symmetric),
// and mean displacements.
struct MomentSet {
    Eigen::MatrixXd q_mat, p_mat, s_mat;
    Eigen::VectorXd mean_q, mean_p;

    Eigen::Index n_modes() const { return q_mat.rows(); }

    static MomentSet zero_mean(Eigen::MatrixXd q, Eigen::MatrixXd p, Eigen::MatrixXd s);
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    double violation = 0.0;  // worst measured violation magnitude
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const;
    std::vector<ValidationCheck> violations() const;  // failed checks only
    std::string summary() const;
};

struct ConvertOptions {
    bool strict = false;                        // validate inputs, throw on failure
    double cond_limit = k_default_cond_limit;   // conditioning bound on Q
};

ValidationReport validate(const KernelParams& theta);
ValidationReport validate(const MomentSet& xi);

// Xi[Theta]:
//   Q    = 1/2 (A' - C')^-1
//   P    = 1/2 (A' + C') + (A'' - C'') Q (A'' + C'')
//   S    = -Q (A'' + C'')
//   <q>  = 2 Q d'
//   <p>  = -2 (A'' - C'') Q d' + d''
// Exact closed-form inverse of params_from_moments.
MomentSet moments_from_params(const KernelParams& theta, const ConvertOptions& opts = {});

// Theta[Xi]:
//   A'  = P + 1/4 Q^-1 - S^T Q^-1 S      A'' = -1/2 (S^T Q^-1 + Q^-1 S)
//   C'  = P - 1/4 Q^-1 - S^T Q^-1 S      C'' =  1/2 (S^T Q^-1 - Q^-1 S)
//   d'  = 1/2 Q^-1 <q>                   d'' = (A'' - C'') <q> + <p>
KernelParams params_from_moments(const MomentSet& xi, const ConvertOptions& opts = {});

}  // namespace bosent

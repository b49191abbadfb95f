#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>

#include "bosent/errors.hpp"

namespace bosent::linalg {

struct SymEig {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns
};

inline SymEig sym_eig(const Eigen::MatrixXd& m, const std::string& label) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw numerical_error(label + ": symmetric eigendecomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double max_abs(const Eigen::MatrixXd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// |M - M^T|_max relative to the matrix scale
inline double relative_asymmetry(const Eigen::MatrixXd& m) {
    const double scale = std::max(max_abs(m), 1e-300);
    return max_abs(m - m.transpose()) / scale;
}

// |M + M^T|_max relative to the matrix scale (for antisymmetric matrices)
inline double relative_symmetry(const Eigen::MatrixXd& m) {
    const double scale = std::max(max_abs(m), 1e-300);
    return max_abs(m + m.transpose()) / scale;
}

inline Eigen::MatrixXd sym_part(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

inline Eigen::MatrixXd antisym_part(const Eigen::MatrixXd& m) {
    return 0.5 * (m - m.transpose());
}

namespace detail {
inline void require_spd(const SymEig& eig, const std::string& label) {
    const double largest = eig.values.cwiseAbs().maxCoeff();
    const double floor = 1e-12 * std::max(largest, 1e-300);
    if (eig.values(0) <= floor) {
        std::ostringstream msg;
        msg << label << " is not positive definite (smallest eigenvalue "
            << eig.values(0) << ")";
        throw numerical_error(msg.str());
    }
}
}  // namespace detail

// Eigendecomposition-based inverse of an SPD matrix.  Diagnosable near-null
// directions: throws numerical_error naming the offending eigenvalue.
inline Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const std::string& label) {
    const SymEig eig = sym_eig(m, label);
    detail::require_spd(eig, label);
    return eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();
}

inline Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m, const std::string& label) {
    const SymEig eig = sym_eig(m, label);
    detail::require_spd(eig, label);
    return eig.vectors * eig.values.cwiseSqrt().asDiagonal() * eig.vectors.transpose();
}

inline Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& m, const std::string& label) {
    const SymEig eig = sym_eig(m, label);
    detail::require_spd(eig, label);
    return eig.vectors * eig.values.cwiseSqrt().cwiseInverse().asDiagonal() *
           eig.vectors.transpose();
}

// Spectral condition number of a symmetric matrix; +inf when singular or indefinite.
inline double sym_condition_number(const Eigen::MatrixXd& m) {
    const SymEig eig = sym_eig(m, "condition number");
    const double lo = eig.values(0);
    const double hi = eig.values(eig.values.size() - 1);
    if (lo <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return hi / lo;
}

}  // namespace bosent::linalg

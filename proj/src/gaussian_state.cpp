#include "bosent/gaussian_state.hpp"

#include <cmath>
#include <sstream>

#include "bosent/linalg.hpp"
#include "bosent/spectrum.hpp"

namespace bosent {

namespace {

void require_square(const Eigen::MatrixXd& m, Eigen::Index n, const char* name) {
    if (m.rows() != n || m.cols() != n) {
        std::ostringstream msg;
        msg << name << " must be " << n << "x" << n << ", got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(msg.str());
    }
}

void require_length(const Eigen::VectorXd& v, Eigen::Index n, const char* name) {
    if (v.size() != n) {
        std::ostringstream msg;
        msg << name << " must have length " << n << ", got " << v.size();
        throw std::invalid_argument(msg.str());
    }
}

void check_shapes(const KernelParams& theta) {
    const Eigen::Index n = theta.n_modes();
    if (n < 1) throw std::invalid_argument("KernelParams: n_modes must be positive");
    require_square(theta.a_real, n, "a_real");
    require_square(theta.a_imag, n, "a_imag");
    require_square(theta.c_real, n, "c_real");
    require_square(theta.c_imag, n, "c_imag");
    require_length(theta.d_real, n, "d_real");
    require_length(theta.d_imag, n, "d_imag");
}

void check_shapes(const MomentSet& xi) {
    const Eigen::Index n = xi.n_modes();
    if (n < 1) throw std::invalid_argument("MomentSet: n_modes must be positive");
    require_square(xi.q_mat, n, "q_mat");
    require_square(xi.p_mat, n, "p_mat");
    require_square(xi.s_mat, n, "s_mat");
    require_length(xi.mean_q, n, "mean_q");
    require_length(xi.mean_p, n, "mean_p");
}

ValidationCheck symmetry_check(const std::string& name, const Eigen::MatrixXd& m) {
    const double v = linalg::relative_asymmetry(m);
    return {name + " symmetric", v <= k_symmetry_tol, v};
}

ValidationCheck antisymmetry_check(const std::string& name, const Eigen::MatrixXd& m) {
    const double v = linalg::relative_symmetry(m);
    return {name + " antisymmetric", v <= k_symmetry_tol, v};
}

ValidationCheck spd_check(const std::string& name, const Eigen::MatrixXd& m) {
    const linalg::SymEig eig = linalg::sym_eig(linalg::sym_part(m), name);
    const double lo = eig.values(0);
    const double hi = eig.values.cwiseAbs().maxCoeff();
    const bool passed = lo > -k_psd_tol * std::max(hi, 1e-300);
    return {name + " positive definite", passed, passed ? 0.0 : -lo};
}

void enforce(const ValidationReport& report, const char* what) {
    if (!report.ok()) {
        throw validation_error(std::string(what) + ": " + report.summary());
    }
}

}  // namespace

KernelParams KernelParams::real_diagonal(const Eigen::VectorXd& a_diag) {
    const Eigen::Index n = a_diag.size();
    KernelParams theta;
    theta.a_real = a_diag.asDiagonal();
    theta.a_imag = Eigen::MatrixXd::Zero(n, n);
    theta.c_real = Eigen::MatrixXd::Zero(n, n);
    theta.c_imag = Eigen::MatrixXd::Zero(n, n);
    theta.d_real = Eigen::VectorXd::Zero(n);
    theta.d_imag = Eigen::VectorXd::Zero(n);
    return theta;
}

MomentSet MomentSet::zero_mean(Eigen::MatrixXd q, Eigen::MatrixXd p, Eigen::MatrixXd s) {
    const Eigen::Index n = q.rows();
    MomentSet xi;
    xi.q_mat = std::move(q);
    xi.p_mat = std::move(p);
    xi.s_mat = std::move(s);
    xi.mean_q = Eigen::VectorXd::Zero(n);
    xi.mean_p = Eigen::VectorXd::Zero(n);
    return xi;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::vector<ValidationCheck> ValidationReport::violations() const {
    std::vector<ValidationCheck> out;
    for (const auto& c : checks) {
        if (!c.passed) out.push_back(c);
    }
    return out;
}

std::string ValidationReport::summary() const {
    std::ostringstream msg;
    bool first = true;
    for (const auto& c : checks) {
        if (c.passed) continue;
        if (!first) msg << "; ";
        msg << c.name << " violated (" << c.violation << ")";
        first = false;
    }
    if (first) msg << "all checks passed";
    return msg.str();
}

ValidationReport validate(const KernelParams& theta) {
    check_shapes(theta);
    ValidationReport report;
    report.checks.push_back(symmetry_check("a_real", theta.a_real));
    report.checks.push_back(symmetry_check("a_imag", theta.a_imag));
    report.checks.push_back(symmetry_check("c_real", theta.c_real));
    report.checks.push_back(antisymmetry_check("c_imag", theta.c_imag));
    report.checks.push_back(spd_check("a_real", theta.a_real));
    report.checks.push_back(spd_check("a_real - c_real", theta.a_real - theta.c_real));
    return report;
}

ValidationReport validate(const MomentSet& xi) {
    check_shapes(xi);
    ValidationReport report;
    report.checks.push_back(symmetry_check("q_mat", xi.q_mat));
    report.checks.push_back(symmetry_check("p_mat", xi.p_mat));
    report.checks.push_back(spd_check("q_mat", xi.q_mat));
    report.checks.push_back(spd_check("p_mat", xi.p_mat));

    const double cond = linalg::sym_condition_number(linalg::sym_part(xi.q_mat));
    report.checks.push_back({"q_mat conditioning", cond <= k_default_cond_limit, cond});

    // Physical-state check through the independent symplectic route; the
    // oracle covers S = 0 only, so it is applied only there.
    const double s_scale = std::max({1.0, linalg::max_abs(xi.q_mat), linalg::max_abs(xi.p_mat)});
    if (linalg::max_abs(xi.s_mat) <= 1e-13 * s_scale && report.ok()) {
        const std::vector<double> mu = symplectic_oracle(xi);
        double worst = 0.0;
        for (double m : mu) worst = std::max(worst, 1.0 - m);
        report.checks.push_back({"physical state (mu >= 1)", worst <= k_physical_tol, worst});
    }
    return report;
}

MomentSet moments_from_params(const KernelParams& theta, const ConvertOptions& opts) {
    check_shapes(theta);
    if (opts.strict) enforce(validate(theta), "moments_from_params");

    const Eigen::MatrixXd& ap = theta.a_real;
    const Eigen::MatrixXd& app = theta.a_imag;
    const Eigen::MatrixXd& cp = theta.c_real;
    const Eigen::MatrixXd& cpp = theta.c_imag;

    const Eigen::MatrixXd q = 0.5 * linalg::spd_inverse(ap - cp, "a_real - c_real");
    const Eigen::MatrixXd im_sum = app + cpp;
    const Eigen::MatrixXd im_diff = app - cpp;

    MomentSet xi;
    xi.q_mat = q;
    xi.p_mat = linalg::sym_part(0.5 * (ap + cp) + im_diff * q * im_sum);
    xi.s_mat = -q * im_sum;
    xi.mean_q = 2.0 * q * theta.d_real;
    xi.mean_p = -2.0 * im_diff * q * theta.d_real + theta.d_imag;
    return xi;
}

KernelParams params_from_moments(const MomentSet& xi, const ConvertOptions& opts) {
    check_shapes(xi);
    if (opts.strict) enforce(validate(xi), "params_from_moments");

    const Eigen::MatrixXd q_sym = linalg::sym_part(xi.q_mat);
    const linalg::SymEig eig = linalg::sym_eig(q_sym, "q_mat");
    const double lo = eig.values(0);
    const double hi = eig.values(eig.values.size() - 1);
    if (lo <= 0.0) {
        std::ostringstream msg;
        msg << "q_mat is not positive definite (smallest eigenvalue " << lo << ")";
        throw numerical_error(msg.str());
    }
    if (hi / lo > opts.cond_limit) {
        std::ostringstream msg;
        msg << "q_mat condition number " << hi / lo << " exceeds limit " << opts.cond_limit;
        throw numerical_error(msg.str());
    }
    const Eigen::MatrixXd qi =
        eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();

    const Eigen::MatrixXd& p = xi.p_mat;
    const Eigen::MatrixXd& s = xi.s_mat;
    const Eigen::MatrixXd sqs = linalg::sym_part(s.transpose() * qi * s);

    KernelParams theta;
    theta.a_real = linalg::sym_part(p + 0.25 * qi - sqs);
    theta.a_imag = linalg::sym_part(-0.5 * (s.transpose() * qi + qi * s));
    theta.c_real = linalg::sym_part(p - 0.25 * qi - sqs);
    theta.c_imag = linalg::antisym_part(0.5 * (s.transpose() * qi - qi * s));
    theta.d_real = 0.5 * qi * xi.mean_q;
    theta.d_imag = (theta.a_imag - theta.c_imag) * xi.mean_q + xi.mean_p;
    return theta;
}

}  // namespace bosent

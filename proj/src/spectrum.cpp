#include "bosent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <queue>
#include <sstream>

#include "bosent/linalg.hpp"

namespace bosent {

namespace {

constexpr double k_eta_lower_band = -1e-12;  // clamped to 0
constexpr double k_eta_upper_band = 1e-9;    // clamped below 1, counted

ModeSpectrum spectrum_from_etas(Eigen::VectorXd etas) {
    ModeSpectrum spec;
    spec.n_clamped = 0;
    for (Eigen::Index i = 0; i < etas.size(); ++i) {
        double& eta = etas(i);
        if (eta < 0.0) {
            if (eta < k_eta_lower_band) {
                std::ostringstream msg;
                msg << "mode spectrum: eta = " << eta << " < 0; C must be positive";
                throw validation_error(msg.str());
            }
            eta = 0.0;
        } else if (eta >= 1.0) {
            if (eta > 1.0 + k_eta_upper_band) {
                std::ostringstream msg;
                msg << "mode spectrum: eta = " << eta << " >= 1, state not normalizable";
                throw numerical_error(msg.str());
            }
            eta = std::nextafter(1.0, 0.0);
            ++spec.n_clamped;
        }
    }

    std::vector<std::pair<double, double>> pairs;  // (xi, eta)
    pairs.reserve(etas.size());
    for (Eigen::Index i = 0; i < etas.size(); ++i) {
        pairs.emplace_back(xi_from_eta(etas(i)), etas(i));
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    spec.xi.reserve(pairs.size());
    spec.eta.reserve(pairs.size());
    spec.mu.reserve(pairs.size());
    spec.lambda0 = 1.0;
    for (const auto& [xi, eta] : pairs) {
        spec.xi.push_back(xi);
        spec.eta.push_back(eta);
        spec.mu.push_back((1.0 + xi) / (1.0 - xi));
        spec.lambda0 *= 1.0 - xi;
    }
    return spec;
}

double entropy_term(double xi) {
    if (xi <= 0.0) return 0.0;
    return -(std::log1p(-xi) + xi * std::log(xi) / (1.0 - xi)) / M_LN2;
}

struct FrontierNode {
    double lambda;
    std::vector<int> occupation;
    int min_child;  // children may only increment indices >= min_child
};

struct FrontierOrder {
    // priority_queue pops the "largest"; largest lambda first, lexicographic
    // ascending occupation on exact ties
    bool operator()(const FrontierNode& a, const FrontierNode& b) const {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.occupation > b.occupation;
    }
};

std::vector<EigenvalueRecord> frontier_search(const ModeSpectrum& spec, int max_records,
                                              double mass_target) {
    if (max_records < 1) throw std::domain_error("top_eigenvalues: k must be >= 1");
    for (double x : spec.xi) {
        if (x >= 1.0) throw validation_error("top_eigenvalues: xi must be < 1");
    }
    const int n = static_cast<int>(spec.xi.size());

    std::priority_queue<FrontierNode, std::vector<FrontierNode>, FrontierOrder> heap;
    heap.push({spec.lambda0, std::vector<int>(n, 0), 0});

    std::vector<EigenvalueRecord> out;
    out.reserve(std::min(max_records, 1 << 16));
    double mass = 0.0;
    while (!heap.empty() && static_cast<int>(out.size()) < max_records) {
        FrontierNode node = heap.top();
        heap.pop();
        mass += node.lambda;
        out.push_back({node.occupation, node.lambda});
        if (mass >= mass_target) break;
        for (int j = node.min_child; j < n; ++j) {
            if (spec.xi[j] <= 0.0) continue;  // zero-lambda branch
            FrontierNode child{node.lambda * spec.xi[j], node.occupation, j};
            ++child.occupation[j];
            heap.push(std::move(child));
        }
    }
    return out;
}

}  // namespace

double xi_from_eta(double eta) {
    if (!(eta >= 0.0) || eta >= 1.0) {
        std::ostringstream msg;
        msg << "xi_from_eta: eta = " << eta << " outside [0, 1)";
        throw std::domain_error(msg.str());
    }
    return eta / (1.0 + std::sqrt((1.0 - eta) * (1.0 + eta)));
}

ModeSpectrum mode_spectrum_from_params(const KernelParams& theta, const ConvertOptions& opts) {
    if (opts.strict) {
        const ValidationReport report = validate(theta);
        if (!report.ok()) {
            throw validation_error("mode_spectrum_from_params: " + report.summary());
        }
    }
    // a = O^T A' O diagonal, then eta_bar eigenvalues of a^{-1/2} O^T C' O a^{-1/2}
    const linalg::SymEig a_eig = linalg::sym_eig(linalg::sym_part(theta.a_real), "a_real");
    const double a_hi = a_eig.values.cwiseAbs().maxCoeff();
    if (a_eig.values(0) <= 1e-12 * std::max(a_hi, 1e-300)) {
        std::ostringstream msg;
        msg << "mode spectrum: a_real is not positive definite (smallest eigenvalue "
            << a_eig.values(0) << ")";
        throw numerical_error(msg.str());
    }
    const Eigen::VectorXd inv_sqrt_a = a_eig.values.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd rotated_c =
        a_eig.vectors.transpose() * linalg::sym_part(theta.c_real) * a_eig.vectors;
    const Eigen::MatrixXd inner =
        inv_sqrt_a.asDiagonal() * rotated_c * inv_sqrt_a.asDiagonal();
    const linalg::SymEig eta_eig = linalg::sym_eig(linalg::sym_part(inner), "eta_bar");
    return spectrum_from_etas(eta_eig.values);
}

ModeSpectrum mode_spectrum_from_moments(const MomentSet& xi_set, const ConvertOptions& opts) {
    return mode_spectrum_from_params(params_from_moments(xi_set, opts), ConvertOptions{false, opts.cond_limit});
}

std::vector<double> symplectic_oracle(const MomentSet& xi_set) {
    const double scale =
        std::max({1.0, linalg::max_abs(xi_set.q_mat), linalg::max_abs(xi_set.p_mat)});
    if (linalg::max_abs(xi_set.s_mat) > 1e-13 * scale) {
        throw std::invalid_argument("symplectic_oracle: requires s_mat = 0");
    }
    const Eigen::MatrixXd sqrt_q = linalg::spd_sqrt(linalg::sym_part(xi_set.q_mat), "q_mat");
    const Eigen::MatrixXd inner = linalg::sym_part(sqrt_q * xi_set.p_mat * sqrt_q);
    const linalg::SymEig eig = linalg::sym_eig(inner, "sqrt(Q) P sqrt(Q)");
    std::vector<double> mu(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        mu[i] = 2.0 * std::sqrt(std::max(eig.values(i), 0.0));
    }
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return mu;
}

std::vector<double> grid_oracle(const KernelParams& theta, int grid_points,
                                double box_halfwidth) {
    const Eigen::Index n = theta.n_modes();
    if (n > 2) throw std::invalid_argument("grid_oracle: only N <= 2 is supported");
    if (grid_points < 2 || grid_points > 200) {
        throw std::invalid_argument("grid_oracle: grid_points must be in [2, 200]");
    }
    if (!(box_halfwidth > 0.0)) {
        throw std::invalid_argument("grid_oracle: box_halfwidth must be positive");
    }

    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);
    const Eigen::MatrixXcd a = theta.a_real + I * theta.a_imag;
    const Eigen::MatrixXcd c = theta.c_real + I * theta.c_imag;
    const Eigen::VectorXcd d = theta.d_real + I * theta.d_imag;

    const Eigen::MatrixXd m = theta.a_real - theta.c_real;
    const linalg::SymEig m_eig = linalg::sym_eig(m, "a_real - c_real");
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < m_eig.values.size(); ++i) {
        if (m_eig.values(i) <= 0.0) {
            throw numerical_error("grid_oracle: a_real - c_real is not positive definite");
        }
        log_det += std::log(m_eig.values(i));
    }
    const Eigen::MatrixXd m_inv =
        m_eig.vectors * m_eig.values.cwiseInverse().asDiagonal() * m_eig.vectors.transpose();
    const double prefactor = std::exp(0.5 * (log_det - n * std::log(M_PI)) -
                                      theta.d_real.dot(m_inv * theta.d_real));

    const int g = grid_points;
    const double h = 2.0 * box_halfwidth / (g - 1);
    std::vector<double> axis(g);
    for (int i = 0; i < g; ++i) axis[i] = -box_halfwidth + i * h;

    const Eigen::Index dim = (n == 1) ? g : static_cast<Eigen::Index>(g) * g;
    std::vector<Eigen::Vector2d> pts(dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        if (n == 1) {
            pts[p] = Eigen::Vector2d(axis[p], 0.0);
        } else {
            pts[p] = Eigen::Vector2d(axis[p / g], axis[p % g]);
        }
    }

    auto quad = [&](const Eigen::Vector2d& v, const Eigen::MatrixXcd& mat) -> cplx {
        cplx acc(0.0, 0.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) acc += v(i) * mat(i, j) * v(j);
        }
        return acc;
    };
    auto bilin = [&](const Eigen::Vector2d& u, const Eigen::Vector2d& v) -> cplx {
        cplx acc(0.0, 0.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) acc += u(i) * c(i, j) * v(j);
        }
        return acc;
    };
    auto lin = [&](const Eigen::Vector2d& v, bool conj) -> cplx {
        cplx acc(0.0, 0.0);
        for (Eigen::Index i = 0; i < n; ++i) acc += (conj ? std::conj(d(i)) : d(i)) * v(i);
        return acc;
    };

    const double weight = (n == 1) ? h : h * h;
    const bool real_kernel = linalg::max_abs(theta.a_imag) == 0.0 &&
                             linalg::max_abs(theta.c_imag) == 0.0 &&
                             theta.d_imag.cwiseAbs().maxCoeff() == 0.0;

    std::vector<cplx> quad_cache_c(dim);
    for (Eigen::Index p = 0; p < dim; ++p) quad_cache_c[p] = quad(pts[p], a);

    Eigen::VectorXd eigs;
    if (real_kernel) {
        Eigen::MatrixXd kernel(dim, dim);
        for (Eigen::Index p = 0; p < dim; ++p) {
            for (Eigen::Index q = 0; q < dim; ++q) {
                const double ex = -0.5 * (quad_cache_c[p].real() + quad_cache_c[q].real()) +
                                  bilin(pts[p], pts[q]).real() + lin(pts[p], false).real() +
                                  lin(pts[q], true).real();
                kernel(p, q) = prefactor * std::exp(ex) * weight;
            }
        }
        eigs = linalg::sym_eig(kernel, "grid kernel").values;
    } else {
        Eigen::MatrixXcd kernel(dim, dim);
        for (Eigen::Index p = 0; p < dim; ++p) {
            for (Eigen::Index q = 0; q < dim; ++q) {
                const cplx ex = -0.5 * (quad_cache_c[p] + std::conj(quad_cache_c[q])) +
                                bilin(pts[p], pts[q]) + lin(pts[p], false) + lin(pts[q], true);
                kernel(p, q) = prefactor * std::exp(ex) * weight;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(kernel);
        if (solver.info() != Eigen::Success) {
            throw numerical_error("grid_oracle: eigendecomposition failed");
        }
        eigs = solver.eigenvalues();
    }

    std::vector<double> out(eigs.data(), eigs.data() + eigs.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double entropy(const ModeSpectrum& spec) {
    const std::vector<double> terms = entropy_terms(spec);
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

std::vector<double> entropy_terms(const ModeSpectrum& spec) {
    std::vector<double> terms;
    terms.reserve(spec.xi.size());
    for (double x : spec.xi) terms.push_back(entropy_term(x));
    std::sort(terms.begin(), terms.end(), std::greater<>());
    return terms;
}

double product_identification(const ModeSpectrum& spec, int m_order) {
    if (m_order < 2) throw std::domain_error("product_identification: M must be >= 2");
    double trace_m = 1.0;
    for (double x : spec.xi) {
        if (x <= 0.0) continue;
        trace_m *= std::pow(1.0 - x, m_order) / (1.0 - std::pow(x, m_order));
    }
    return 1.0 - trace_m;
}

std::vector<EigenvalueRecord> top_eigenvalues(const ModeSpectrum& spec, int k) {
    return frontier_search(spec, k, std::numeric_limits<double>::infinity());
}

std::vector<EigenvalueRecord> top_eigenvalues_to_mass(const ModeSpectrum& spec,
                                                      double mass_target, int max_records) {
    return frontier_search(spec, max_records, mass_target);
}

}  // namespace bosent

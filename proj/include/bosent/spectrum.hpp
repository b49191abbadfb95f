#pragma once

#include <vector>

#include "bosent/gaussian_state.hpp"

namespace bosent {

// Per-mode spectrum of a Gaussian density matrix.  Each mode carries a
// geometric ratio xi in [0,1); the full eigenvalue set is
// lambda_{n_1..n_N} = lambda0 * prod_i xi_i^{n_i} with occupations n_i >= 0.
struct ModeSpectrum {
    std::vector<double> xi;   // descending
    std::vector<double> eta;  // matching order, xi = eta / (1 + sqrt(1 - eta^2))
    std::vector<double> mu;   // (1 + xi) / (1 - xi), >= 1
    double lambda0 = 1.0;     // prod_i (1 - xi_i), the ground eigenvalue
    int n_clamped = 0;        // etas clamped down from the (1, 1+1e-9] band

    Eigen::Index n_modes() const { return static_cast<Eigen::Index>(xi.size()); }
};

struct EigenvalueRecord {
    std::vector<int> occupation;
    double lambda = 0.0;
};

// xi = eta / (1 + sqrt(1 - eta^2)); domain 0 <= eta < 1.
double xi_from_eta(double eta);

// Orthogonal reduction to single-mode form: diagonalize A', rescale by
// a^{-1/2}, diagonalize the resulting symmetric matrix built from C'; its
// eigenvalues are the eta_i.  A'' is dropped (it contributes nothing to
// traces of the density matrix).
ModeSpectrum mode_spectrum_from_params(const KernelParams& theta, const ConvertOptions& opts = {});

// Composition through params_from_moments; means are ignored (the spectrum
// is independent of the displacement d).
ModeSpectrum mode_spectrum_from_moments(const MomentSet& xi_set, const ConvertOptions& opts = {});

// Independent S = 0 oracle: mu_i are the positive square roots of the
// eigenvalues of 4 Q P, sorted descending.  Nonzero S is rejected.
std::vector<double> symplectic_oracle(const MomentSet& xi_set);

// Brute-force oracle: discretize the kernel on a uniform grid over
// [-box_halfwidth, box_halfwidth]^N (N <= 2, grid_points <= 200 per axis)
// and diagonalize the grid-weighted matrix.  Returns approximate
// eigenvalues in descending order.
std::vector<double> grid_oracle(const KernelParams& theta, int grid_points, double box_halfwidth);

// Von Neumann entropy in ebits:
//   S = -sum_i [ log2(1 - xi_i) + xi_i log2(xi_i) / (1 - xi_i) ],
// with the xi = 0 term contributing exactly zero.
double entropy(const ModeSpectrum& spec);

// Per-mode entropy contributions, sorted descending; sums to entropy().
std::vector<double> entropy_terms(const ModeSpectrum& spec);

// Product-state identification E_M = 1 - prod_i (1-xi_i)^M / (1-xi_i^M), M >= 2.
double product_identification(const ModeSpectrum& spec, int m_order);

// k largest eigenvalues lambda = lambda0 * prod xi_i^{n_i} by best-first
// frontier search over occupation vectors; ties broken lexicographically
// ascending on the occupation vector.  Zero-lambda records are never emitted.
std::vector<EigenvalueRecord> top_eigenvalues(const ModeSpectrum& spec, int k);

// Same search, stopping once the cumulative eigenvalue sum reaches
// mass_target or max_records records were produced.
std::vector<EigenvalueRecord> top_eigenvalues_to_mass(const ModeSpectrum& spec,
                                                      double mass_target, int max_records);

}  // namespace bosent

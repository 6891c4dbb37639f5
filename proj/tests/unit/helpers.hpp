// Shared test utilities: deterministic pseudo-random generators and small
// reference constructions used as oracles.
#ifndef PHONOLASE_TESTS_HELPERS_HPP
#define PHONOLASE_TESTS_HELPERS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "core/types.hpp"

namespace testutil {

/// Deterministic xorshift generator; no global RNG state anywhere.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * double(next() >> 11) / double(1ull << 53);
    }
    phl::cxd cunit() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
};

inline Eigen::MatrixXcd random_matrix(Rng& rng, int d) {
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = rng.cunit();
    return m;
}

inline Eigen::MatrixXcd random_hermitian(Rng& rng, int d) {
    Eigen::MatrixXcd m = random_matrix(rng, d);
    return 0.5 * (m + m.adjoint()).eval();
}

/// Random density matrix: normalized Hermitian PSD.
inline Eigen::MatrixXcd random_density(Rng& rng, int d) {
    Eigen::MatrixXcd m = random_matrix(rng, d);
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
}

/// Coherent-state amplitudes on n_max levels.
inline Eigen::VectorXcd coherent_vector(phl::cxd alpha, int n_max) {
    Eigen::VectorXcd v(n_max);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < n_max; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
    return v;
}

inline Eigen::VectorXd poisson_distribution(double mean, int n_max) {
    Eigen::VectorXd p(n_max);
    p(0) = std::exp(-mean);
    for (int n = 1; n < n_max; ++n) p(n) = p(n - 1) * mean / double(n);
    return p;
}

inline Eigen::VectorXd thermal_distribution(double mean, int n_max) {
    Eigen::VectorXd p(n_max);
    const double q = mean / (1.0 + mean);
    p(0) = 1.0 - q;
    for (int n = 1; n < n_max; ++n) p(n) = p(n - 1) * q;
    return p;
}

} // namespace testutil

#endif

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "qmetro/complex_matrix.hpp"
#include "qmetro/probes.hpp"

namespace qmetro::testing {

inline double diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).frobenius_norm();
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = n(rng);
            b(i, j) = cplx(re, n(rng));
        }
    }
    return b + b.adjoint();
}

inline ComplexMatrix fd_matrix(const std::function<ComplexMatrix(double)> &f, double x,
                               double h = 1e-6) {
    return (f(x + h) - f(x - h)) * cplx(1.0 / (2.0 * h));
}

inline std::vector<double> fd_vector(const std::function<std::vector<double>(double)> &f,
                                     double x, double h = 1e-6) {
    const auto up = f(x + h);
    const auto down = f(x - h);
    std::vector<double> d(up.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = (up[i] - down[i]) / (2.0 * h);
    }
    return d;
}

inline ComplexMatrix ket_projector(std::vector<cplx> v) { return ComplexMatrix::outer(v); }

} // namespace qmetro::testing

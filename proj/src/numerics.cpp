#include "qmetro/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmetro/error.hpp"
#include "qmetro/kernels.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

ComplexMatrix HermitianEigensystem::apply(const std::function<cplx(double)> &f) const {
    const std::size_t n = eigenvectors.dim();
    // V·diag(f)·V† computed as (V·diag(f))·V†
    ComplexMatrix scaled = eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx fj = f(eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) *= fj;
        }
    }
    return scaled * eigenvectors.adjoint();
}

ComplexMatrix HermitianEigensystem::reconstruct() const {
    return apply([](double x) { return cplx{x, 0.0}; });
}

double hermiticity_defect(const ComplexMatrix &a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double d = std::norm(a(i, j) - std::conj(a(j, i)));
            s += (i == j) ? d : 2.0 * d;
        }
    }
    return std::sqrt(s) / std::max(a.frobenius_norm(), 1.0);
}

bool is_hermitian(const ComplexMatrix &a, double rel_tol) {
    return hermiticity_defect(a) <= rel_tol;
}

HermitianEigensystem hermitian_eig(const ComplexMatrix &a) {
    if (!is_hermitian(a, tol::hermitian)) {
        throw Error(ErrorKind::NotHermitian,
                    "hermiticity defect " + std::to_string(hermiticity_defect(a)));
    }
    auto jac = kernels::jacobi_eig(a, tol::jacobi_offdiag, tol::jacobi_max_sweeps);
    if (!jac.converged) {
        throw Error(ErrorKind::NoConvergence,
                    "Jacobi did not converge in " + std::to_string(jac.sweeps) + " sweeps");
    }
    const std::size_t n = a.dim();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return jac.eigenvalues[x] < jac.eigenvalues[y];
    });
    HermitianEigensystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = jac.eigenvalues[order[k]];
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = jac.eigenvectors(i, order[k]);
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) { return kernels::kron(a, b); }

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        return ComplexMatrix::identity(1);
    }
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kernels::kron(out, factors[k]);
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
    if (dims.empty() || total != a.dim()) {
        throw Error(ErrorKind::DimMismatch, "subsystem dims do not multiply to the matrix dim");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw Error(ErrorKind::DimMismatch, "invalid keep index");
        }
        kept[k] = true;
    }
    std::size_t dim_keep = 1;
    std::size_t dim_trace = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        (kept[s] ? dim_keep : dim_trace) *= dims[s];
    }

    // full index from (kept multi-index, traced multi-index)
    const std::size_t ns = dims.size();
    auto compose = [&](std::size_t ik, std::size_t it) {
        std::size_t idx = 0;
        std::vector<std::size_t> digits(ns);
        for (std::size_t s = ns; s-- > 0;) {
            if (kept[s]) {
                digits[s] = ik % dims[s];
                ik /= dims[s];
            } else {
                digits[s] = it % dims[s];
                it /= dims[s];
            }
        }
        for (std::size_t s = 0; s < ns; ++s) {
            idx = idx * dims[s] + digits[s];
        }
        return idx;
    };

    std::vector<std::size_t> map(dim_keep * dim_trace);
    for (std::size_t ik = 0; ik < dim_keep; ++ik) {
        for (std::size_t it = 0; it < dim_trace; ++it) {
            map[ik * dim_trace + it] = compose(ik, it);
        }
    }
    ComplexMatrix out(dim_keep);
    for (std::size_t r = 0; r < dim_keep; ++r) {
        for (std::size_t c = 0; c < dim_keep; ++c) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dim_trace; ++t) {
                s += a(map[r * dim_trace + t], map[c * dim_trace + t]);
            }
            out(r, c) = s;
        }
    }
    return out;
}

ComplexMatrix unitary_from_generator(const ComplexMatrix &h, double phi, int sign) {
    if (sign != 1 && sign != -1) {
        throw Error(ErrorKind::DomainError, "sign must be +1 or -1");
    }
    if (phi == 0.0) {
        if (!is_hermitian(h, tol::hermitian)) {
            throw Error(ErrorKind::NotHermitian, "generator");
        }
        return ComplexMatrix::identity(h.dim());
    }
    const auto eig = hermitian_eig(h);
    const double scale = sign * phi;
    return eig.apply([scale](double x) { return std::polar(1.0, scale * x); });
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a) {
    const auto eig = hermitian_eig(a);
    const double scale = std::max(1.0, std::abs(eig.eigenvalues.back()));
    if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < tol::psd_eigenvalue * scale) {
        throw Error(ErrorKind::NotPsd,
                    "smallest eigenvalue " + std::to_string(eig.eigenvalues.front()));
    }
    return eig.apply([](double x) { return cplx{std::sqrt(std::max(x, 0.0)), 0.0}; });
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b + b * a;
}

ComplexMatrix embed_qubit_operator(const ComplexMatrix &op, std::size_t qubit, std::size_t n) {
    if (op.dim() != 2 || qubit >= n) {
        throw Error(ErrorKind::DimMismatch, "single-qubit embedding");
    }
    std::vector<ComplexMatrix> factors(n, ComplexMatrix::identity(2));
    factors[qubit] = op;
    return tensor(factors);
}

} // namespace qmetro

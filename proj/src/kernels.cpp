#include "qmetro/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qmetro/error.hpp"

namespace qmetro::kernels {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimMismatch, what);
    }
}

struct QubitLayout {
    std::size_t low_mask;
    unsigned shift;
};

QubitLayout qubit_layout(std::size_t dim, std::size_t qubit) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw Error(ErrorKind::DimMismatch, "qubit contraction needs a power-of-two dimension");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (qubit >= n) {
        throw Error(ErrorKind::DimMismatch, "qubit index out of range");
    }
    const auto shift = static_cast<unsigned>(n - 1 - qubit);
    return {(std::size_t{1} << shift) - 1, shift};
}

// reduced index r with bit `bit` inserted at position `shift`
inline std::size_t insert_bit(std::size_t r, const QubitLayout &l, std::size_t bit) {
    return ((r & ~l.low_mask) << 1) | (bit << l.shift) | (r & l.low_mask);
}

struct Rotation {
    std::size_t p;
    std::size_t q;
    double c;
    double s;
    cplx e; // phase of A[p,q]
    bool active;
};

Rotation make_rotation(const ComplexMatrix &a, std::size_t p, std::size_t q) {
    const cplx b = a(p, q);
    const double mag = std::abs(b);
    if (mag < 1e-300) {
        return {p, q, 1.0, 0.0, 1.0, false};
    }
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {p, q, c, t * c, b / mag, true};
}

// A ← A·J restricted to one row
inline void rotate_columns(cplx *row, const Rotation &r) {
    const cplx x = row[r.p];
    const cplx y = row[r.q];
    row[r.p] = r.c * x - r.s * std::conj(r.e) * y;
    row[r.q] = r.s * r.e * x + r.c * y;
}

// A ← J†·A restricted to rows p,q
inline void rotate_rows(ComplexMatrix &a, const Rotation &r) {
    const std::size_t n = a.dim();
    cplx *rp = &a(r.p, 0);
    cplx *rq = &a(r.q, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx x = rp[j];
        const cplx y = rq[j];
        rp[j] = r.c * x - r.s * r.e * y;
        rq[j] = r.s * std::conj(r.e) * x + r.c * y;
    }
}

inline void clean_pair(ComplexMatrix &a, const Rotation &r) {
    a(r.p, r.q) = 0.0;
    a(r.q, r.p) = 0.0;
    a(r.p, r.p) = a(r.p, r.p).real();
    a(r.q, r.q) = a(r.q, r.q).real();
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

JacobiResult finish(const ComplexMatrix &a, ComplexMatrix v, int sweeps, bool converged) {
    JacobiResult out;
    out.eigenvalues.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.eigenvalues[i] = a(i, i).real();
    }
    out.eigenvectors = std::move(v);
    out.sweeps = sweeps;
    out.converged = converged;
    return out;
}

} // namespace

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 64)
    for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        cplx *crow = &c(i, 0);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            const cplx *brow = &b(k, 0);
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix c(na * nb);
    const auto rows = static_cast<std::ptrdiff_t>(na * nb);
#pragma omp parallel for schedule(static) if (na * nb >= 64)
    for (std::ptrdiff_t rr = 0; rr < rows; ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        const std::size_t i = r / nb;
        const std::size_t k = r % nb;
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            for (std::size_t l = 0; l < nb; ++l) {
                c(r, j * nb + l) = aij * b(k, l);
            }
        }
    }
    return c;
}

ComplexMatrix contract_qubit(const ComplexMatrix &m, std::size_t qubit,
                             const std::array<cplx, 2> &v) {
    const QubitLayout l = qubit_layout(m.dim(), qubit);
    const std::size_t half = m.dim() / 2;
    const cplx w[2] = {std::conj(v[0]), std::conj(v[1])};
    ComplexMatrix out(half);
    const auto rows = static_cast<std::ptrdiff_t>(half);
#pragma omp parallel for schedule(static) if (half >= 64)
    for (std::ptrdiff_t rr = 0; rr < rows; ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        const std::size_t r0 = insert_bit(r, l, 0);
        const std::size_t r1 = insert_bit(r, l, 1);
        for (std::size_t c = 0; c < half; ++c) {
            const std::size_t c0 = insert_bit(c, l, 0);
            const std::size_t c1 = insert_bit(c, l, 1);
            out(r, c) = w[0] * (m(r0, c0) * v[0] + m(r0, c1) * v[1]) +
                        w[1] * (m(r1, c0) * v[0] + m(r1, c1) * v[1]);
        }
    }
    return out;
}

JacobiResult jacobi_eig(const ComplexMatrix &input, double offdiag_threshold, int max_sweeps) {
    ComplexMatrix a = input;
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = offdiag_threshold * a.frobenius_norm();
    if (n < 2) {
        return finish(a, std::move(v), 0, true);
    }

    // round-robin tournament; index n is a phantom when n is odd
    const std::size_t m = n + (n % 2);
    std::vector<std::size_t> players(m);
    std::iota(players.begin(), players.end(), std::size_t{0});
    std::vector<Rotation> rotations;
    rotations.reserve(m / 2);
    const auto rows = static_cast<std::ptrdiff_t>(n);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            return finish(a, std::move(v), sweep, true);
        }
        for (std::size_t step = 0; step + 1 < m; ++step) {
            rotations.clear();
            for (std::size_t k = 0; k < m / 2; ++k) {
                std::size_t p = players[k];
                std::size_t q = players[m - 1 - k];
                if (p >= n || q >= n) {
                    continue;
                }
                if (p > q) {
                    std::swap(p, q);
                }
                Rotation r = make_rotation(a, p, q);
                if (r.active) {
                    rotations.push_back(r);
                }
            }
            if (!rotations.empty()) {
                const auto nrot = static_cast<std::ptrdiff_t>(rotations.size());
#pragma omp parallel for schedule(static) if (n >= 64)
                for (std::ptrdiff_t i = 0; i < rows; ++i) {
                    cplx *arow = &a(static_cast<std::size_t>(i), 0);
                    cplx *vrow = &v(static_cast<std::size_t>(i), 0);
                    for (const Rotation &r : rotations) {
                        rotate_columns(arow, r);
                        rotate_columns(vrow, r);
                    }
                }
#pragma omp parallel for schedule(static) if (n >= 64)
                for (std::ptrdiff_t k = 0; k < nrot; ++k) {
                    rotate_rows(a, rotations[static_cast<std::size_t>(k)]);
                    clean_pair(a, rotations[static_cast<std::size_t>(k)]);
                }
            }
            // rotate everyone but players[0]
            std::rotate(players.begin() + 1, players.end() - 1, players.end());
        }
    }
    const bool converged = off_diagonal_norm(a) <= threshold;
    return finish(a, std::move(v), max_sweeps, converged);
}

namespace serial {

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix c(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    c(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return c;
}

ComplexMatrix contract_qubit(const ComplexMatrix &m, std::size_t qubit,
                             const std::array<cplx, 2> &v) {
    const QubitLayout l = qubit_layout(m.dim(), qubit);
    const std::size_t half = m.dim() / 2;
    ComplexMatrix out(half);
    for (std::size_t r = 0; r < half; ++r) {
        for (std::size_t c = 0; c < half; ++c) {
            cplx s = 0.0;
            for (std::size_t x = 0; x < 2; ++x) {
                for (std::size_t y = 0; y < 2; ++y) {
                    s += std::conj(v[x]) * m(insert_bit(r, l, x), insert_bit(c, l, y)) * v[y];
                }
            }
            out(r, c) = s;
        }
    }
    return out;
}

JacobiResult jacobi_eig(const ComplexMatrix &input, double offdiag_threshold, int max_sweeps) {
    ComplexMatrix a = input;
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = offdiag_threshold * a.frobenius_norm();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            return finish(a, std::move(v), sweep, true);
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Rotation r = make_rotation(a, p, q);
                if (!r.active) {
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    rotate_columns(&a(i, 0), r);
                    rotate_columns(&v(i, 0), r);
                }
                rotate_rows(a, r);
                clean_pair(a, r);
            }
        }
    }
    const bool converged = off_diagonal_norm(a) <= threshold;
    return finish(a, std::move(v), max_sweeps, converged);
}

} // namespace serial

} // namespace qmetro::kernels

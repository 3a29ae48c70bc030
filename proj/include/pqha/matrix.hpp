#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>

#include "pqha/common.hpp"

namespace pqha {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr Complex imag_unit{0.0, 1.0};

inline void check_margin(int dim, int margin) {
    if (margin < 0 || 2 * margin >= dim)
        throw MarginTooLarge("margin " + std::to_string(margin) +
                             " leaves no interior for dim " + std::to_string(dim));
}

// Largest |entry| over the interior block, i.e. rows and columns below
// dim - margin. Truncating the basis corrupts products only near the top
// levels, so identities are asserted on this block.
inline double interior_max_abs(const Matrix& m, int margin) {
    const int dim = static_cast<int>(m.rows());
    check_margin(dim, margin);
    const int d = dim - margin;
    return m.topLeftCorner(d, d).cwiseAbs().maxCoeff();
}

inline double interior_residual(const Matrix& m, int margin) {
    return interior_max_abs(m, margin);
}

// Residual of the identity lhs == rhs, normalized by the operand scale so the
// number stays comparable to machine epsilon regardless of how large the
// matrix entries grow. Floating-point error in a product is proportional to
// the operand magnitudes, not to 1.
inline double scaled_residual(const Matrix& lhs, const Matrix& rhs, int margin) {
    const double scale = std::max({1.0, interior_max_abs(lhs, margin),
                                   interior_max_abs(rhs, margin)});
    return interior_max_abs(lhs - rhs, margin) / scale;
}

inline double hermiticity_residual(const Matrix& m, int margin) {
    return scaled_residual(m.adjoint(), m, margin);
}

// diag(f(0), ..., f(dim-1)) as a dense complex matrix
template <typename Fn>
Matrix diagonal_of(int dim, Fn&& f) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = Complex(f(n), 0.0);
    return m;
}

}  // namespace pqha

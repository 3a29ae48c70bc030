#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pqha {

// Error types. Each names the condition it guards; messages carry the offending values.
struct UnphysicalDSF : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateParams : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingTable : std::runtime_error { using std::runtime_error::runtime_error; };
struct ExponentOverflow : std::runtime_error { using std::runtime_error::runtime_error; };
struct LengthMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct MarginTooLarge : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingHamiltonian : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateFit : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonlinearEtaA : std::runtime_error { using std::runtime_error::runtime_error; };
struct InsufficientFRange : std::runtime_error { using std::runtime_error::runtime_error; };
struct WrongKind : std::runtime_error { using std::runtime_error::runtime_error; };

namespace tol {
// Relative |q-p| below which two-parameter expressions switch to their q->p limit.
inline constexpr double degenerate = 1e-9;
// Threshold for "is zero" tests on structure-function values.
inline constexpr double zero = 1e-12;
// |exponent * ln Q| beyond this would overflow a double (exp(709) ~ 8e307).
inline constexpr double exponent_guard = 700.0;
}  // namespace tol

inline constexpr int default_dim = 48;
inline constexpr int max_dim = 1024;

// Q^e with a guard against double overflow; exact 1.0 whenever Q == 1.
inline double checked_qpow(double Q, double e) {
    const double lnq = std::log(Q);
    if (std::abs(e * lnq) > tol::exponent_guard)
        throw ExponentOverflow("Q^e overflows double range: Q=" + std::to_string(Q) +
                               " e=" + std::to_string(e));
    return std::pow(Q, e);
}

// Deformation parameters shared by every module. Q = q/p is the ratio all
// operator-level expressions depend on; p and q enter separately only through
// the structure functions and the G/H coefficient pair.
struct DeformationParams {
    double p = 1.0;
    double q = 1.0;
    double mu = 0.0;
    double hbar = 1.0;

    double Q() const { return q / p; }

    // true when q is within the degenerate window of p and limit branches apply
    bool near_equal() const {
        return std::abs(q - p) / std::max(p, q) <= tol::degenerate;
    }

    void validate() const {
        if (!(p > 0.0) || !(q > 0.0))
            throw DegenerateParams("deformation parameters require p > 0 and q > 0, got p=" +
                                   std::to_string(p) + " q=" + std::to_string(q));
        if (!(hbar > 0.0))
            throw DegenerateParams("hbar must be positive, got " + std::to_string(hbar));
    }
};

}  // namespace pqha

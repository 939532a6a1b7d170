#pragma once

// Log-domain gamma function evaluation for real and complex arguments with
// positive real part.

namespace expop {

/// Complex argument x + iy of the gamma function; only re > 0 is supported.
struct GammaArg {
    double re;
    double im;
};

/// ln Γ(x) for x > 0.
double ln_gamma_real(double x);

/// ln|Γ(x + iy)|² for x > 0. Even in y; never overflows since only the
/// logarithm is formed.
double log_abs_gamma_sq(double x, double y);
double log_abs_gamma_sq(GammaArg z);

/// Leading large-|y| form ln(2π) + (2x − 1) ln|y| − π|y| of ln|Γ(x + iy)|².
double log_abs_gamma_sq_asymptotic(double x, double y);

}  // namespace expop

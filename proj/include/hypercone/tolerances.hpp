#pragma once

namespace hypercone {

// Every numerical threshold used by the library lives here so callers (and the
// CLI flags) can override them in one place.
struct Tolerances {
  double orthTol = 1e-10;      // ||Q^T Q - I||_max for eigenvector matrices
  double reconTol = 1e-9;      // eigen-decomposition reconstruction, relative
  double rootTol = 1e-11;      // bisection width, relative to bracket magnitude
  double pdTol = 1e-10;        // smallest eigenvalue required by inv_sqrt
  double traceTol = 1e-10;     // |tr(B)| for basis elements
  double rankTol = 1e-10;      // Gram-Schmidt pivot, Gram matrix definiteness
  double membershipTol = 1e-9; // slack for closed-cone membership
  double identityTol = 1e-8;   // max relative residual of verified identities
  double genericTol = 1e-6;    // |value| required of a constant-estimation sample
  int jacobiSweeps = 30;
  double jacobiThreshold = 1e-12;  // off-diagonal Frobenius / ||X||_F
  int genericResamples = 100;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

}  // namespace hypercone

#pragma once

// Single source of truth for every numerical tolerance used by the library.
// Tests assert against these same constants.

namespace entrosep::tol {

// Hermiticity check: max|A - A^H| <= kHermitian * max|A|.
inline constexpr double kHermitian = 1e-10;

// Jacobi sweep termination: offdiag Frobenius <= kOffDiagonal * ||A||_F.
inline constexpr double kOffDiagonal = 1e-14;

// Eigendecomposition reconstruction: max|A - V L V^H| <= kResidual * max|A|.
inline constexpr double kResidual = 1e-10;

// Hard cap on Jacobi sweeps before giving up.
inline constexpr int kMaxSweeps = 100;

// Density matrices: trace-one and positivity slack.
inline constexpr double kTraceOne = 1e-10;
inline constexpr double kPsdClip = 1e-8;

// Spectrum construction: eigenvalues below this are solver noise on exact
// zeros and are snapped to 0. Must sit well above the Jacobi noise floor
// (~1e-14 for the matrix orders handled here) and well below any genuine
// probability appearing in the state families.
inline constexpr double kZeroFloor = 1e-12;

// Multiplicity grouping of the top eigenvalue.
inline constexpr double kTopDegeneracy = 1e-9;

// Spectrum sum-to-one slack.
inline constexpr double kSpectrumSum = 1e-9;

// Parameter validation for state families (unit vectors, simplex weights).
inline constexpr double kFamilyParams = 1e-12;

// Per-comparison slack in majorization partial sums, shared by the
// largest-eigenvalue test so the i=1 comparison and that test agree exactly.
inline constexpr double kMajorization = 1e-10;

// Removable-singularity switch: Tsallis q near 1, ExpForm q near 0,
// Renyi alpha near 1.
inline constexpr double kQLimit = 1e-6;

// Bisection stops when the bracket is narrower than this.
inline constexpr double kRootStep = 1e-10;

// Number of equispaced points scanned when looking for a sign change.
inline constexpr int kRootScanPoints = 41;

// Normalised conditional entropies reject denominators below this.
inline constexpr double kDenominatorFloor = 1e-300;

}  // namespace entrosep::tol

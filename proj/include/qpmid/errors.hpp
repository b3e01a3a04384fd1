#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qpmid {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction of a neutral-type quasipolynomial (deg ptau == deg p0).
// The root counting used here relies on the retarded-type guarantee of
// finitely many roots per vertical strip; the neutral branch (finite
// unstable-root count under a limit condition on ptau/p0) is not built.
struct NeutralTypeError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// A requested evaluation point sits on (or numerically too close to) a
// singular point of the second-order equation data.
struct SingularPointError : Error {
  using Error::Error;
};

struct BranchCutError : Error {
  using Error::Error;
};

// Series did not converge within the term cap; carries the partial sum.
struct SeriesDivergence : Error {
  SeriesDivergence(const std::string& what, std::complex<double> partial)
      : Error(what), partial_sum(partial) {}
  std::complex<double> partial_sum;
};

struct QuadratureError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

// A contour endpoint or edge kept colliding with a root after the
// documented deterministic perturbations.
struct BoundaryCollisionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace qpmid

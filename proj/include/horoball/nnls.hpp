#pragma once

#include "horoball/types.hpp"

namespace horoball {

struct NnlsResult {
  Vector coefficients;   // lambda >= 0
  double residual_norm;  // |A*lambda - b|_2
};

// Nonnegative least squares, Lawson-Hanson active set.  Sized for the
// small dense systems that show up in cone projections (tens of columns).
NnlsResult nnls(const Matrix& a, const Vector& b);

}  // namespace horoball

#pragma once

#include "qmms/numbers.hpp"

namespace qmms {

// Gaussian binomial coefficient [n choose k]_q: the number of k-dimensional
// subspaces of an n-dimensional vector space over F_q. Zero for k < 0 or
// k > n; throws std::invalid_argument for q < 2 or n < 0.
BigInt gaussian(int n, int k, int q);

// Number of points of the (n-1)-dimensional projective space over F_q,
// i.e. [n choose 1]_q = (q^n - 1) / (q - 1). Zero for n = 0.
BigInt gaussm(int n, int q);

}  // namespace qmms

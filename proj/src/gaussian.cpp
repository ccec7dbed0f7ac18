#include "qmms/gaussian.hpp"

#include <cassert>
#include <stdexcept>

namespace qmms {

BigInt gaussian(int n, int k, int q) {
    if (q < 2) throw std::invalid_argument("gaussian: q must be >= 2");
    if (n < 0) throw std::invalid_argument("gaussian: n must be >= 0");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;  // complement symmetry, fewer factors

    // Multiply factor by factor; every partial product equals the smaller
    // coefficient [n-k+i choose i]_q, so each division is exact.
    BigInt result = 1;
    BigInt qi = 1;          // q^i
    BigInt qn = int_pow(q, static_cast<unsigned>(n - k));  // q^(n-k+i)
    for (int i = 1; i <= k; ++i) {
        qi *= q;
        qn *= q;
        result *= qn - 1;
        BigInt den = qi - 1;
        assert(result % den == 0);
        result /= den;
    }
    return result;
}

BigInt gaussm(int n, int q) {
    return gaussian(n, 1, q);
}

}  // namespace qmms

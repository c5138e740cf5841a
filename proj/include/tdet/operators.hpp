#pragma once

// Finite sections of the Toeplitz matrix T_n(phi), the Hankel matrices
// U_n(i, j) = u_{n+i+j+1}, V_n(i, j) = v_{-n-i-j-1}, the kernel K_n = U_n V_n
// on l^2({n, n+1, ...}) and the delta vectors of the quotient formula.
//
// K_n follows the sum over k >= 1 literally; some references carry an extra
// (-1)^{i+j} factor, which leaves det(I - K_n) unchanged and is not applied here.

#include "tdet/laurent.hpp"
#include "tdet/matrix.hpp"

#include <cstddef>
#include <vector>

namespace tdet {

/// T_n(phi): block (i, j) = phi_{i-j}, i, j = 0..n-1.
ComplexMatrix toeplitz_matrix(const LaurentSeries& phi, std::size_t n);

/// m x m (blocks) section of U_n.
ComplexMatrix hankel_U(const LaurentSeries& u, std::size_t n, std::size_t m);
/// m x m (blocks) section of V_n.
ComplexMatrix hankel_V(const LaurentSeries& v, std::size_t n, std::size_t m);

/// Section size beyond which U_n and V_n vanish identically: max(max(bands) - n, 1).
std::size_t exact_section(const LaurentSeries& u, const LaurentSeries& v, std::size_t n);

/// m x m (blocks) section of K_n, rows and columns offset by n, computed as
/// hankel_U * hankel_V with an inner dimension that covers every nonzero term.
ComplexMatrix kernel_K(const LaurentSeries& u, const LaurentSeries& v, std::size_t n, std::size_t m);

struct DeltaVectors {
  std::vector<Complex> u_delta;  ///< u_{n+i}
  std::vector<Complex> v_delta;  ///< v_{-n-i}
};

/// Scalar only.
DeltaVectors delta_vectors(const LaurentSeries& u, const LaurentSeries& v, std::size_t n, std::size_t m);

/// Hilbert-Schmidt norm of the full (untruncated) U_n, from the coefficients:
/// sqrt(sum_{l >= n+1} (l - n) ||u_l||_F^2).  Mirror for V_n with indices -l.
double hankel_U_hs_norm(const LaurentSeries& u, std::size_t n);
double hankel_V_hs_norm(const LaurentSeries& v, std::size_t n);

} // namespace tdet

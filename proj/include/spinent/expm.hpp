// expm.hpp — Matrix exponential by scaling and squaring with a [13/13] Pade approximant

#pragma once

#include "spinent/linalg.hpp"

namespace spinent {

// exp(a) for a dense complex square matrix. Follows Higham (2005): the 1-norm
// selects the lowest Pade degree in {3, 5, 7, 9, 13} that meets double precision,
// with 2^s scaling for degree 13.
Matrix expm(const Matrix& a);

} // namespace spinent

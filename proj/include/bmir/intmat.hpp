#pragma once

#include <gmpxx.h>

#include <vector>

namespace bmir {

using IntRow = std::vector<long>;
using IntMatrix = std::vector<IntRow>;

// Row-style Hermite normal form: pivots positive, entries above each pivot reduced
// into [0, pivot), zero rows removed.
IntMatrix hermite_normal_form(const IntMatrix& a);

// Rows form a basis of the saturated lattice {x in Z^n : x . col = 0 for all cols},
// i.e. the integer left kernel of a (a has n rows). Returned in HNF.
IntMatrix integer_left_kernel(const IntMatrix& a);

long matrix_rank(const IntMatrix& a);
IntMatrix transpose(const IntMatrix& a);
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace bmir

#include "tikreg/types.hpp"

namespace tikreg {

bool all_finite(const Matrix& a) { return a.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace tikreg

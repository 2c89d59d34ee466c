#pragma once
// Invariant polynomials typed in from the source formulas (x1 = alpha,
// x2 = beta, ...), independent of the bundled catalog.

#include "quivar/poly.hpp"

namespace invs {

using quivar::MultiPoly;
using quivar::parse_polynomial;

inline MultiPoly T() { return parse_polynomial("x1*x2*(x2^4 - x1^4)", 2); }
inline MultiPoly W() { return parse_polynomial("x1^8 + 14 x1^4 x2^4 + x2^8", 2); }
inline MultiPoly kappa() { return parse_polynomial("x1^12 - 33 x1^8 x2^4 - 33 x1^4 x2^8 + x2^12", 2); }
inline MultiPoly kappa_printed() { return parse_polynomial("x1^12 - 33 x1^8 x2^4 - 33 x2^4 x1^8 + x2^12", 2); }
inline MultiPoly G() {
    return parse_polynomial("x1^24 + 759 x1^16 x2^8 + 2576 x1^12 x2^12 + 759 x1^8 x2^16 + x2^24", 2);
}
inline MultiPoly inv8() { return parse_polynomial("Sigma(8) + 14 Sigma(4,4) + 168 Sigma(2,2,2,2)", 4); }
inline MultiPoly inv12() {
    return parse_polynomial("Sigma(12) - 33 Sigma(8,4) + 330 Sigma(4,4,4) + 792 Sigma(6,2,2,2)", 4);
}
inline MultiPoly inv20() {
    return parse_polynomial(
        "Sigma(20) - 19 Sigma(16,4) - 494 Sigma(12,8) + 380 Sigma(12,4,4) + 7296 Sigma(10,6,2,2)"
        " + 1710 Sigma(8,8,4) + 133380 Sigma(8,4,4,4) + 102144 Sigma(6,6,6,2)",
        4);
}
inline MultiPoly inv24() {
    return parse_polynomial(
        "Sigma(24) + 759 Sigma(16,8) + 2576 Sigma(12,12) + 212520 Sigma(12,4,4,4) + 340032 Sigma(10,6,6,2)"
        " + 22770 Sigma(8,8,8) + 1275120 Sigma(8,8,4,4) + 4080384 Sigma(6,6,6,6)",
        4);
}
inline MultiPoly I2() { return parse_polynomial("Sigma(2)", 8); }
inline MultiPoly I8() { return parse_polynomial("Sigma(8) + 56 Sigma(4,2,2) - 42 Sigma(4,4) - 168 Sigma(2,2,2,2)", 8); }
inline MultiPoly I8_corrected() { return I8() - parse_polynomial("6720 Sigma(1,1,1,1,1,1,1,1)", 8); }

}  // namespace invs

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quivar/group.hpp"

namespace quivar {

inline constexpr int kDefaultSeriesOrder = 40;

struct MolienSeries {
    std::vector<mpq_class> coefficients;  // c_0 .. c_N
    std::uint64_t group_order = 0;        // 0 for expansions of closed forms

    int order() const { return int(coefficients.size()) - 1; }
    // "1 + t^4 + t^6 + ..." up to the truncation order.
    std::string to_string() const;
};

// numerator / prod (1 - t^d)^e
struct ClosedForm {
    std::vector<mpz_class> numerator;               // coefficient of t^k at index k
    std::vector<std::pair<int, int>> denominator;   // (d, e), sorted by d

    std::string to_string() const;
};

// Accepts "1/((1-t^4)(1-t^6))", "(1-t^4+t^8)/((1-t^6)(1-t^8))",
// "1 / (1-t^8)(1-t^12)^2" and similar. Numerator must have constant term 1.
ClosedForm parse_closed_form(std::string_view text);

// (1/|G|) sum over G of 1/det(I - t g), truncated at order N. Elements are
// bucketed by det(I - t g) first, so only distinct polynomials are inverted.
// Throws NonIntegralCoefficient if any coefficient is not a nonnegative integer.
MolienSeries molien_series(const FiniteMatrixGroup& g, int order = kDefaultSeriesOrder, unsigned threads = 1);

MolienSeries expand_closed_form(const ClosedForm& form, int order = kDefaultSeriesOrder);

struct MolienComparison {
    bool match = false;
    std::optional<int> first_mismatch;
    MolienSeries computed;
    MolienSeries expected;
};
MolienComparison molien_compare(const FiniteMatrixGroup& g, const ClosedForm& form, int order = kDefaultSeriesOrder,
                                unsigned threads = 1);
MolienComparison compare_series(const MolienSeries& computed, const MolienSeries& expected);

mpz_class degrees_product(std::span<const long long> degrees);

// Coefficients d_0..d_n of det(I - t M), via Faddeev-LeVerrier.
std::vector<CycNum> det_one_minus_t(const CycMatrix& m);

}  // namespace quivar

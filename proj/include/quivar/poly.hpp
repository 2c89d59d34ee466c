#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quivar/group.hpp"

namespace quivar {

// Sparse polynomial in x1..xn (n <= 8) over Q(z24). Exponents are packed one
// byte per variable into a 64-bit key, x1 in the most significant byte, so
// each exponent is at most 255. Terms are kept sorted in graded
// lexicographic order (highest first) with no zero coefficients.
class MultiPoly {
public:
    static constexpr int kMaxVars = 8;
    using Key = std::uint64_t;
    using Term = std::pair<Key, CycNum>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars);

    static MultiPoly constant(int nvars, const CycNum& c);
    static MultiPoly variable(int nvars, int index);  // 0-based
    static MultiPoly monomial(int nvars, std::span<const int> exponents, const CycNum& c = CycNum(1));
    static MultiPoly from_terms(int nvars, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for zero
    bool is_homogeneous() const;
    CycNum coefficient(std::span<const int> exponents) const;

    static Key pack(std::span<const int> exponents);
    static std::vector<int> unpack(Key key, int nvars);
    static int key_degree(Key key);
    static int key_exponent(Key key, int var) { return int((key >> (8 * (kMaxVars - 1 - var))) & 0xff); }

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const CycNum& c) const;
    MultiPoly pow(int e) const;
    MultiPoly partial(int var) const;

    CycNum evaluate(std::span<const CycNum> point) const;
    std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // "x1^4 + 14*x1^2*x2^2 + ..." in the polynomial grammar.
    std::string to_string() const;

private:
    static MultiPoly from_map(int nvars, std::vector<Term>&& unsorted);
    void require_same(const MultiPoly& o) const;

    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Monomial symmetric polynomial: every distinct permutation of the padded
// partition as an exponent vector, each with coefficient 1.
MultiPoly msym(std::span<const int> lambda, int nvars);

// f(Mx): x_i -> sum_j M[i,j] x_j.
MultiPoly substitute_linear(const MultiPoly& f, const CycMatrix& m);
bool is_invariant(const MultiPoly& f, std::span<const CycMatrix> generators);

inline constexpr std::uint64_t kDefaultReynoldsBudget = 2'000'000'000;

// Basis (reduced row echelon over the monomials, graded lex order) of the
// degree-d invariants of G. Averages first over the subgroup of monomial
// matrices, then over a right transversal. Throws CapExceeded when
// |G| * #monomials exceeds the budget.
std::vector<MultiPoly> reynolds_basis(const FiniteMatrixGroup& g, int degree,
                                      std::uint64_t budget = kDefaultReynoldsBudget);
// Same result by averaging every monomial over every element; test oracle
// and fallback for tiny groups.
std::vector<MultiPoly> reynolds_basis_naive(const FiniteMatrixGroup& g, int degree);

// Reduced row echelon basis of the span.
std::vector<MultiPoly> span_basis(const std::vector<MultiPoly>& polys);

std::optional<CycNum> proportional(const MultiPoly& f, const MultiPoly& g);

using PolyEnv = std::map<std::string, MultiPoly, std::less<>>;

// Grammar: sums/products/integer powers of names from env, variables x1..xn,
// cyclotomic constants and numbers, and the macro Sigma(l1,l2,...; n=k).
// All polynomials share nvars; mixing arities throws DimensionMismatch.
MultiPoly parse_polynomial(std::string_view text, int nvars, const PolyEnv& env = {});
bool relation_check(std::string_view expr, int nvars, const PolyEnv& env);

// Full rank of the Jacobian at one of `tries` seeded random rational points.
bool jacobian_independent(const std::vector<MultiPoly>& fs, int tries = 5, std::uint64_t seed = 20240607);

}  // namespace quivar

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quivar/matrix.hpp"
#include "quivar/poly.hpp"

namespace quivar {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

struct QubitState {
    cplx alpha, beta;
};

// Basis order |00>, |01>, |10>, |11>.
struct QuartitState {
    cplx alpha, beta, gamma, delta;
};

struct BlochVector {
    double xi = 0, eta = 0, zeta = 0;
    double norm() const;
};

struct S4Point {
    double xi = 0, eta = 0, u = 0, v = 0, zeta = 0;
    double norm() const;
};

// w + x i + y j + z k with i^2 = j^2 = k^2 = -1, ij = k.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    // a + b j
    static Quaternion from_pair(cplx a, cplx b) { return {a.real(), a.imag(), b.real(), b.imag()}; }
    cplx first() const { return {w, x}; }
    cplx second() const { return {y, z}; }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm() const;
    Quaternion operator*(const Quaternion& o) const;
    Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
};

// p/q; q = 0 is the point at infinity.
struct RiemannPoint {
    cplx p{1}, q{0};
    bool is_infinity(double tol = kDefaultTol) const;
    // p/q for finite points.
    cplx value() const { return p / q; }
    bool same_point(const RiemannPoint& o, double tol = kDefaultTol) const;
};

double state_norm(const QubitState& s);
double state_norm(const QuartitState& s);
QubitState normalized(const QubitState& s);
QuartitState normalized(const QuartitState& s);

// Throws NotNormalized when the norm is off by more than tol.
BlochVector bloch_map(const QubitState& psi, double tol = kNormTol);
RiemannPoint stereographic(const BlochVector& b, double tol = kDefaultTol);
BlochVector inverse_stereographic(const RiemannPoint& r);

// u + i v = 2 (alpha delta - beta gamma), zeta = |Q1|^2 - |Q2|^2.
S4Point second_hopf(const QuartitState& psi, double tol = kNormTol);
std::pair<Quaternion, Quaternion> quaternion_pair(const QuartitState& psi);
QuartitState from_quaternion_pair(const Quaternion& q1, const Quaternion& q2);

struct Entanglement {
    double c = 0;
    bool separable = true;
};
Entanglement entanglement(const QuartitState& psi, double tol = kDefaultTol);
// Same measure for an exact (not necessarily normalized) 4-vector.
double concurrence(std::span<const CycNum> v);

struct ExactPoint {
    CycNum p{1}, q{0};
};
// prod (q_k x1 - p_k x2), expanded exactly in two variables.
MultiPoly root_polynomial(std::span<const ExactPoint> points);

// |<psi_i|psi_j>|^2 over psi, sx psi, sy psi, sz psi.
std::array<std::array<double, 4>, 4> sic_overlaps(cplx alpha, cplx beta);

bool e8_member(std::span<const mpq_class> v);
// Basis used by e8_preserved: e1-e2, ..., e6-e7, e6+e7 and the glue vector
// (1/2, ..., 1/2). Each vector has 8 coordinates.
std::vector<std::vector<mpq_class>> e8_basis();
mpq_class e8_gram_det();
// M maps every basis vector into the lattice. Throws DimensionMismatch for a
// non-8x8 matrix and Error for a non-real or non-unimodular one.
bool e8_preserved(const CycMatrix& m);

struct EigenbasisReport {
    bool commuting = false;
    // Joint eigenvalue tuples and their (unnormalized) eigenvectors.
    std::vector<std::vector<CycNum>> eigenvalues;
    std::vector<std::vector<CycNum>> eigenvectors;
    bool nondegenerate = false;
    // For each column / row of the gate, the index of the matching
    // eigenvector up to a scalar, or -1.
    std::vector<int> column_match, row_match;
    bool columns_match = false;
    bool rows_match = false;
    std::string convention;  // "columns", "rows", "both" or "none"

    std::string to_string() const;
};

// Throws Error when the triple does not commute or its eigenvalues are not
// 24th roots of unity.
EigenbasisReport eigenbasis_relation(const CycMatrix& gate, std::span<const CycMatrix> triple);

// Exact null space basis of a matrix over Q(z24), as column vectors.
std::vector<std::vector<CycNum>> null_space(const CycMatrix& m);

}  // namespace quivar

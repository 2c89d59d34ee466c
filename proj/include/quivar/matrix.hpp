#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quivar/cyclo.hpp"

namespace quivar {

// Dense exact matrix over Q(z24), stored as one positive common denominator
// over a row-major array of Z[z24] numerators (8 coordinates per entry).
// The representation is normalized, so equal matrices have equal storage,
// equal hashes and equal encodings.
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(int rows, int cols);

    static CycMatrix identity(int n);
    static CycMatrix from_entries(int rows, int cols, std::span<const CycNum> entries);
    static CycMatrix diagonal(std::span<const CycNum> diag);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    CycNum at(int r, int c) const;
    std::vector<CycNum> entries() const;
    CycNum trace() const;

    CycMatrix operator*(const CycMatrix& other) const;
    CycMatrix operator+(const CycMatrix& other) const;
    CycMatrix operator-(const CycMatrix& other) const;
    CycMatrix operator-() const;
    CycMatrix scaled(const CycNum& s) const;
    CycMatrix transpose() const;
    CycMatrix conj() const;
    CycMatrix adjoint() const { return conj().transpose(); }

    bool is_zero() const;
    bool is_identity() const;
    // Every entry has zero coordinates on z^1..z^7.
    bool is_rational() const;
    bool is_monomial() const;

    friend bool operator==(const CycMatrix& a, const CycMatrix& b);
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

    std::size_t hash() const;

    // Dimension header (rows, cols as 4-byte big-endian) followed by the
    // canonical encoding of every entry in row-major order.
    void append_canonical_bytes(std::vector<std::uint8_t>& out) const;
    std::vector<std::uint8_t> canonical_bytes() const;

    // Compact canonical encoding used by the closure store: varint based,
    // roughly one byte per entry for small rational matrices.
    void encode_packed(std::vector<std::uint8_t>& out) const;
    static CycMatrix decode_packed(const std::uint8_t* data, std::size_t size);

    // Literal syntax "den-prefactor :: a,b; c,d".
    std::string to_string() const;

private:
    struct Big {
        std::vector<mpz_class> num;
        mpz_class den{1};
    };

    static CycMatrix from_i128(int rows, int cols, std::vector<__int128>& num, __int128 den);
    static CycMatrix from_big(int rows, int cols, Big b);
    Big to_big() const;
    CycNum entry_numerator(int idx) const;
    int max_bits() const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 1;
    std::shared_ptr<const Big> big_;
};

struct CycMatrixHash {
    std::size_t operator()(const CycMatrix& m) const { return m.hash(); }
};

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b);
// Fraction-free Gauss-Jordan elimination; throws SingularMatrix.
CycMatrix mat_inv(const CycMatrix& a);
CycMatrix mat_adjoint(const CycMatrix& a);
// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]
CycMatrix kron(const CycMatrix& a, const CycMatrix& b);
CycNum det(const CycMatrix& a);

struct MatrixProps {
    bool is_unitary = false;
    bool is_real = false;
    bool is_orthogonal = false;
    CycNum det;
};
MatrixProps mat_props(const CycMatrix& a);

// Rows separated by ';', entries by ',', optional global prefactor before
// "::", e.g. "1/2 :: 1,-1; 1,1". Entries use the cyclotomic grammar.
CycMatrix parse_matrix(std::string_view text);

}  // namespace quivar

#include "quivar/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "zkernel.hpp"

namespace quivar {

using detail::i128;

namespace {

constexpr int N = CycNum::kDegree;

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(std::uint8_t(v | 0x80));
        v >>= 7;
    }
    out.push_back(std::uint8_t(v));
}

std::uint64_t get_varint(const std::uint8_t*& p, const std::uint8_t* end) {
    std::uint64_t v = 0;
    int shift = 0;
    while (p < end) {
        std::uint8_t b = *p++;
        v |= std::uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
    throw Error("truncated packed matrix");
}

std::uint64_t zigzag(std::int64_t v) { return (std::uint64_t(v) << 1) ^ std::uint64_t(v >> 63); }
std::int64_t unzigzag(std::uint64_t v) { return std::int64_t(v >> 1) ^ -std::int64_t(v & 1); }

void put_mpz(std::vector<std::uint8_t>& out, const mpz_class& v) {
    out.push_back(sgn(v) < 0 ? 1 : 0);
    std::size_t count = 0;
    std::vector<std::uint8_t> buf((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8 + 1);
    mpz_export(buf.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    put_varint(out, count);
    out.insert(out.end(), buf.begin(), buf.begin() + count);
}

mpz_class get_mpz(const std::uint8_t*& p, const std::uint8_t* end) {
    if (p >= end) throw Error("truncated packed matrix");
    bool neg = *p++ != 0;
    std::uint64_t count = get_varint(p, end);
    if (std::uint64_t(end - p) < count) throw Error("truncated packed matrix");
    mpz_class v;
    mpz_import(v.get_mpz_t(), count, 1, 1, 1, 0, p);
    p += count;
    return neg ? mpz_class(-v) : v;
}

}  // namespace

CycMatrix::CycMatrix(int rows, int cols) : rows_(rows), cols_(cols), num_(std::size_t(rows) * cols * N, 0) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

CycMatrix CycMatrix::identity(int n) {
    CycMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.num_[(std::size_t(i) * n + i) * N] = 1;
    return m;
}

CycMatrix CycMatrix::from_big(int rows, int cols, Big b) {
    detail::normalize_mpz(b.num.data(), b.num.size(), b.den);
    bool fits = detail::mpz_fits64(b.den);
    for (const auto& v : b.num) fits = fits && detail::mpz_fits64(v);
    CycMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    if (fits) {
        m.num_.resize(b.num.size());
        for (std::size_t k = 0; k < b.num.size(); ++k) m.num_[k] = b.num[k].get_si();
        m.den_ = b.den.get_si();
        return m;
    }
    m.big_ = std::make_shared<const Big>(std::move(b));
    return m;
}

CycMatrix CycMatrix::from_i128(int rows, int cols, std::vector<i128>& num, i128 den) {
    detail::normalize128(num.data(), num.size(), den);
    bool fits = detail::fits64(den);
    for (auto v : num) fits = fits && detail::fits64(v);
    if (fits) {
        CycMatrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.num_.resize(num.size());
        for (std::size_t k = 0; k < num.size(); ++k) m.num_[k] = std::int64_t(num[k]);
        m.den_ = std::int64_t(den);
        return m;
    }
    Big b;
    b.num.reserve(num.size());
    for (auto v : num) b.num.push_back(detail::to_mpz(v));
    b.den = detail::to_mpz(den);
    return from_big(rows, cols, std::move(b));
}

CycMatrix::Big CycMatrix::to_big() const {
    if (big_) return *big_;
    Big b;
    b.num.reserve(num_.size());
    for (auto v : num_) b.num.push_back(detail::to_mpz(v));
    b.den = detail::to_mpz(den_);
    return b;
}

CycMatrix CycMatrix::from_entries(int rows, int cols, std::span<const CycNum> entries) {
    if (entries.size() != std::size_t(rows) * cols) throw DimensionMismatch("entry count does not match dimensions");
    Big b;
    b.den = 1;
    std::vector<CycNum::Big> parts;
    parts.reserve(entries.size());
    for (const auto& e : entries) {
        parts.push_back(e.to_big());
        mpz_lcm(b.den.get_mpz_t(), b.den.get_mpz_t(), parts.back().den.get_mpz_t());
    }
    b.num.resize(entries.size() * N);
    for (std::size_t idx = 0; idx < parts.size(); ++idx) {
        mpz_class scale = b.den / parts[idx].den;
        for (int k = 0; k < N; ++k) b.num[idx * N + k] = parts[idx].num[k] * scale;
    }
    return from_big(rows, cols, std::move(b));
}

CycMatrix CycMatrix::diagonal(std::span<const CycNum> diag) {
    int n = int(diag.size());
    std::vector<CycNum> e(std::size_t(n) * n);
    for (int i = 0; i < n; ++i) e[std::size_t(i) * n + i] = diag[i];
    return from_entries(n, n, e);
}

CycNum CycMatrix::entry_numerator(int idx) const {
    if (big_) {
        CycNum::Big b;
        for (int k = 0; k < N; ++k) b.num[k] = big_->num[std::size_t(idx) * N + k];
        b.den = 1;
        return CycNum::from_big(std::move(b));
    }
    std::array<std::int64_t, N> n{};
    std::copy_n(num_.begin() + std::ptrdiff_t(idx) * N, N, n.begin());
    return CycNum::from_small(n, 1);
}

CycNum CycMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionMismatch("matrix index out of range");
    int idx = r * cols_ + c;
    if (big_) {
        CycNum::Big b;
        for (int k = 0; k < N; ++k) b.num[k] = big_->num[std::size_t(idx) * N + k];
        b.den = big_->den;
        return CycNum::from_big(std::move(b));
    }
    std::array<std::int64_t, N> n{};
    std::copy_n(num_.begin() + std::ptrdiff_t(idx) * N, N, n.begin());
    return CycNum::from_small(n, den_);
}

std::vector<CycNum> CycMatrix::entries() const {
    std::vector<CycNum> out;
    out.reserve(std::size_t(rows_) * cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.push_back(at(r, c));
    return out;
}

CycNum CycMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
    CycNum t;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

int CycMatrix::max_bits() const {
    int b = detail::bits64(den_);
    for (auto v : num_) b = std::max(b, detail::bits64(v));
    return b;
}

bool CycMatrix::is_rational() const {
    std::size_t count = std::size_t(rows_) * cols_;
    if (big_) {
        for (std::size_t e = 0; e < count; ++e)
            for (int k = 1; k < N; ++k)
                if (big_->num[e * N + k] != 0) return false;
        return true;
    }
    for (std::size_t e = 0; e < count; ++e)
        for (int k = 1; k < N; ++k)
            if (num_[e * N + k] != 0) return false;
    return true;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatch("cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) + " by " +
                                std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    const int R = rows_, K = cols_, C = o.cols_;
    const bool small = !big_ && !o.big_ && max_bits() + o.max_bits() + detail::bits(detail::u128(K) * 64) + 4 <= 126;
    if (small) {
        std::vector<i128> out(std::size_t(R) * C * N, 0);
        if (is_rational() && o.is_rational()) {
            for (int i = 0; i < R; ++i)
                for (int k = 0; k < K; ++k) {
                    std::int64_t a = num_[(std::size_t(i) * K + k) * N];
                    if (a == 0) continue;
                    for (int j = 0; j < C; ++j) out[(std::size_t(i) * C + j) * N] += i128(a) * o.num_[(std::size_t(k) * C + j) * N];
                }
        } else {
            std::array<i128, 15> acc;
            for (int i = 0; i < R; ++i)
                for (int j = 0; j < C; ++j) {
                    acc.fill(0);
                    for (int k = 0; k < K; ++k) {
                        const std::int64_t* a = &num_[(std::size_t(i) * K + k) * N];
                        const std::int64_t* b = &o.num_[(std::size_t(k) * C + j) * N];
                        for (int p = 0; p < N; ++p) {
                            if (a[p] == 0) continue;
                            for (int q = 0; q < N; ++q)
                                if (b[q] != 0) acc[p + q] += i128(a[p]) * b[q];
                        }
                    }
                    detail::reduce_phi24(acc.data());
                    std::copy_n(acc.begin(), N, out.begin() + std::ptrdiff_t((std::size_t(i) * C + j) * N));
                }
        }
        return from_i128(R, C, out, i128(den_) * o.den_);
    }
    Big a = to_big(), b = o.to_big();
    Big r;
    r.num.assign(std::size_t(R) * C * N, 0);
    std::array<mpz_class, 15> acc;
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            for (auto& x : acc) x = 0;
            for (int k = 0; k < K; ++k)
                for (int p = 0; p < N; ++p) {
                    const auto& av = a.num[(std::size_t(i) * K + k) * N + p];
                    if (av == 0) continue;
                    for (int q = 0; q < N; ++q) {
                        const auto& bv = b.num[(std::size_t(k) * C + j) * N + q];
                        if (bv != 0) acc[p + q] += av * bv;
                    }
                }
            detail::reduce_phi24(acc.data());
            for (int p = 0; p < N; ++p) r.num[(std::size_t(i) * C + j) * N + p] = acc[p];
        }
    r.den = a.den * b.den;
    return from_big(R, C, std::move(r));
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum of different shapes");
    Big a = to_big(), b = o.to_big();
    Big r;
    r.den = a.den * b.den;
    r.num.resize(a.num.size());
    for (std::size_t k = 0; k < a.num.size(); ++k) r.num[k] = a.num[k] * b.den + b.num[k] * a.den;
    return from_big(rows_, cols_, std::move(r));
}

CycMatrix CycMatrix::operator-() const {
    CycMatrix m = *this;
    if (big_) {
        Big b = *big_;
        for (auto& v : b.num) v = -v;
        m.big_ = std::make_shared<const Big>(std::move(b));
    } else {
        for (auto& v : m.num_) v = -v;
    }
    return m;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const { return *this + (-o); }

CycMatrix CycMatrix::scaled(const CycNum& s) const {
    std::vector<CycNum> e = entries();
    for (auto& x : e) x *= s;
    return from_entries(rows_, cols_, e);
}

CycMatrix CycMatrix::transpose() const {
    CycMatrix m;
    m.rows_ = cols_;
    m.cols_ = rows_;
    m.den_ = den_;
    if (big_) {
        Big b;
        b.den = big_->den;
        b.num.resize(big_->num.size());
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                for (int k = 0; k < N; ++k) b.num[(std::size_t(c) * rows_ + r) * N + k] = big_->num[(std::size_t(r) * cols_ + c) * N + k];
        m.big_ = std::make_shared<const Big>(std::move(b));
        return m;
    }
    m.num_.resize(num_.size());
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            for (int k = 0; k < N; ++k) m.num_[(std::size_t(c) * rows_ + r) * N + k] = num_[(std::size_t(r) * cols_ + c) * N + k];
    return m;
}

CycMatrix CycMatrix::conj() const {
    if (is_rational()) return *this;
    std::vector<CycNum> e = entries();
    for (auto& x : e) x = x.conj();
    return from_entries(rows_, cols_, e);
}

bool CycMatrix::is_zero() const {
    if (big_) return false;
    return std::all_of(num_.begin(), num_.end(), [](auto v) { return v == 0; });
}

bool CycMatrix::is_identity() const {
    if (!is_square() || big_ || den_ != 1) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            for (int k = 0; k < N; ++k) {
                std::int64_t want = (r == c && k == 0) ? 1 : 0;
                if (num_[(std::size_t(r) * cols_ + c) * N + k] != want) return false;
            }
    return true;
}

bool CycMatrix::is_monomial() const {
    if (!is_square()) return false;
    std::vector<int> col_count(cols_, 0);
    for (int r = 0; r < rows_; ++r) {
        int nz = 0;
        for (int c = 0; c < cols_; ++c) {
            if (!at(r, c).is_zero()) {
                ++nz;
                ++col_count[c];
            }
        }
        if (nz != 1) return false;
    }
    return std::all_of(col_count.begin(), col_count.end(), [](int v) { return v == 1; });
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (!a.big_ && !b.big_) return a.den_ == b.den_ && a.num_ == b.num_;
    if (a.big_ && b.big_) return a.big_->den == b.big_->den && a.big_->num == b.big_->num;
    return false;
}

std::size_t CycMatrix::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ (std::uint64_t(rows_) << 32 | std::uint32_t(cols_));
    auto mix = [&h](std::uint64_t v) {
        v *= 0x9e3779b97f4a7c15ULL;
        v ^= v >> 29;
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    if (!big_) {
        mix(std::uint64_t(den_));
        for (auto v : num_) mix(std::uint64_t(v));
        return std::size_t(h ^ (h >> 31));
    }
    mix(std::hash<std::string>{}(big_->den.get_str(16)));
    for (const auto& v : big_->num) mix(std::hash<std::string>{}(v.get_str(16)));
    return std::size_t(h ^ (h >> 31));
}

void CycMatrix::append_canonical_bytes(std::vector<std::uint8_t>& out) const {
    for (std::uint32_t v : {std::uint32_t(rows_), std::uint32_t(cols_)})
        for (int s = 24; s >= 0; s -= 8) out.push_back(std::uint8_t(v >> s));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) at(r, c).append_canonical_bytes(out);
}

std::vector<std::uint8_t> CycMatrix::canonical_bytes() const {
    std::vector<std::uint8_t> out;
    append_canonical_bytes(out);
    return out;
}

void CycMatrix::encode_packed(std::vector<std::uint8_t>& out) const {
    const std::size_t count = std::size_t(rows_) * cols_;
    if (big_) {
        out.push_back(2);
        put_varint(out, std::uint64_t(rows_));
        put_varint(out, std::uint64_t(cols_));
        put_mpz(out, big_->den);
        for (const auto& v : big_->num) put_mpz(out, v);
        return;
    }
    const bool rational = is_rational();
    out.push_back(rational ? 1 : 0);
    put_varint(out, std::uint64_t(rows_));
    put_varint(out, std::uint64_t(cols_));
    put_varint(out, std::uint64_t(den_));
    if (rational) {
        for (std::size_t e = 0; e < count; ++e) put_varint(out, zigzag(num_[e * N]));
        return;
    }
    for (std::size_t e = 0; e < count; ++e) {
        std::uint8_t mask = 0;
        for (int k = 0; k < N; ++k)
            if (num_[e * N + k] != 0) mask |= std::uint8_t(1u << k);
        out.push_back(mask);
        for (int k = 0; k < N; ++k)
            if (mask & (1u << k)) put_varint(out, zigzag(num_[e * N + k]));
    }
}

CycMatrix CycMatrix::decode_packed(const std::uint8_t* data, std::size_t size) {
    const std::uint8_t* p = data;
    const std::uint8_t* end = data + size;
    if (p >= end) throw Error("empty packed matrix");
    std::uint8_t mode = *p++;
    int rows = int(get_varint(p, end));
    int cols = int(get_varint(p, end));
    const std::size_t count = std::size_t(rows) * cols;
    CycMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    if (mode == 2) {
        Big b;
        b.den = get_mpz(p, end);
        b.num.resize(count * N);
        for (auto& v : b.num) v = get_mpz(p, end);
        m.big_ = std::make_shared<const Big>(std::move(b));
        return m;
    }
    m.den_ = std::int64_t(get_varint(p, end));
    m.num_.assign(count * N, 0);
    if (mode == 1) {
        for (std::size_t e = 0; e < count; ++e) m.num_[e * N] = unzigzag(get_varint(p, end));
        return m;
    }
    for (std::size_t e = 0; e < count; ++e) {
        if (p >= end) throw Error("truncated packed matrix");
        std::uint8_t mask = *p++;
        for (int k = 0; k < N; ++k)
            if (mask & (1u << k)) m.num_[e * N + k] = unzigzag(get_varint(p, end));
    }
    return m;
}

std::string CycMatrix::to_string() const {
    std::ostringstream os;
    mpz_class den = big_ ? big_->den : detail::to_mpz(den_);
    if (den != 1) os << "1/" << den.get_str() << " :: ";
    for (int r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (int c = 0; c < cols_; ++c) {
            if (c) os << ", ";
            os << entry_numerator(r * cols_ + c).to_string();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b) { return a * b; }

CycMatrix mat_adjoint(const CycMatrix& a) { return a.adjoint(); }

namespace {

// Fraction-free Gauss-Jordan on [A | extra]. Every division by the previous
// pivot is exact; on return the left block is s*I with s = +-det(A).
struct Elimination {
    std::vector<std::vector<CycNum>> m;
    CycNum pivot{1};
    bool singular = false;
    int swaps = 0;
};

Elimination gauss_jordan(const CycMatrix& a, const CycMatrix* extra) {
    const int n = a.rows();
    const int width = n + (extra ? extra->cols() : 0);
    Elimination el;
    el.m.assign(n, std::vector<CycNum>(width));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) el.m[r][c] = a.at(r, c);
        if (extra)
            for (int c = 0; c < extra->cols(); ++c) el.m[r][n + c] = extra->at(r, c);
    }
    CycNum prev(1);
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && el.m[p][k].is_zero()) ++p;
        if (p == n) {
            el.singular = true;
            return el;
        }
        if (p != k) {
            std::swap(el.m[p], el.m[k]);
            ++el.swaps;
        }
        const CycNum inv_prev = prev.inverse();
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const CycNum f = el.m[i][k];
            for (int j = 0; j < width; ++j) {
                if (j == k) continue;
                el.m[i][j] = (el.m[k][k] * el.m[i][j] - f * el.m[k][j]) * inv_prev;
            }
            el.m[i][k] = CycNum();
        }
        // Rows above k were scaled by pivot/prev along with the others.
        prev = el.m[k][k];
    }
    // Rows other than the last were last touched at different steps; bring
    // every row to the common scale of the final pivot.
    for (int i = 0; i < n; ++i) {
        if (el.m[i][i] == prev) continue;
        CycNum f = prev / el.m[i][i];
        for (int j = 0; j < width; ++j) el.m[i][j] *= f;
    }
    el.pivot = prev;
    return el;
}

}  // namespace

CycMatrix mat_inv(const CycMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
    const int n = a.rows();
    if (n == 0) return a;
    CycMatrix id = CycMatrix::identity(n);
    Elimination el = gauss_jordan(a, &id);
    if (el.singular) throw SingularMatrix();
    const CycNum inv_pivot = el.pivot.inverse();
    std::vector<CycNum> e;
    e.reserve(std::size_t(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) e.push_back(el.m[r][n + c] * inv_pivot);
    return CycMatrix::from_entries(n, n, e);
}

CycNum det(const CycMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const int n = a.rows();
    if (n == 0) return CycNum(1);
    // Bareiss: the last pivot of fraction-free elimination is the determinant.
    std::vector<std::vector<CycNum>> m(n, std::vector<CycNum>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r][c] = a.at(r, c);
    CycNum prev(1);
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        int p = k;
        while (p < n && m[p][k].is_zero()) ++p;
        if (p == n) return CycNum();
        if (p != k) {
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        const CycNum inv_prev = prev.inverse();
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) * inv_prev;
            m[i][k] = CycNum();
        }
        prev = m[k][k];
    }
    CycNum d = m[n - 1][n - 1];
    return negate ? -d : d;
}

CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
    const int rA = a.rows(), cA = a.cols(), rB = b.rows(), cB = b.cols();
    std::vector<CycNum> e(std::size_t(rA) * rB * cA * cB);
    const int C = cA * cB;
    for (int i = 0; i < rA; ++i)
        for (int j = 0; j < cA; ++j) {
            CycNum x = a.at(i, j);
            for (int k = 0; k < rB; ++k)
                for (int l = 0; l < cB; ++l) e[std::size_t(i * rB + k) * C + (j * cB + l)] = x * b.at(k, l);
        }
    return CycMatrix::from_entries(rA * rB, C, e);
}

MatrixProps mat_props(const CycMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("matrix properties need a square matrix");
    MatrixProps p;
    p.is_unitary = (a * a.adjoint()).is_identity();
    p.is_real = a.conj() == a;
    p.is_orthogonal = p.is_real && p.is_unitary;
    p.det = det(a);
    return p;
}

CycMatrix parse_matrix(std::string_view text) {
    std::size_t base = 0;
    CycNum prefactor(1);
    auto rethrow = [](const ParseError& e, std::size_t offset) -> ParseError {
        std::string msg = e.what();
        auto at = msg.rfind(" at position ");
        if (at != std::string::npos) msg.resize(at);
        return ParseError(msg, e.position() + offset);
    };
    if (auto sep = text.find("::"); sep != std::string_view::npos) {
        try {
            prefactor = parse_cyclotomic(text.substr(0, sep));
        } catch (const ParseError& e) {
            throw rethrow(e, 0);
        }
        base = sep + 2;
    }
    std::vector<std::vector<CycNum>> rows;
    std::size_t row_start = base;
    for (;;) {
        std::size_t row_end = text.find(';', row_start);
        std::string_view row = text.substr(row_start, row_end == std::string_view::npos ? std::string_view::npos : row_end - row_start);
        std::vector<CycNum> cells;
        std::size_t cell_start = 0;
        for (;;) {
            std::size_t comma = row.find(',', cell_start);
            std::string_view cell = row.substr(cell_start, comma == std::string_view::npos ? std::string_view::npos : comma - cell_start);
            try {
                cells.push_back(parse_cyclotomic(cell) * prefactor);
            } catch (const ParseError& e) {
                throw rethrow(e, row_start + cell_start);
            }
            if (comma == std::string_view::npos) break;
            cell_start = comma + 1;
        }
        if (!rows.empty() && cells.size() != rows.front().size())
            throw ParseError("matrix rows have different lengths", row_start);
        rows.push_back(std::move(cells));
        if (row_end == std::string_view::npos) break;
        row_start = row_end + 1;
    }
    std::vector<CycNum> flat;
    for (auto& r : rows)
        for (auto& c : r) flat.push_back(std::move(c));
    return CycMatrix::from_entries(int(rows.size()), int(rows.front().size()), flat);
}

}  // namespace quivar

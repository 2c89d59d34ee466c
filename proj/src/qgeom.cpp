#include "quivar/qgeom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quivar/errors.hpp"

namespace quivar {

namespace {

void require_unit(double norm, double tol, const char* what) {
    if (std::abs(norm - 1.0) > tol)
        throw NotNormalized(std::string(what) + " has norm " + std::to_string(norm) + ", expected 1");
}

// (q x1 - p x2)
MultiPoly linear_factor(const ExactPoint& pt) {
    return MultiPoly::variable(2, 0).scaled(pt.q) - MultiPoly::variable(2, 1).scaled(pt.p);
}

std::vector<CycNum> mat_vec(const CycMatrix& m, std::span<const CycNum> v) {
    std::vector<CycNum> out(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            CycNum a = m.at(r, c);
            if (!a.is_zero() && !v[c].is_zero()) out[r] += a * v[c];
        }
    return out;
}

bool parallel(std::span<const CycNum> a, std::span<const CycNum> b) {
    bool nonzero_a = false, nonzero_b = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        nonzero_a |= !a[i].is_zero();
        nonzero_b |= !b[i].is_zero();
    }
    if (!nonzero_a || !nonzero_b) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

// Greedy matching of vectors to eigenvectors; returns per-vector index.
std::vector<int> match_vectors(const std::vector<std::vector<CycNum>>& vs,
                               const std::vector<std::vector<CycNum>>& basis) {
    std::vector<int> out(vs.size(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (parallel(vs[i], basis[k])) {
                out[i] = int(k);
                break;
            }
    return out;
}

bool is_permutation_match(const std::vector<int>& m, std::size_t n) {
    if (m.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (int k : m) {
        if (k < 0 || seen[k]) return false;
        seen[k] = true;
    }
    return true;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(xi * xi + eta * eta + zeta * zeta); }

double S4Point::norm() const { return std::sqrt(xi * xi + eta * eta + u * u + v * v + zeta * zeta); }

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

bool RiemannPoint::is_infinity(double tol) const { return std::abs(q) <= tol * std::abs(p); }

bool RiemannPoint::same_point(const RiemannPoint& o, double tol) const {
    const double scale = std::hypot(std::abs(p), std::abs(q)) * std::hypot(std::abs(o.p), std::abs(o.q));
    return std::abs(p * o.q - q * o.p) <= tol * scale;
}

double state_norm(const QubitState& s) { return std::sqrt(std::norm(s.alpha) + std::norm(s.beta)); }

double state_norm(const QuartitState& s) {
    return std::sqrt(std::norm(s.alpha) + std::norm(s.beta) + std::norm(s.gamma) + std::norm(s.delta));
}

QubitState normalized(const QubitState& s) {
    const double n = state_norm(s);
    if (n == 0) throw NotNormalized("zero state");
    return {s.alpha / n, s.beta / n};
}

QuartitState normalized(const QuartitState& s) {
    const double n = state_norm(s);
    if (n == 0) throw NotNormalized("zero state");
    return {s.alpha / n, s.beta / n, s.gamma / n, s.delta / n};
}

BlochVector bloch_map(const QubitState& psi, double tol) {
    require_unit(state_norm(psi), tol, "qubit state");
    const cplx ab = std::conj(psi.alpha) * psi.beta;
    return {2 * ab.real(), 2 * ab.imag(), std::norm(psi.alpha) - std::norm(psi.beta)};
}

RiemannPoint stereographic(const BlochVector& b, double tol) {
    require_unit(b.norm(), std::max(tol, kNormTol), "Bloch vector");
    // (xi + i eta)/(1 - zeta) = (1 + zeta)/(xi - i eta); use the better
    // conditioned form on each hemisphere.
    if (b.zeta > 0) return {cplx(1 + b.zeta), cplx(b.xi, -b.eta)};
    return {cplx(b.xi, b.eta), cplx(1 - b.zeta)};
}

BlochVector inverse_stereographic(const RiemannPoint& r) {
    const double np = std::norm(r.p), nq = std::norm(r.q), n = np + nq;
    if (n == 0) throw Error("0/0 is not a point of the projective line");
    const cplx s = 2.0 * r.p * std::conj(r.q) / n;
    return {s.real(), s.imag(), (np - nq) / n};
}

S4Point second_hopf(const QuartitState& psi, double tol) {
    require_unit(state_norm(psi), tol, "quartit state");
    const cplx a = std::conj(psi.alpha) * psi.gamma + std::conj(psi.beta) * psi.delta;
    const cplx b = psi.alpha * psi.delta - psi.beta * psi.gamma;
    return {2 * a.real(), 2 * a.imag(), 2 * b.real(), 2 * b.imag(),
            std::norm(psi.alpha) + std::norm(psi.beta) - std::norm(psi.gamma) - std::norm(psi.delta)};
}

std::pair<Quaternion, Quaternion> quaternion_pair(const QuartitState& psi) {
    return {Quaternion::from_pair(psi.alpha, psi.beta), Quaternion::from_pair(psi.gamma, psi.delta)};
}

QuartitState from_quaternion_pair(const Quaternion& q1, const Quaternion& q2) {
    return {q1.first(), q1.second(), q2.first(), q2.second()};
}

Entanglement entanglement(const QuartitState& psi, double tol) {
    require_unit(state_norm(psi), kNormTol, "quartit state");
    const double c = 2 * std::abs(psi.alpha * psi.delta - psi.beta * psi.gamma);
    return {c, c < tol};
}

double concurrence(std::span<const CycNum> v) {
    if (v.size() != 4) throw DimensionMismatch("concurrence needs a 4-vector");
    const CycNum n2 = v[0] * v[0].conj() + v[1] * v[1].conj() + v[2] * v[2].conj() + v[3] * v[3].conj();
    if (n2.is_zero()) throw NotNormalized("zero vector");
    const CycNum d = v[0] * v[3] - v[1] * v[2];
    // |d|^2 / n2^2 is an exact rational-valued element; take the root last.
    const CycNum r = d * d.conj() / (n2 * n2);
    return 2 * std::sqrt(std::abs(r.embed()));
}

MultiPoly root_polynomial(std::span<const ExactPoint> points) {
    MultiPoly out = MultiPoly::constant(2, CycNum(1));
    for (const auto& pt : points) {
        if (pt.p.is_zero() && pt.q.is_zero()) throw Error("0/0 is not a point of the projective line");
        out = out * linear_factor(pt);
    }
    return out;
}

std::array<std::array<double, 4>, 4> sic_overlaps(cplx alpha, cplx beta) {
    const cplx i(0, 1);
    // psi, sx psi, sy psi, sz psi
    const std::array<std::array<cplx, 2>, 4> v{{{alpha, beta}, {beta, alpha}, {-i * beta, i * alpha}, {alpha, -beta}}};
    std::array<std::array<double, 4>, 4> out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            out[a][b] = std::norm(std::conj(v[a][0]) * v[b][0] + std::conj(v[a][1]) * v[b][1]);
    return out;
}

bool e8_member(std::span<const mpq_class> v) {
    if (v.size() != 8) throw DimensionMismatch("E8 vectors have 8 coordinates");
    bool all_int = true, all_half = true;
    mpq_class sum = 0;
    for (const auto& x : v) {
        sum += x;
        const mpq_class twice = 2 * x;
        all_int &= x.get_den() == 1;
        all_half &= twice.get_den() == 1 && twice.get_num() % 2 != 0;
    }
    if (!all_int && !all_half) return false;
    return sum.get_den() == 1 && sum.get_num() % 2 == 0;
}

std::vector<std::vector<mpq_class>> e8_basis() {
    std::vector<std::vector<mpq_class>> b;
    for (int k = 0; k < 6; ++k) {
        std::vector<mpq_class> v(8, 0);
        v[k] = 1;
        v[k + 1] = -1;
        b.push_back(v);
    }
    std::vector<mpq_class> v(8, 0);
    v[5] = v[6] = 1;
    b.push_back(v);
    b.emplace_back(8, mpq_class(1, 2));
    return b;
}

mpq_class e8_gram_det() {
    const auto b = e8_basis();
    std::vector<CycNum> gram;
    for (const auto& x : b)
        for (const auto& y : b) {
            mpq_class s = 0;
            for (int k = 0; k < 8; ++k) s += x[k] * y[k];
            gram.push_back(CycNum(s));
        }
    return det(CycMatrix::from_entries(8, 8, gram)).coord(0);
}

bool e8_preserved(const CycMatrix& m) {
    if (m.rows() != 8 || m.cols() != 8) throw DimensionMismatch("e8_preserved needs an 8x8 matrix");
    if (!m.is_rational()) throw Error("matrix is not rational");
    const CycNum d = det(m);
    if (d != CycNum(1) && d != CycNum(-1)) throw Error("matrix is not unimodular, det = " + d.to_string());
    if (e8_gram_det() != 1) throw Error("E8 basis is not unimodular");
    for (const auto& b : e8_basis()) {
        std::vector<CycNum> bv;
        for (const auto& x : b) bv.push_back(CycNum(x));
        const auto img = mat_vec(m, bv);
        std::vector<mpq_class> q;
        for (const auto& x : img) q.push_back(x.coord(0));
        if (!e8_member(q)) return false;
    }
    return true;
}

std::vector<std::vector<CycNum>> null_space(const CycMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<CycNum>> a(rows, std::vector<CycNum>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a[r][c] = m.at(r, c);
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const CycNum inv = a[r][c].inverse();
        for (auto& x : a[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const CycNum f = a[i][c];
            for (int j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<CycNum>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<CycNum> v(cols);
        v[f] = CycNum(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

std::string EigenbasisReport::to_string() const {
    std::ostringstream os;
    os << "commuting=" << (commuting ? "true" : "false") << " eigenvectors=" << eigenvectors.size()
       << " nondegenerate=" << (nondegenerate ? "true" : "false") << " columns=[";
    for (std::size_t k = 0; k < column_match.size(); ++k) os << (k ? "," : "") << column_match[k];
    os << "] rows=[";
    for (std::size_t k = 0; k < row_match.size(); ++k) os << (k ? "," : "") << row_match[k];
    os << "] convention=" << convention;
    return os.str();
}

EigenbasisReport eigenbasis_relation(const CycMatrix& gate, std::span<const CycMatrix> triple) {
    if (triple.empty()) throw Error("empty operator list");
    const int n = gate.rows();
    if (!gate.is_square()) throw DimensionMismatch("gate must be square");
    for (const auto& a : triple)
        if (a.rows() != n || a.cols() != n) throw DimensionMismatch("operators and gate differ in dimension");
    for (std::size_t i = 0; i < triple.size(); ++i)
        for (std::size_t j = i + 1; j < triple.size(); ++j)
            if (triple[i] * triple[j] != triple[j] * triple[i]) throw Error("operators do not commute");
    if (!mat_props(gate).is_unitary) throw Error("gate is not unitary");

    EigenbasisReport rep;
    rep.commuting = true;
    // Each operator is split into its eigenspaces over the 24th roots of
    // unity; joint eigenspaces are intersections.
    struct Space {
        std::vector<CycNum> values;
        CycMatrix stack;  // rows whose kernel is the space
    };
    std::vector<Space> spaces{{{}, CycMatrix()}};
    for (const auto& a : triple) {
        std::vector<Space> next;
        for (const auto& s : spaces)
            for (int k = 0; k < 24; ++k) {
                const CycNum lam = CycNum::zeta_power(k);
                const CycMatrix shifted = a - CycMatrix::identity(n).scaled(lam);
                std::vector<CycNum> rows;
                if (s.stack.rows() > 0) rows = s.stack.entries();
                const auto more = shifted.entries();
                rows.insert(rows.end(), more.begin(), more.end());
                CycMatrix st = CycMatrix::from_entries(int(rows.size()) / n, n, rows);
                if (null_space(st).empty()) continue;
                Space t{s.values, st};
                t.values.push_back(lam);
                next.push_back(std::move(t));
            }
        spaces = std::move(next);
    }
    std::size_t total = 0;
    rep.nondegenerate = true;
    for (const auto& s : spaces) {
        auto ns = null_space(s.stack);
        total += ns.size();
        rep.nondegenerate &= ns.size() == 1;
        for (auto& v : ns) {
            rep.eigenvalues.push_back(s.values);
            rep.eigenvectors.push_back(std::move(v));
        }
    }
    if (total != std::size_t(n)) throw Error("joint eigenvalues are not all 24th roots of unity");

    std::vector<std::vector<CycNum>> cols(n, std::vector<CycNum>(n)), rows(n, std::vector<CycNum>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cols[c][r] = gate.at(r, c);
            rows[r][c] = gate.at(r, c);
        }
    rep.column_match = match_vectors(cols, rep.eigenvectors);
    rep.row_match = match_vectors(rows, rep.eigenvectors);
    rep.columns_match = rep.nondegenerate && is_permutation_match(rep.column_match, n);
    rep.rows_match = rep.nondegenerate && is_permutation_match(rep.row_match, n);
    rep.convention = rep.columns_match ? (rep.rows_match ? "both" : "columns") : (rep.rows_match ? "rows" : "none");
    return rep;
}

}  // namespace quivar

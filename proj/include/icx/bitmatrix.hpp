// bitmatrix.hpp -- dense bit-packed linear algebra over GF(2).
//
// Rows are packed 64 bits per word. Elimination uses word-wide XOR and is
// fully deterministic: pivots are chosen at the lowest-index column, ties at
// the lowest-index row, and kernel bases come out of the reduced echelon form
// in ascending free-column order. Everything downstream (chain-map solving,
// certificates, homology representatives) relies on that determinism.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace icx {

struct BitVec {
    int n = 0;
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(int bits) : n(bits), w((bits + 63) / 64, 0) {}

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(int i) { w[i >> 6] ^= uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    bool dot(const BitVec& o) const {
        uint64_t acc = 0;
        for (size_t k = 0; k < w.size(); ++k) acc ^= w[k] & o.w[k];
        return __builtin_parityll(acc);
    }
    bool any() const {
        for (uint64_t x : w) if (x) return true;
        return false;
    }
    int popcount() const {
        int c = 0;
        for (uint64_t x : w) c += __builtin_popcountll(x);
        return c;
    }
    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < n; ++i) if (get(i)) s.push_back(i);
        return s;
    }
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
};

struct BitMatrix {
    int rows_ = 0, cols_ = 0, wpr_ = 0;   // wpr_: words per row
    std::vector<uint64_t> bits;

    BitMatrix() = default;
    BitMatrix(int r, int c) : rows_(r), cols_(c), wpr_((c + 63) / 64), bits(size_t(r) * wpr_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (bits[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1u; }
    void set(int r, int c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        size_t idx = size_t(r) * wpr_ + (c >> 6);
        if (v) bits[idx] |= m; else bits[idx] &= ~m;
    }
    void flip(int r, int c) { bits[size_t(r) * wpr_ + (c >> 6)] ^= uint64_t(1) << (c & 63); }

    void row_xor(int dst, int src) {
        uint64_t* d = &bits[size_t(dst) * wpr_];
        const uint64_t* s = &bits[size_t(src) * wpr_];
        for (int k = 0; k < wpr_; ++k) d[k] ^= s[k];
    }
    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int k = 0; k < wpr_; ++k)
            std::swap(bits[size_t(a) * wpr_ + k], bits[size_t(b) * wpr_ + k]);
    }
    BitVec row(int r) const {
        BitVec v(cols_);
        for (int k = 0; k < wpr_; ++k) v.w[k] = bits[size_t(r) * wpr_ + k];
        return v;
    }
    void set_row(int r, const BitVec& v) {
        for (int k = 0; k < wpr_; ++k) bits[size_t(r) * wpr_ + k] = v.w[k];
    }
    bool row_any(int r) const {
        for (int k = 0; k < wpr_; ++k) if (bits[size_t(r) * wpr_ + k]) return true;
        return false;
    }
    bool is_zero() const {
        for (uint64_t x : bits) if (x) return false;
        return true;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits == o.bits;
    }

    BitMatrix operator^(const BitMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("BitMatrix xor: shape mismatch");
        BitMatrix out = *this;
        for (size_t k = 0; k < bits.size(); ++k) out.bits[k] ^= o.bits[k];
        return out;
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    // (this * o)[i][j] = sum_k this[i][k] o[k][j]
    BitMatrix multiply(const BitMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("BitMatrix multiply: inner dimension mismatch");
        BitMatrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            uint64_t* dst = &out.bits[size_t(i) * out.wpr_];
            for (int k = 0; k < cols_; ++k)
                if (get(i, k)) {
                    const uint64_t* src = &o.bits[size_t(k) * o.wpr_];
                    for (int wq = 0; wq < o.wpr_; ++wq) dst[wq] ^= src[wq];
                }
        }
        return out;
    }

    BitMatrix transpose() const {
        BitMatrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < wpr_; ++k) {
                uint64_t word = bits[size_t(i) * wpr_ + k];
                while (word) {
                    int b = __builtin_ctzll(word);
                    word &= word - 1;
                    out.set(k * 64 + b, i, true);
                }
            }
        return out;
    }

    // row vector v (length rows()) times matrix: result length cols()
    BitVec apply_left(const BitVec& v) const {
        if (v.n != rows_) throw std::invalid_argument("apply_left: length mismatch");
        BitVec out(cols_);
        for (int i = 0; i < rows_; ++i)
            if (v.get(i))
                for (int k = 0; k < wpr_; ++k) out.w[k] ^= bits[size_t(i) * wpr_ + k];
        return out;
    }

    // matrix times column vector v (length cols()): result length rows()
    BitVec apply_right(const BitVec& v) const {
        if (v.n != cols_) throw std::invalid_argument("apply_right: length mismatch");
        BitVec out(rows_);
        for (int i = 0; i < rows_; ++i) {
            uint64_t acc = 0;
            for (int k = 0; k < wpr_; ++k) acc ^= bits[size_t(i) * wpr_ + k] & v.w[k];
            if (__builtin_parityll(acc)) out.set(i, true);
        }
        return out;
    }

    std::vector<std::pair<int, int>> entries() const {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (get(i, j)) e.emplace_back(i, j);
        return e;
    }
};

// Kronecker product: (A kron B)[x*B.rows+y][x'*B.cols+y'] = A[x][x'] B[y][y'].
inline BitMatrix kronecker(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int x = 0; x < a.rows(); ++x)
        for (int xp = 0; xp < a.cols(); ++xp) {
            if (!a.get(x, xp)) continue;
            for (int y = 0; y < b.rows(); ++y)
                for (int yp = 0; yp < b.cols(); ++yp)
                    if (b.get(y, yp)) out.set(x * b.rows() + y, xp * b.cols() + yp, true);
        }
    return out;
}

// Reduced row echelon form. pivot_row_of_col[c] = row holding the pivot of
// column c, or -1. Column scan order (and therefore the pivot set) is fixed.
struct Rref {
    BitMatrix m;
    std::vector<int> pivot_row_of_col;
    std::vector<int> pivot_cols;
    int rank = 0;
};

inline Rref rref(BitMatrix m) {
    Rref r;
    r.pivot_row_of_col.assign(m.cols(), -1);
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.get(i, col)) { p = i; break; }
        if (p < 0) continue;
        m.swap_rows(row, p);
        for (int i = 0; i < m.rows(); ++i)
            if (i != row && m.get(i, col)) m.row_xor(i, row);
        r.pivot_row_of_col[col] = row;
        r.pivot_cols.push_back(col);
        ++row;
    }
    r.rank = row;
    r.m = std::move(m);
    return r;
}

inline int rank(const BitMatrix& m) { return rref(m).rank; }

// Inverse of a square matrix over GF(2), via elimination on [m | I].
// nullopt when singular.
inline std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    int n = m.rows();
    BitMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (m.get(i, j)) aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    Rref r = rref(std::move(aug));
    for (int c = 0; c < n; ++c)
        if (r.pivot_row_of_col[c] != c) return std::nullopt;
    BitMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r.m.get(i, n + j)) inv.set(i, j, true);
    return inv;
}

// Basis of {x : m x = 0}, one vector per free column, ascending column order,
// read off the reduced echelon form.
inline std::vector<BitVec> kernel_basis(const BitMatrix& m) {
    Rref r = rref(m);
    std::vector<BitVec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (r.pivot_row_of_col[c] >= 0) continue;
        BitVec v(m.cols());
        v.set(c, true);
        for (int pc : r.pivot_cols) {
            int pr = r.pivot_row_of_col[pc];
            if (r.m.get(pr, c)) v.set(pc, true);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Affine solution space of m x = b. absent() when inconsistent. particular
// sets all free variables to zero.
struct SolutionSpace {
    std::optional<BitVec> particular;
    std::vector<BitVec> kernel;

    bool absent() const { return !particular.has_value(); }
    int dimension() const { return absent() ? -1 : int(kernel.size()); }

    bool contains(const BitVec& v) const;
};

inline SolutionSpace solve_affine(const BitMatrix& m, const BitVec& b) {
    if (b.n != m.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(i, c)) aug.set(i, c, true);
        if (b.get(i)) aug.set(i, m.cols(), true);
    }
    Rref r = rref(std::move(aug));
    SolutionSpace s;
    if (r.pivot_row_of_col[m.cols()] >= 0) return s;  // pivot in rhs column: inconsistent
    BitVec part(m.cols());
    for (int pc : r.pivot_cols) {
        if (pc == m.cols()) continue;
        int pr = r.pivot_row_of_col[pc];
        if (r.m.get(pr, m.cols())) part.set(pc, true);
    }
    s.particular = std::move(part);
    s.kernel = kernel_basis(m);
    return s;
}

inline bool SolutionSpace::contains(const BitVec& v) const {
    if (absent() || v.n != particular->n) return false;
    BitVec d = v;
    d.xor_with(*particular);
    BitMatrix span(int(kernel.size()), v.n);
    for (size_t i = 0; i < kernel.size(); ++i) span.set_row(int(i), kernel[i]);
    int base = rank(span);
    BitMatrix ext(int(kernel.size()) + 1, v.n);
    for (size_t i = 0; i < kernel.size(); ++i) ext.set_row(int(i), kernel[i]);
    ext.set_row(int(kernel.size()), d);
    return rank(ext) == base;
}

// Deterministic pick of x in the affine space with <lambda, x> = 1:
// the particular solution, adjusted by the first kernel vector hitting
// lambda if needed. nullopt when the functional vanishes on the space.
inline std::optional<BitVec> find_with_functional(const SolutionSpace& s, const BitVec& lambda) {
    if (s.absent()) return std::nullopt;
    BitVec x = *s.particular;
    if (x.dot(lambda)) return x;
    for (const BitVec& k : s.kernel)
        if (k.dot(lambda)) {
            x.xor_with(k);
            return x;
        }
    return std::nullopt;
}

}  // namespace icx

#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace rumincalc {

// Dense matrix over the rationals. Everything here is exact; pivoting is
// deterministic (first nonzero entry scanning rows top-down, columns
// left-to-right), so kernel bases and solutions are reproducible.
class RMatrix {
  public:
    RMatrix() : rows_(0), cols_(0) {}
    RMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static RMatrix identity(int n) {
        RMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const RMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    RMatrix transpose() const {
        RMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend RMatrix operator*(const RMatrix& a, const RMatrix& b) {
        RMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b.at(k, j);
                    if (bkj != 0) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend RMatrix operator-(const RMatrix& a, const RMatrix& b) {
        RMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
        return r;
    }
    friend RMatrix operator+(const RMatrix& a, const RMatrix& b) {
        RMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
        return r;
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> y(rows_);
        for (int i = 0; i < rows_; ++i) {
            Rational acc(0);
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) acc += at(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int p = -1;
            for (int i = row; i < rows_; ++i)
                if (at(i, col) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            if (p != row)
                for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
            Rational inv = Rational(1) / at(row, col);
            for (int j = col; j < cols_; ++j) at(row, j) *= inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                Rational f = at(i, col);
                for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        RMatrix c(*this);
        return static_cast<int>(c.rref().size());
    }

    // Basis of the right kernel: one vector per free column, free variable set
    // to 1 and the others to 0.
    std::vector<std::vector<Rational>> kernel_basis() const {
        RMatrix r(*this);
        std::vector<int> pivots = r.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rational> v(cols_);
            v[free] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(static_cast<int>(i), free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solves A x = b if consistent; free variables are set to zero, which makes
    // the returned solution the minimal-support one for the fixed column order.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        RMatrix aug(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<int> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        std::vector<Rational> x(cols_);
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), cols_);
        return x;
    }

    // Inverse of a square full-rank matrix.
    RMatrix inverse() const {
        RMatrix aug(rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = 1;
        }
        std::vector<int> pivots = aug.rref();
        if (static_cast<int>(pivots.size()) != rows_) throw RuminError("matrix is singular");
        RMatrix inv(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    // Exact Moore-Penrose pseudoinverse via the full-rank factorization A = C F
    // (C = pivot columns of A, F = nonzero rows of rref(A)):
    //   A+ = F^T (F F^T)^{-1} (C^T C)^{-1} C^T.
    // Both Gram matrices are r x r and invertible, so the result is exact and
    // satisfies the four Penrose identities.
    RMatrix pinv() const {
        RMatrix r(*this);
        std::vector<int> pivots = r.rref();
        int rk = static_cast<int>(pivots.size());
        if (rk == 0) return RMatrix(cols_, rows_);
        RMatrix c(rows_, rk), f(rk, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < rk; ++j) c.at(i, j) = at(i, pivots[j]);
        for (int i = 0; i < rk; ++i)
            for (int j = 0; j < cols_; ++j) f.at(i, j) = r.at(i, j);
        RMatrix ft = f.transpose(), ct = c.transpose();
        return ft * (f * ft).inverse() * (ct * c).inverse() * ct;
    }

  private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// Gram-Schmidt without normalization: returns pairwise-orthogonal vectors with
// rational entries spanning the same space. Input vectors must be independent.
inline std::vector<std::vector<Rational>> orthogonalize(const std::vector<std::vector<Rational>>& vs) {
    auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
        return s;
    };
    std::vector<std::vector<Rational>> out;
    for (const auto& v : vs) {
        std::vector<Rational> w = v;
        for (const auto& u : out) {
            Rational f = dot(w, u) / dot(u, u);
            if (f == 0) continue;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * u[i];
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace rumincalc

#include "ellkit/qmat.hpp"

namespace ellkit {

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::diagonal(const std::vector<Rat>& d) {
    QMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

QMat QMat::operator+(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: shape mismatch");
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: shape mismatch");
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QMat: shape mismatch");
    QMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

QMat QMat::operator*(const Rat& s) const {
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

QMat QMat::transpose() const {
    QMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool QMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::vector<Rat> QMat::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("QMat::apply: size mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

Rat QMat::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
    QMat m = *this;
    std::size_t n = rows_;
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

std::size_t QMat::rank() const {
    QMat m = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
        std::size_t piv = r;
        while (piv < rows_ && m.at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, col);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<Rat> QMat::charpoly() const {
    // Faddeev-LeVerrier: exact over Q, fine at these dimensions.
    if (rows_ != cols_) throw std::invalid_argument("charpoly: not square");
    std::size_t n = rows_;
    std::vector<Rat> c(n + 1, Rat(0));
    c[0] = 1;
    QMat M = QMat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        M = (*this) * M;
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += M.at(i, i);
        c[k] = -tr / Rat(static_cast<long>(k));
        for (std::size_t i = 0; i < n; ++i) M.at(i, i) += c[k];
    }
    return c;
}

bool QMat::is_positive_definite() const {
    if (!is_symmetric()) return false;
    // Fraction-free style leading-minor signs via elimination on a copy.
    QMat m = *this;
    std::size_t n = rows_;
    for (std::size_t col = 0; col < n; ++col) {
        if (m.at(col, col) <= 0) return false;
        Rat inv = Rat(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return true;
}

bool QMat::is_positive_semidefinite() const {
    if (!is_symmetric()) return false;
    // det(xI - A) = x^n + c1 x^(n-1) + ... ; A is PSD iff (-1)^k c_k >= 0.
    std::vector<Rat> c = charpoly();
    for (std::size_t k = 1; k < c.size(); ++k) {
        Rat signed_coeff = (k % 2 == 1) ? -c[k] : c[k];
        if (signed_coeff < 0) return false;
    }
    return true;
}

QMat QMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
    std::size_t n = rows_;
    QMat m = *this, inv = QMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col) == 0) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Rat d = Rat(1) / m.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve_linear(const QMat& A, const std::vector<Rat>& b) {
    auto sol = solve_particular(A, b);
    if (!sol) throw std::domain_error("solve_linear: inconsistent system");
    if (A.rank() != A.cols()) throw std::domain_error("solve_linear: singular matrix");
    return *sol;
}

std::optional<std::vector<Rat>> solve_particular(const QMat& A, const std::vector<Rat>& b) {
    std::size_t n = A.rows(), m = A.cols();
    if (b.size() != n) throw std::invalid_argument("solve_particular: size mismatch");
    QMat aug(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, m) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && aug.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j <= m; ++j) std::swap(aug.at(piv, j), aug.at(r, j));
        Rat d = Rat(1) / aug.at(r, col);
        for (std::size_t j = col; j <= m; ++j) aug.at(r, j) *= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug.at(i, col) == 0) continue;
            Rat f = aug.at(i, col);
            for (std::size_t j = col; j <= m; ++j) aug.at(i, j) -= f * aug.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (aug.at(i, m) != 0) return std::nullopt;
    std::vector<Rat> x(m, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = aug.at(i, m);
    return x;
}

std::vector<std::vector<Rat>> nullspace(const QMat& A) {
    std::size_t n = A.rows(), m = A.cols();
    QMat red = A;
    std::vector<long> pivot_of_col(m, -1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && red.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m; ++j) std::swap(red.at(piv, j), red.at(r, j));
        Rat d = Rat(1) / red.at(r, col);
        for (std::size_t j = col; j < m; ++j) red.at(r, j) *= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || red.at(i, col) == 0) continue;
            Rat f = red.at(i, col);
            for (std::size_t j = col; j < m; ++j) red.at(i, j) -= f * red.at(r, j);
        }
        pivot_of_col[col] = static_cast<long>(r);
        ++r;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < m; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<Rat> v(m, Rat(0));
        v[free] = 1;
        for (std::size_t col = 0; col < m; ++col)
            if (pivot_of_col[col] >= 0)
                v[col] = -red.at(static_cast<std::size_t>(pivot_of_col[col]), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rat> constrained_min_norm(const QMat& G, const QMat& C, const std::vector<Rat>& d) {
    // Stationarity: 2 G x = C^T lambda, C x = d. Assemble the saddle system;
    // a particular solution suffices (the minimizer is unique in x whenever
    // G is PD on ker C, even if lambda or auxiliary variables are not).
    std::size_t n = G.rows();
    if (G.cols() != n || C.cols() != n) throw std::invalid_argument("constrained_min_norm: shapes");
    std::size_t k = C.rows();
    QMat K(n + k, n + k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) K.at(i, j) = 2 * G.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            K.at(n + i, j) = C.at(i, j);
            K.at(j, n + i) = -C.at(i, j);
        }
    std::vector<Rat> rhs(n + k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) rhs[n + i] = d[i];
    auto sol = solve_particular(K, rhs);
    if (!sol) throw std::domain_error("constrained_min_norm: infeasible constraints");
    return std::vector<Rat>(sol->begin(), sol->begin() + static_cast<long>(n));
}

}  // namespace ellkit

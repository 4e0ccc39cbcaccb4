#pragma once

#include "ellkit/numeric.hpp"

namespace ellkit {

/// Dense matrix over Q with exact arithmetic.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static QMat identity(std::size_t n);
    static QMat diagonal(const std::vector<Rat>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat operator*(const QMat& o) const;
    QMat operator*(const Rat& s) const;
    QMat transpose() const;
    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    bool is_symmetric() const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    Rat determinant() const;
    std::size_t rank() const;

    /// Coefficients of det(xI - A), highest degree first (monic).
    std::vector<Rat> charpoly() const;

    /// Sylvester: all leading principal minors positive.
    bool is_positive_definite() const;
    /// Charpoly-coefficient criterion: (-1)^k c_{n-k} >= 0 for all k.
    bool is_positive_semidefinite() const;

    QMat inverse() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Solve A x = b exactly (A square nonsingular).
std::vector<Rat> solve_linear(const QMat& A, const std::vector<Rat>& b);

/// A particular solution of A x = b for a general A (full-pivot elimination,
/// free variables set to zero); nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_particular(const QMat& A, const std::vector<Rat>& b);

/// Basis of the right null space of A.
std::vector<std::vector<Rat>> nullspace(const QMat& A);

/// min x^T G x subject to C x = d (G symmetric PSD, PD on ker C).
/// Solved through the stationarity system; returns the minimizer.
std::vector<Rat> constrained_min_norm(const QMat& G, const QMat& C, const std::vector<Rat>& d);

}  // namespace ellkit

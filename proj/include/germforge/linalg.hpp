#pragma once

#include "germforge/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace germforge {

/// Dense matrix of exact rationals. Row-major.
class QMat {
public:
    QMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}
    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

private:
    int r_, c_;
    std::vector<Rat> a_;
};

/// Certified rank by fraction-free (Bareiss) elimination: rows are
/// cleared to integers, then eliminated with exact divisions only.
int bareiss_rank(const QMat& m);

/// Determinant of a square matrix, fraction-free on the integer lift.
Rat bareiss_det(const QMat& m);

/// One solution of A x = rhs (free unknowns set to zero), or nullopt
/// when the system is inconsistent.
std::optional<std::vector<Rat>> solve_dense(const QMat& a, const std::vector<Rat>& rhs);

/// CSV dump with exact rational entries, for debugging eliminations.
std::string matrix_csv(const QMat& m);

/// Sparse vector: (column, value) pairs, strictly increasing columns,
/// no zero values.
using SparseRow = std::vector<std::pair<int, Rat>>;

SparseRow make_sparse(const std::vector<Rat>& dense);

/// Incremental row space with unit pivots; deterministic (pivot at the
/// lowest surviving column). Supports membership queries against the
/// span of the inserted rows.
class RowBasis {
public:
    /// Returns true when the row enlarged the span.
    bool insert(SparseRow row);
    bool contains(SparseRow row) const;
    /// Residual after reduction against the basis (empty iff contained).
    SparseRow reduce(SparseRow row) const;
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<SparseRow> rows_;  // reduced rows
    std::vector<int> pivots_;      // pivot column per row
};

} // namespace germforge

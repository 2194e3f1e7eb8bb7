#include "germforge/linalg.hpp"

#include "germforge/errors.hpp"

#include <algorithm>

namespace germforge {

namespace {

// Integer lift: every row scaled by the lcm of its denominators.
std::vector<std::vector<Int>> integer_rows(const QMat& m) {
    std::vector<std::vector<Int>> rows(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (int j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        rows[i].resize(static_cast<size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j) {
            Rat v = m.at(i, j) * l;
            rows[i][static_cast<size_t>(j)] = v.get_num();
        }
    }
    return rows;
}

} // namespace

int bareiss_rank(const QMat& m) {
    auto a = integer_rows(m);
    const int R = m.rows(), C = m.cols();
    int rank = 0;
    Int prev = 1;
    for (int col = 0; col < C && rank < R; ++col) {
        int piv = -1;
        for (int i = rank; i < R; ++i)
            if (sgn(a[i][col]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(piv)]);
        const Int& p = a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int i = rank + 1; i < R; ++i) {
            if (sgn(a[i][col]) == 0) {
                // Still rescale to keep the fraction-free invariant.
                for (int j = col + 1; j < C; ++j) {
                    Int v = a[i][j] * p;
                    mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                }
                continue;
            }
            for (int j = col + 1; j < C; ++j) {
                Int v = a[i][j] * p - a[i][col] * a[static_cast<size_t>(rank)][static_cast<size_t>(j)];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

Rat bareiss_det(const QMat& m) {
    if (m.rows() != m.cols()) throw ContractError("bareiss_det: square matrix required");
    const int n = m.rows();
    if (n == 0) return Rat(1);
    // Track the denominator scaling introduced by the integer lift.
    Rat scale(1);
    auto a0 = integer_rows(m);
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        scale *= Rat(l);
    }
    auto a = a0;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (sgn(a[k][k]) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (sgn(a[i][k]) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Rat(0);
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat det(a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]);
    if (sign < 0) det = -det;
    return det / scale;
}

std::optional<std::vector<Rat>> solve_dense(const QMat& a, const std::vector<Rat>& rhs) {
    if (static_cast<int>(rhs.size()) != a.rows())
        throw ContractError("solve_dense: rhs size mismatch");
    const int R = a.rows(), C = a.cols();
    QMat m(R, C + 1);
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < C; ++j) m.at(i, j) = a.at(i, j);
        m.at(i, C) = rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivotCol;
    int row = 0;
    for (int col = 0; col < C && row < R; ++col) {
        int piv = -1;
        for (int i = row; i < R; ++i)
            if (sgn(m.at(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j <= C; ++j) std::swap(m.at(row, j), m.at(piv, j));
        const Rat p = m.at(row, col);
        for (int j = col; j <= C; ++j) m.at(row, j) /= p;
        for (int i = 0; i < R; ++i) {
            if (i == row || sgn(m.at(i, col)) == 0) continue;
            const Rat f = m.at(i, col);
            for (int j = col; j <= C; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivotCol.push_back(col);
        ++row;
    }
    for (int i = row; i < R; ++i)
        if (sgn(m.at(i, C)) != 0) return std::nullopt;
    std::vector<Rat> x(static_cast<size_t>(C), Rat(0));
    for (int i = 0; i < row; ++i) x[static_cast<size_t>(pivotCol[static_cast<size_t>(i)])] = m.at(i, C);
    return x;
}

std::string matrix_csv(const QMat& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += rat_str(m.at(i, j));
        }
        out += "\n";
    }
    return out;
}

SparseRow make_sparse(const std::vector<Rat>& dense) {
    SparseRow r;
    for (size_t j = 0; j < dense.size(); ++j)
        if (sgn(dense[j]) != 0) r.emplace_back(static_cast<int>(j), dense[j]);
    return r;
}

namespace {

void axpy(SparseRow& target, const Rat& factor, const SparseRow& src) {
    // target -= factor * src, merging sorted sparse rows.
    SparseRow out;
    out.reserve(target.size() + src.size());
    size_t i = 0, j = 0;
    while (i < target.size() || j < src.size()) {
        if (j >= src.size() || (i < target.size() && target[i].first < src[j].first)) {
            out.push_back(target[i++]);
        } else if (i >= target.size() || src[j].first < target[i].first) {
            out.emplace_back(src[j].first, -factor * src[j].second);
            ++j;
        } else {
            Rat v = target[i].second - factor * src[j].second;
            if (sgn(v) != 0) out.emplace_back(target[i].first, v);
            ++i;
            ++j;
        }
    }
    target = std::move(out);
}

} // namespace

SparseRow RowBasis::reduce(SparseRow row) const {
    while (!row.empty()) {
        const int col = row.front().first;
        bool hit = false;
        for (size_t r = 0; r < rows_.size(); ++r) {
            if (pivots_[r] == col) {
                axpy(row, row.front().second, rows_[r]);
                hit = true;
                break;
            }
        }
        if (!hit) break;
    }
    return row;
}

bool RowBasis::insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    const Rat lead = row.front().second;
    for (auto& [c, v] : row) v /= lead;
    // Back-substitute the new pivot into the existing rows.
    const int piv = row.front().first;
    for (size_t r = 0; r < rows_.size(); ++r) {
        Rat coef(0);
        for (const auto& [c, v] : rows_[r])
            if (c == piv) {
                coef = v;
                break;
            }
        if (sgn(coef) != 0) axpy(rows_[r], coef, row);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
}

bool RowBasis::contains(SparseRow row) const { return reduce(std::move(row)).empty(); }

} // namespace germforge

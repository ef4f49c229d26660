#pragma once

#include "rigidconv/fuchsian.hpp"
#include "rigidconv/polyq.hpp"

namespace rigidconv {

/// Dense matrix with PolyQ entries.
class MatPolyQ {
public:
    MatPolyQ() : rows_(0), cols_(0) {}
    MatPolyQ(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    static MatPolyQ identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    PolyQ& at(int i, int j) { return e_[i * cols_ + j]; }
    const PolyQ& at(int i, int j) const { return e_[i * cols_ + j]; }

    bool is_zero() const;
    MatPolyQ operator+(const MatPolyQ& o) const;
    MatPolyQ operator-(const MatPolyQ& o) const;
    MatPolyQ operator*(const MatPolyQ& o) const;
    MatPolyQ scaled(const PolyQ& f) const;
    MatPolyQ scaled(const Rational& a) const;
    MatPolyQ derivative() const;
    bool operator==(const MatPolyQ& o) const = default;

private:
    int rows_, cols_;
    std::vector<PolyQ> e_;
};

/// Exact realization of the matrices A_[s] with (d/dt)^s y = A_[s] y for
/// solutions y: A_[s] = P_s / D^s where D = prod (t - q_i) and the P_s
/// satisfy P_0 = I, P_{s+1} = P_s' D - s P_s D' + N P_s with N = P_1 the
/// cleared numerator of A.
struct DerivativeTower {
    PolyQ D;
    MatPolyQ N;
    std::vector<MatPolyQ> P; // P_0..P_depth
    int depth = 0;
};

DerivativeTower build_tower(const FuchsianSystem& f, int depth);

} // namespace rigidconv

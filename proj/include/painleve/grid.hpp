#ifndef PAINLEVE_GRID_HPP
#define PAINLEVE_GRID_HPP

// Uniform tensor-product grids, sampled fields and the stencils/quadrature
// shared by every solver. Everything here is header-only and templated on
// the scalar type; the solvers instantiate it with double.

#include <Eigen/Core>

#include <cmath>
#include <sstream>
#include <string>

#include "painleve/errors.hpp"

namespace painleve {

using Index = Eigen::Index;

template <typename Scalar>
class Grid1 {
public:
    Grid1(Scalar start, Scalar end, Index count) : start_(start), end_(end), count_(count) {
        if (count < 3) {
            throw InvalidArgument("grid needs at least 3 nodes, got " + std::to_string(count));
        }
        if (!(start < end)) {
            std::ostringstream os;
            os << "grid start " << start << " must be below end " << end;
            throw InvalidArgument(os.str());
        }
        spacing_ = (end - start) / Scalar(count - 1);
    }

    Scalar start() const { return start_; }
    Scalar end() const { return end_; }
    Index count() const { return count_; }
    Scalar spacing() const { return spacing_; }

    Scalar node(Index i) const { return i == count_ - 1 ? end_ : start_ + Scalar(i) * spacing_; }

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes() const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(count_);
        for (Index i = 0; i < count_; ++i) out[i] = node(i);
        return out;
    }

    bool contains(Scalar x) const { return x >= start_ && x <= end_; }

    /// Index of the cell [node(i), node(i+1)] holding x, clamped to the last cell.
    Index cell(Scalar x) const {
        Index i = static_cast<Index>(std::floor((x - start_) / spacing_));
        if (i < 0) i = 0;
        if (i > count_ - 2) i = count_ - 2;
        return i;
    }

    friend bool operator==(const Grid1& a, const Grid1& b) {
        return a.start_ == b.start_ && a.end_ == b.end_ && a.count_ == b.count_;
    }

private:
    Scalar start_;
    Scalar end_;
    Index count_;
    Scalar spacing_;
};

template <typename Scalar>
Grid1<Scalar> build_grid1(Scalar start, Scalar end, Index count) {
    return Grid1<Scalar>(start, end, count);
}

/// axis1 runs along x1, axis2 along the radial coordinate sigma.
template <typename Scalar>
struct Grid2 {
    Grid1<Scalar> axis1;
    Grid1<Scalar> axis2;

    Index size() const { return axis1.count() * axis2.count(); }
    friend bool operator==(const Grid2& a, const Grid2& b) {
        return a.axis1 == b.axis1 && a.axis2 == b.axis2;
    }
};

template <typename Scalar>
class Field1 {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Field1(Grid1<Scalar> grid, Vector values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.count()) {
            throw InvalidArgument("field length " + std::to_string(values_.size()) +
                                  " does not match grid count " + std::to_string(grid_.count()));
        }
        if (!values_.allFinite()) throw InvalidArgument("field holds non-finite values");
    }

    static Field1 zeros(const Grid1<Scalar>& grid) { return Field1(grid, Vector::Zero(grid.count())); }

    template <typename Fn>
    static Field1 sample(const Grid1<Scalar>& grid, Fn&& fn) {
        Vector v(grid.count());
        for (Index i = 0; i < grid.count(); ++i) v[i] = fn(grid.node(i));
        return Field1(grid, std::move(v));
    }

    const Grid1<Scalar>& grid() const { return grid_; }
    const Vector& values() const { return values_; }
    Scalar operator[](Index i) const { return values_[i]; }
    Index size() const { return values_.size(); }

private:
    Grid1<Scalar> grid_;
    Vector values_;
};

/// Samples stored row-major: values(i, j) = f(axis1.node(i), axis2.node(j)).
template <typename Scalar>
class Field2 {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    Field2(Grid2<Scalar> grid, Matrix values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.rows() != grid_.axis1.count() || values_.cols() != grid_.axis2.count()) {
            throw InvalidArgument("field shape " + std::to_string(values_.rows()) + "x" +
                                  std::to_string(values_.cols()) + " does not match grid " +
                                  std::to_string(grid_.axis1.count()) + "x" +
                                  std::to_string(grid_.axis2.count()));
        }
        if (!values_.allFinite()) throw InvalidArgument("field holds non-finite values");
    }

    static Field2 zeros(const Grid2<Scalar>& grid) {
        return Field2(grid, Matrix::Zero(grid.axis1.count(), grid.axis2.count()));
    }

    template <typename Fn>
    static Field2 sample(const Grid2<Scalar>& grid, Fn&& fn) {
        Matrix m(grid.axis1.count(), grid.axis2.count());
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) m(i, j) = fn(grid.axis1.node(i), grid.axis2.node(j));
        return Field2(grid, std::move(m));
    }

    const Grid2<Scalar>& grid() const { return grid_; }
    const Matrix& values() const { return values_; }
    Scalar operator()(Index i, Index j) const { return values_(i, j); }

private:
    Grid2<Scalar> grid_;
    Matrix values_;
};

using Grid1D = Grid1<double>;
using Grid2D = Grid2<double>;
using Field1D = Field1<double>;
using Field2D = Field2<double>;

/// Central second difference in the interior, one-sided second-order stencils
/// at both ends (first order when only three nodes exist).
template <typename Scalar>
Field1<Scalar> second_derivative(const Field1<Scalar>& f) {
    const Index n = f.size();
    const Scalar h2 = f.grid().spacing() * f.grid().spacing();
    const auto& v = f.values();
    typename Field1<Scalar>::Vector d(n);
    for (Index i = 1; i + 1 < n; ++i) d[i] = (v[i - 1] - Scalar(2) * v[i] + v[i + 1]) / h2;
    if (n >= 4) {
        d[0] = (Scalar(2) * v[0] - Scalar(5) * v[1] + Scalar(4) * v[2] - v[3]) / h2;
        d[n - 1] = (Scalar(2) * v[n - 1] - Scalar(5) * v[n - 2] + Scalar(4) * v[n - 3] - v[n - 4]) / h2;
    } else {
        d[0] = d[1];
        d[n - 1] = d[n - 2];
    }
    return Field1<Scalar>(f.grid(), std::move(d));
}

/// Composite trapezoid weights on a uniform axis.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> trapezoid_weights(const Grid1<Scalar>& g) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w =
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Constant(g.count(), g.spacing());
    w[0] *= Scalar(0.5);
    w[g.count() - 1] *= Scalar(0.5);
    return w;
}

/// Trapezoid approximation of the integral of f(x1, sigma) * sigma^p over the grid rectangle.
/// Rows are reduced in a fixed order, so the result is bit-reproducible.
template <typename Scalar>
Scalar integrate_weighted(const Field2<Scalar>& f, int weight_exponent) {
    if (weight_exponent < 0) throw InvalidArgument("weight exponent must be non-negative");
    const auto& g = f.grid();
    const auto w1 = trapezoid_weights(g.axis1);
    auto w2 = trapezoid_weights(g.axis2);
    for (Index j = 0; j < w2.size(); ++j) {
        w2[j] *= weight_exponent == 0 ? Scalar(1) : std::pow(g.axis2.node(j), weight_exponent);
    }
    Scalar total(0);
    for (Index i = 0; i < w1.size(); ++i) total += w1[i] * f.values().row(i).dot(w2.transpose());
    return total;
}

template <typename Scalar>
Scalar integrate(const Field1<Scalar>& f) {
    return trapezoid_weights(f.grid()).dot(f.values());
}

/// Piecewise-linear interpolation; exact at nodes.
template <typename Scalar>
Scalar interp_linear(const Field1<Scalar>& f, Scalar x) {
    const auto& g = f.grid();
    if (!g.contains(x)) {
        std::ostringstream os;
        os << "query x=" << x << " outside [" << g.start() << ", " << g.end() << "]";
        throw OutOfDomain(os.str());
    }
    const Index i = g.cell(x);
    const Scalar t = (x - g.node(i)) / g.spacing();
    if (t == Scalar(0)) return f[i];
    if (t == Scalar(1)) return f[i + 1];
    return (Scalar(1) - t) * f[i] + t * f[i + 1];
}

/// Bilinear interpolation from the four surrounding nodes; exact at nodes.
template <typename Scalar>
Scalar interp_bilinear(const Field2<Scalar>& f, Scalar x1, Scalar sigma) {
    const auto& g = f.grid();
    if (!g.axis1.contains(x1) || !g.axis2.contains(sigma)) {
        std::ostringstream os;
        os << "query (" << x1 << ", " << sigma << ") outside [" << g.axis1.start() << ", "
           << g.axis1.end() << "] x [" << g.axis2.start() << ", " << g.axis2.end() << "]";
        throw OutOfDomain(os.str());
    }
    const Index i = g.axis1.cell(x1);
    const Index j = g.axis2.cell(sigma);
    const Scalar s = (x1 - g.axis1.node(i)) / g.axis1.spacing();
    const Scalar t = (sigma - g.axis2.node(j)) / g.axis2.spacing();
    const auto& v = f.values();
    if (s == Scalar(0) && t == Scalar(0)) return v(i, j);
    return (Scalar(1) - s) * (Scalar(1) - t) * v(i, j) + s * (Scalar(1) - t) * v(i + 1, j) +
           (Scalar(1) - s) * t * v(i, j + 1) + s * t * v(i + 1, j + 1);
}

/// Solves a tridiagonal system in place (Thomas algorithm). `lower[0]` and
/// `upper[n-1]` are ignored. Returns false on a zero pivot.
template <typename Scalar>
bool solve_tridiagonal(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lower,
                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diag,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& upper,
                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
    const Index n = diag.size();
    for (Index i = 1; i < n; ++i) {
        if (diag[i - 1] == Scalar(0)) return false;
        const Scalar m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == Scalar(0)) return false;
    rhs[n - 1] /= diag[n - 1];
    for (Index i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    return true;
}

}  // namespace painleve

#endif  // PAINLEVE_GRID_HPP

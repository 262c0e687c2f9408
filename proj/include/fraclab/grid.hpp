#pragma once

// Collocation grid on [-1, 1] and functions sampled on it. Functions are
// implicitly zero outside [-1, 1].

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fraclab {

class Grid {
  public:
    // Chebyshev extrema, ascending, n odd and >= 33. Nodes are mirrored
    // exactly: node(n-1-j) == -node(j), node(n/2) == 0.
    static std::shared_ptr<const Grid> make(std::size_t n);

    std::size_t size() const { return nodes_.size(); }
    std::span<const double> nodes() const { return nodes_; }
    double node(std::size_t j) const { return nodes_[j]; }
    std::size_t center() const { return nodes_.size() / 2; }
    // Barycentric weights of the polynomial interpolant through all nodes.
    std::span<const double> bary_weights() const { return bary_; }

    // Width of the node interval containing x (the larger neighbour on a node).
    double spacing_at(double x) const;
    // Index j with node(j) <= x < node(j+1), clamped to [0, n-2].
    std::size_t interval_of(double x) const;
    bool is_symmetric(double tol = 0.0) const;

  private:
    explicit Grid(std::vector<double> nodes);
    std::vector<double> nodes_;
    std::vector<double> bary_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Throws DomainError for n < 33 or even n.
GridPtr make_grid(std::size_t n);

class GridFunction {
  public:
    GridFunction(GridPtr grid, std::vector<double> values);
    static GridFunction zeros(GridPtr grid);
    template <class F>
    static GridFunction sample(GridPtr grid, F&& f) {
        std::vector<double> v(grid->size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->node(j));
        return GridFunction(std::move(grid), std::move(v));
    }

    const GridPtr& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }
    double sup_norm() const { return sup_; }

    void assign(std::vector<double> values);

    // Global polynomial (barycentric) interpolant; 0 outside [-1, 1].
    double interpolate(double x) const;
    // Local Lagrange interpolant of the given degree through the nearest
    // degree+1 nodes of the interval containing x; 0 outside [-1, 1].
    double interpolate_local(double x, int degree) const;

    GridFunction scaled(double s) const;

  private:
    GridPtr grid_;
    std::vector<double> values_;
    double sup_ = 0.0;
};

// Indices of the degree+1 nodes nearest to x (ties broken toward the left),
// ascending.
std::vector<std::size_t> nearest_stencil(const Grid& grid, double x, int degree);

// Taylor coefficients c_k (k = 0..degree) at x of the polynomial through
// (nodes[idx], values[idx]), i.e. P(x + t) = sum c_k t^k.
std::vector<double> taylor_at(const Grid& grid, std::span<const double> values,
                              std::span<const std::size_t> idx, double x);

// CSV with header "x,value", one row per node, 17 significant digits.
void write_csv(const GridFunction& u, std::ostream& os);
void write_csv(const GridFunction& u, const std::string& path);

struct CsvSamples {
    std::vector<double> x;
    std::vector<double> value;
};
// Throws DomainError on malformed content.
CsvSamples read_csv(std::istream& is);
CsvSamples read_csv_file(const std::string& path);

// Piecewise-linear resampling of CSV samples onto a grid (exact when the
// sample abscissae coincide with the grid nodes).
GridFunction resample(const CsvSamples& s, GridPtr grid);

}  // namespace fraclab

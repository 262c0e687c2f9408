#include "fraclab/grid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fraclab/errors.hpp"
#include "fraclab/simd.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    bary_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j + 1 == n) w *= 0.5;
        bary_[j] = w;
    }
}

std::shared_ptr<const Grid> Grid::make(std::size_t n) {
    if (n < 33 || n % 2 == 0) throw DomainError("make_grid: n must be odd and >= 33");
    std::vector<double> x(n);
    const std::size_t m = n - 1;
    for (std::size_t j = 0; j < n / 2; ++j) {
        // sin form keeps the small-distance nodes accurate near the center
        x[j] = std::sin(pi * (2.0 * double(j) - double(m)) / (2.0 * double(m)));
        x[m - j] = -x[j];
    }
    x[0] = -1.0;
    x[m] = 1.0;
    x[n / 2] = 0.0;
    return std::shared_ptr<const Grid>(new Grid(std::move(x)));
}

GridPtr make_grid(std::size_t n) { return Grid::make(n); }

std::size_t Grid::interval_of(double x) const {
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    std::size_t j = it == nodes_.begin() ? 0 : std::size_t(it - nodes_.begin()) - 1;
    return std::min(j, nodes_.size() - 2);
}

double Grid::spacing_at(double x) const {
    const std::size_t j = interval_of(x);
    double h = nodes_[j + 1] - nodes_[j];
    if (x == nodes_[j] && j > 0) h = std::max(h, nodes_[j] - nodes_[j - 1]);
    return h;
}

bool Grid::is_symmetric(double tol) const {
    const std::size_t n = nodes_.size();
    for (std::size_t j = 0; j < n; ++j)
        if (std::fabs(nodes_[j] + nodes_[n - 1 - j]) > tol) return false;
    return true;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)) {
    if (!grid_) throw DomainError("GridFunction: null grid");
    assign(std::move(values));
}

GridFunction GridFunction::zeros(GridPtr grid) {
    const std::size_t n = grid->size();
    return GridFunction(std::move(grid), std::vector<double>(n, 0.0));
}

void GridFunction::assign(std::vector<double> values) {
    if (values.size() != grid_->size()) throw DomainError("GridFunction: size mismatch with grid");
    values_ = std::move(values);
    sup_ = simd::max_abs(values_);
}

double GridFunction::interpolate(double x) const {
    if (x < -1.0 || x > 1.0) return 0.0;
    const auto nodes = grid_->nodes();
    const auto lam = grid_->bary_weights();
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double d = x - nodes[j];
        if (d == 0.0) return values_[j];
        const double t = lam[j] / d;
        num += t * values_[j];
        den += t;
    }
    return num / den;
}

std::vector<std::size_t> nearest_stencil(const Grid& grid, double x, int degree) {
    const std::size_t n = grid.size();
    const std::size_t count = std::min<std::size_t>(std::size_t(degree) + 1, n);
    std::size_t lo = grid.interval_of(x);
    if (grid.node(lo + 1) - x < x - grid.node(lo)) ++lo;
    std::size_t hi = lo + 1;  // half-open [lo, hi)
    while (hi - lo < count) {
        if (lo == 0) {
            ++hi;
        } else if (hi == n) {
            --lo;
        } else if (x - grid.node(lo - 1) <= grid.node(hi) - x) {
            --lo;
        } else {
            ++hi;
        }
    }
    std::vector<std::size_t> idx(count);
    for (std::size_t k = 0; k < count; ++k) idx[k] = lo + k;
    return idx;
}

std::vector<double> taylor_at(const Grid& grid, std::span<const double> values,
                              std::span<const std::size_t> idx, double x) {
    const std::size_t m = idx.size();
    // Scaled Vandermonde in s = (node - x)/h keeps the small system well conditioned.
    double h = 0.0;
    for (std::size_t k : idx) h = std::max(h, std::fabs(grid.node(k) - x));
    if (h == 0.0) h = 1.0;
    Eigen::MatrixXd V(m, m);
    Eigen::VectorXd rhs(m);
    for (std::size_t r = 0; r < m; ++r) {
        const double s = (grid.node(idx[r]) - x) / h;
        double pw = 1.0;
        for (std::size_t c = 0; c < m; ++c) {
            V(Eigen::Index(r), Eigen::Index(c)) = pw;
            pw *= s;
        }
        rhs[Eigen::Index(r)] = values[idx[r]];
    }
    const Eigen::VectorXd coef = V.fullPivLu().solve(rhs);
    std::vector<double> out(m);
    double scale = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
        out[c] = coef[Eigen::Index(c)] / scale;
        scale *= h;
    }
    return out;
}

double GridFunction::interpolate_local(double x, int degree) const {
    if (x < -1.0 || x > 1.0) return 0.0;
    const std::size_t j = grid_->interval_of(x);
    // stencil centered on the interval, not on x, so the piecewise interpolant
    // is a single polynomial per interval
    const double mid = 0.5 * (grid_->node(j) + grid_->node(j + 1));
    const auto idx = nearest_stencil(*grid_, mid, degree);
    double acc = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        double l = 1.0;
        const double xa = grid_->node(idx[a]);
        for (std::size_t b = 0; b < idx.size(); ++b)
            if (b != a) l *= (x - grid_->node(idx[b])) / (xa - grid_->node(idx[b]));
        acc += l * values_[idx[a]];
    }
    return acc;
}

GridFunction GridFunction::scaled(double s) const {
    std::vector<double> v(values_);
    for (double& e : v) e *= s;
    return GridFunction(grid_, std::move(v));
}

void write_csv(const GridFunction& u, std::ostream& os) {
    os << "x,value\n";
    char buf[64];
    for (std::size_t j = 0; j < u.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.grid()->node(j), u[j]);
        os << buf;
    }
}

void write_csv(const GridFunction& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(u, os);
}

CsvSamples read_csv(std::istream& is) {
    CsvSamples s;
    std::string line;
    if (!std::getline(is, line)) throw DomainError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,value") throw DomainError("csv: expected header 'x,value'");
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("csv: malformed row '" + line + "'");
        try {
            std::size_t used = 0;
            const double x = std::stod(line.substr(0, comma), &used);
            const double v = std::stod(line.substr(comma + 1));
            s.x.push_back(x);
            s.value.push_back(v);
        } catch (const std::logic_error&) {
            throw DomainError("csv: malformed row '" + line + "'");
        }
    }
    if (s.x.size() < 2) throw DomainError("csv: need at least two rows");
    for (std::size_t k = 0; k < s.x.size(); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.value[k]))
            throw DomainError("csv: non-finite entry");
        if (s.x[k] < -1.0 || s.x[k] > 1.0) throw DomainError("csv: abscissa outside [-1, 1]");
        if (k > 0 && !(s.x[k] > s.x[k - 1])) throw DomainError("csv: abscissae must increase");
    }
    return s;
}

CsvSamples read_csv_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("csv: cannot open " + path);
    return read_csv(is);
}

GridFunction resample(const CsvSamples& s, GridPtr grid) {
    std::vector<double> v(grid->size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = grid->node(j);
        if (x <= s.x.front()) {
            v[j] = x == s.x.front() ? s.value.front() : 0.0;
            continue;
        }
        if (x >= s.x.back()) {
            v[j] = x == s.x.back() ? s.value.back() : 0.0;
            continue;
        }
        const auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
        const std::size_t k = std::size_t(it - s.x.begin());
        const double t = (x - s.x[k - 1]) / (s.x[k] - s.x[k - 1]);
        v[j] = (1.0 - t) * s.value[k - 1] + t * s.value[k];
    }
    return GridFunction(std::move(grid), std::move(v));
}

}  // namespace fraclab

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace resideq {

struct Grid1D
{
  std::size_t n_cells = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  std::vector<double> centers;

  double center(std::size_t i) const { return centers[i]; }
  // position of the interface between cell i and i+1 (i = -1 .. n_cells-1)
  double edge(std::ptrdiff_t i) const
  {
    return x_min + static_cast<double>(i + 1) * dx;
  }
};

inline Grid1D make_grid_1d(std::size_t n_cells, double x_min, double x_max)
{
  if (n_cells < 2)
    throw std::invalid_argument("make_grid_1d: need at least 2 cells");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw std::invalid_argument("make_grid_1d: empty or non-finite interval");
  Grid1D g;
  g.n_cells = n_cells;
  g.x_min = x_min;
  g.x_max = x_max;
  g.dx = (x_max - x_min) / static_cast<double>(n_cells);
  g.centers.resize(n_cells);
  // offsets from the midpoint keep symmetric grids exactly symmetric
  const double mid = 0.5 * (x_min + x_max);
  const double half = 0.5 * static_cast<double>(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i)
    g.centers[i] = mid + (static_cast<double>(i) + 0.5 - half) * g.dx;
  return g;
}

struct Grid2D
{
  Grid1D x;
  Grid1D y;

  std::size_t nx() const { return x.n_cells; }
  std::size_t ny() const { return y.n_cells; }
  std::size_t n_cells() const { return x.n_cells * y.n_cells; }
  double dx() const { return x.dx; }
  double dy() const { return y.dx; }
  double cell_volume() const { return x.dx * y.dx; }
  // row-major with x as the slow index
  std::size_t index(std::size_t i, std::size_t j) const { return i * y.n_cells + j; }
};

inline Grid2D make_grid_2d(std::size_t nx, double x_min, double x_max,
                           std::size_t ny, double y_min, double y_max)
{
  return Grid2D{make_grid_1d(nx, x_min, x_max), make_grid_1d(ny, y_min, y_max)};
}

struct FieldShape
{
  std::size_t nx = 0;
  std::size_t ny = 1;
  std::size_t components = 1;

  std::size_t cells() const { return nx * ny; }
  std::size_t size() const { return nx * ny * components; }
  bool operator==(const FieldShape&) const = default;
};

inline FieldShape shape_of(const Grid1D& g, std::size_t components = 1)
{
  return {g.n_cells, 1, components};
}

inline FieldShape shape_of(const Grid2D& g, std::size_t components = 1)
{
  return {g.nx(), g.ny(), components};
}

// Cell-averaged values, components interleaved per cell.
class Field
{
 public:
  Field() = default;
  explicit Field(FieldShape shape, double value = 0.0)
      : shape_(shape), data_(shape.size(), value)
  {
    if (shape.nx == 0 || shape.ny == 0 || shape.components == 0)
      throw std::invalid_argument("Field: empty shape");
  }
  Field(FieldShape shape, std::vector<double> data) : shape_(shape), data_(std::move(data))
  {
    if (data_.size() != shape_.size())
      throw std::invalid_argument("Field: data length does not match shape");
  }

  const FieldShape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::size_t cells() const { return shape_.cells(); }
  std::size_t components() const { return shape_.components; }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }
  double& at(std::size_t cell, std::size_t c) { return data_[cell * shape_.components + c]; }
  double at(std::size_t cell, std::size_t c) const { return data_[cell * shape_.components + c]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool all_finite() const
  {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double max_abs() const
  {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Field& operator+=(const Field& o)
  {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Field& operator-=(const Field& o)
  {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Field& operator*=(double s)
  {
    for (double& v : data_) v *= s;
    return *this;
  }
  // this += s * x
  Field& axpy(double s, const Field& x)
  {
    check_same(x);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * x.data_[k];
    return *this;
  }

  bool operator==(const Field&) const = default;

  void check_same(const Field& o) const
  {
    if (!(shape_ == o.shape_))
      throw std::invalid_argument("Field: shape mismatch");
  }

 private:
  FieldShape shape_{};
  std::vector<double> data_;
};

inline Field operator+(Field a, const Field& b) { return a += b; }
inline Field operator-(Field a, const Field& b) { return a -= b; }
inline Field operator*(double s, Field a) { return a *= s; }

inline Field project_function(const Grid1D& grid, const std::function<double(double)>& f)
{
  Field out(shape_of(grid));
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double v = f(grid.centers[i]);
    if (!std::isfinite(v))
      throw std::domain_error("project_function: non-finite value at x = " +
                              std::to_string(grid.centers[i]));
    out[i] = v;
  }
  return out;
}

inline Field project_function(const Grid2D& grid,
                              const std::function<double(double, double)>& f)
{
  Field out(shape_of(grid));
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double v = f(grid.x.centers[i], grid.y.centers[j]);
      if (!std::isfinite(v))
        throw std::domain_error("project_function: non-finite value at cell (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
      out[grid.index(i, j)] = v;
    }
  return out;
}

// `x value` or `x h hv` per line
inline void write_snapshot(std::ostream& os, const Grid1D& grid, const Field& u)
{
  os << std::setprecision(17);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    os << grid.centers[i];
    for (std::size_t c = 0; c < u.components(); ++c) os << ' ' << u.at(i, c);
    os << '\n';
  }
}

// one ny x nx block per component, rows along y, blank line between blocks
inline void write_snapshot(std::ostream& os, const Grid2D& grid, const Field& u)
{
  os << std::setprecision(17);
  for (std::size_t c = 0; c < u.components(); ++c) {
    if (c > 0) os << '\n';
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) {
        if (i > 0) os << ' ';
        os << u.at(grid.index(i, j), c);
      }
      os << '\n';
    }
  }
}

}  // namespace resideq

#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace inflab {

using cplx = std::complex<double>;

/// Periodic Cartesian grid centered on the origin: x_i = -L/2 + i L/n per axis.
/// Storage is row-major with the z index fastest.
struct CartGrid {
  std::array<int, 3> n{0, 0, 0};
  std::array<double, 3> L{0, 0, 0};

  std::size_t size() const { return static_cast<std::size_t>(n[0]) * n[1] * n[2]; }
  /// Number of r2c modes: n0 * n1 * (n2/2 + 1).
  std::size_t spectral_size() const { return static_cast<std::size_t>(n[0]) * n[1] * (n[2] / 2 + 1); }
  double h(int axis) const { return L[axis] / n[axis]; }
  double coord(int axis, int i) const { return -0.5 * L[axis] + i * h(axis); }
  double cell_volume() const { return h(0) * h(1) * h(2); }
  /// Angular wavenumber 2 pi k / L of FFT index i on `axis` (full axes 0, 1 and half axis 2).
  double wavenumber(int axis, int i) const;
  /// Largest resolved angular wavenumber on the axis, pi n / L.
  double nyquist(int axis) const { return M_PI * n[axis] / L[axis]; }
  bool operator==(const CartGrid&) const = default;
};

/// Cached FFTW r2c/c2r pair for one grid shape. forward() divides by the
/// number of points so coefficients are Fourier-series amplitudes.
class Fft {
public:
  static std::shared_ptr<const Fft> get(const std::array<int, 3>& n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(const double* in, cplx* out) const;
  /// `in` is left untouched.
  void backward(const cplx* in, double* out) const;

  std::size_t real_size() const { return real_size_; }
  std::size_t spectral_size() const { return spectral_size_; }

private:
  explicit Fft(const std::array<int, 3>& n);
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
  std::size_t real_size_ = 0, spectral_size_ = 0;
};

/// Thread count used by FFT plans created after the call (fftw3 OpenMP backend).
void set_fft_threads(int threads);

/// Real vector field on a periodic grid.
struct SpectralField {
  CartGrid grid;
  double time = 0;
  /// One physical-space array per component.
  std::vector<std::vector<double>> components;

  static SpectralField zeros(const CartGrid& grid, int ncomp = 3);
  int ncomp() const { return static_cast<int>(components.size()); }

  std::vector<cplx> fourier(int comp) const;
  void set_from_fourier(int comp, const std::vector<cplx>& modes);
  std::vector<double> magnitude() const;
  double max_abs() const;
};

}  // namespace inflab

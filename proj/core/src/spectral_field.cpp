#include "inflab/spectral_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "inflab/errors.hpp"

namespace inflab {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int& fft_threads() {
  static int t = 1;
  return t;
}

}  // namespace

double CartGrid::wavenumber(int axis, int i) const {
  const int k = (axis == 2 || i <= n[axis] / 2) ? i : i - n[axis];
  return 2.0 * M_PI * k / L[axis];
}

void set_fft_threads(int threads) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  static bool initialized = false;
  if (!initialized) {
    fftw_init_threads();
    initialized = true;
  }
  fft_threads() = std::max(1, threads);
  fftw_plan_with_nthreads(fft_threads());
}

Fft::Fft(const std::array<int, 3>& n) {
  for (int v : n)
    if (v <= 0 || v % 2 != 0) throw ResolutionError("FFT dimensions must be positive and even");
  real_size_ = static_cast<std::size_t>(n[0]) * n[1] * n[2];
  spectral_size_ = static_cast<std::size_t>(n[0]) * n[1] * (n[2] / 2 + 1);
  double* r = fftw_alloc_real(real_size_);
  fftw_complex* c = fftw_alloc_complex(spectral_size_);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], r, c, flags);
  backward_plan_ = fftw_plan_dft_c2r_3d(n[0], n[1], n[2], c, r, flags | FFTW_DESTROY_INPUT);
  fftw_free(r);
  fftw_free(c);
  if (!forward_plan_ || !backward_plan_) throw ResolutionError("FFTW could not create a plan");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

std::shared_ptr<const Fft> Fft::get(const std::array<int, 3>& n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  static std::map<std::pair<std::array<int, 3>, int>, std::weak_ptr<const Fft>> cache;
  auto key = std::make_pair(n, fft_threads());
  if (auto hit = cache[key].lock()) return hit;
  std::shared_ptr<const Fft> plan(new Fft(n));
  cache[key] = plan;
  return plan;
}

void Fft::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::size_t i = 0; i < spectral_size_; ++i) out[i] *= scale;
}

void Fft::backward(const cplx* in, double* out) const {
  std::vector<cplx> scratch(in, in + spectral_size_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_), reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

SpectralField SpectralField::zeros(const CartGrid& grid, int ncomp) {
  SpectralField f;
  f.grid = grid;
  f.components.assign(ncomp, std::vector<double>(grid.size(), 0.0));
  return f;
}

std::vector<cplx> SpectralField::fourier(int comp) const {
  auto fft = Fft::get(grid.n);
  std::vector<cplx> out(grid.spectral_size());
  fft->forward(components.at(comp).data(), out.data());
  return out;
}

void SpectralField::set_from_fourier(int comp, const std::vector<cplx>& modes) {
  auto fft = Fft::get(grid.n);
  components.at(comp).resize(grid.size());
  fft->backward(modes.data(), components[comp].data());
}

std::vector<double> SpectralField::magnitude() const {
  std::vector<double> m(grid.size(), 0.0);
  for (const auto& c : components)
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += c[k] * c[k];
  for (auto& v : m) v = std::sqrt(v);
  return m;
}

double SpectralField::max_abs() const {
  double m = 0;
  for (double v : magnitude()) m = std::max(m, v);
  return m;
}

}  // namespace inflab

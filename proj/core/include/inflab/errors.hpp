#pragma once

#include <stdexcept>
#include <string>

namespace inflab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// (s, p) outside the supercritical window or s == 0.
class AdmissibilityError : public Error {
public:
  using Error::Error;
};

/// A scalar parameter outside its allowed range (eps <= 0, mu < 1, ...).
class RangeError : public Error {
public:
  using Error::Error;
};

/// Evaluation at a singular point of a chart (rho = 0, r = 0).
class DomainError : public Error {
public:
  using Error::Error;
};

/// The field support reaches the symmetry axis or leaves the toroidal chart.
class ChartError : public Error {
public:
  using Error::Error;
};

/// Frame fields requested on the axis r = 0.
class AxisError : public Error {
public:
  using Error::Error;
};

/// Derivative order beyond the capacity of a jet or profile.
class OrderError : public Error {
public:
  using Error::Error;
};

/// Grid too coarse for the scale mu.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// Field support touches the periodic box boundary.
class SupportError : public Error {
public:
  using Error::Error;
};

/// Spectrum not decayed at the Nyquist shell.
class AliasError : public Error {
public:
  using Error::Error;
};

/// Characteristic integration could not reach its tolerance.
class StepError : public Error {
public:
  using Error::Error;
};

/// Velocity grew past the blow-up guard during a solve.
class BlowupError : public Error {
public:
  using Error::Error;
};

/// Configuration, serialization or file-system failure.
class IOError : public Error {
public:
  using Error::Error;
};

}  // namespace inflab

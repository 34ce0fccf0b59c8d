#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace objmot {

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using ArrayXX = Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Vector2d = Eigen::Vector2d;

/// Per-pixel instance ids, 0 = background. Row-major, rows = image height.
using LabelMap = ArrayXX<std::int32_t>;

/// Binary mask over a canvas.
using Mask = ArrayXX<bool>;

/// Single color plane with values in [0,1].
using Plane = ArrayXX<double>;

using Rgb = Eigen::Vector3d;

struct Canvas {
  int height = 64;
  int width = 64;

  friend bool operator==(const Canvas&, const Canvas&) = default;
};

/// RGB frame stored as three planes.
struct Frame {
  std::array<Plane, 3> channels;

  Frame() = default;
  Frame(int height, int width, const Rgb& fill = Rgb::Zero()) {
    for (int c = 0; c < 3; ++c) channels[c] = Plane::Constant(height, width, fill[c]);
  }

  int height() const { return static_cast<int>(channels[0].rows()); }
  int width() const { return static_cast<int>(channels[0].cols()); }

  friend bool operator==(const Frame& a, const Frame& b) {
    for (int c = 0; c < 3; ++c) {
      if (a.channels[c].rows() != b.channels[c].rows() ||
          a.channels[c].cols() != b.channels[c].cols())
        return false;
      if ((a.channels[c] != b.channels[c]).any()) return false;
    }
    return true;
  }
};

inline bool same_labels(const LabelMap& a, const LabelMap& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a == b).all();
}

// Error taxonomy. Each maps onto one CLI exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class GenerationExhausted : public Error {
 public:
  GenerationExhausted(const std::string& what, int rejects)
      : Error(what), rejects_(rejects) {}
  int rejects() const { return rejects_; }

 private:
  int rejects_;
};

class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace objmot

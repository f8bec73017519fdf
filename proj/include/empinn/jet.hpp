#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace empinn {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Arr = Eigen::ArrayXXd;

/// Thrown for shape/config mistakes (bad layer sizes, bad presets, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a training loss stops being finite.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(const std::string& what, std::int64_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step(step) {}
  std::int64_t step;
};

/// Which input coordinates carry derivative slots.
///
/// d1_coord[c] is the raw input coordinate differentiated by first-derivative
/// channel c.  d2_src[k] is the index of the d1 channel whose coordinate is
/// differentiated twice by second-derivative channel k (pure derivatives only,
/// no mixed terms).
struct JetLayout {
  int n_inputs = 0;
  std::vector<int> d1_coord;
  std::vector<int> d2_src;

  int n_d1() const { return static_cast<int>(d1_coord.size()); }
  int n_d2() const { return static_cast<int>(d2_src.size()); }
  int channels() const { return 1 + n_d1() + n_d2(); }

  /// Raw coordinate differentiated twice by d2 channel k.
  int d2_coord(int k) const { return d1_coord[d2_src[k]]; }
};

/// A batch of truncated Taylor jets: for every point, a vector of values
/// together with first and (selected pure) second derivatives with respect
/// to the raw network inputs.
///
/// Storage is a single width x (channels * n) matrix laid out as
/// [ value | d1_0 | d1_1 | ... | d2_0 | ... ] so an affine layer is one GEMM
/// over all channels.
class JetBatch {
 public:
  JetBatch() = default;
  JetBatch(int width, int n, int n_d1, int n_d2)
      : width_(width), n_(n), n_d1_(n_d1), n_d2_(n_d2),
        data_(Mat::Zero(width, static_cast<Eigen::Index>(n) * (1 + n_d1 + n_d2))) {}
  JetBatch(int width, int n, const JetLayout& layout)
      : JetBatch(width, n, layout.n_d1(), layout.n_d2()) {}

  int width() const { return width_; }
  int points() const { return n_; }
  int n_d1() const { return n_d1_; }
  int n_d2() const { return n_d2_; }
  int channels() const { return 1 + n_d1_ + n_d2_; }

  Mat& data() { return data_; }
  const Mat& data() const { return data_; }

  auto value() { return data_.middleCols(0, n_); }
  auto value() const { return data_.middleCols(0, n_); }
  auto d1(int c) { return data_.middleCols(static_cast<Eigen::Index>(1 + c) * n_, n_); }
  auto d1(int c) const { return data_.middleCols(static_cast<Eigen::Index>(1 + c) * n_, n_); }
  auto d2(int k) { return data_.middleCols(static_cast<Eigen::Index>(1 + n_d1_ + k) * n_, n_); }
  auto d2(int k) const { return data_.middleCols(static_cast<Eigen::Index>(1 + n_d1_ + k) * n_, n_); }

  void set_zero() { data_.setZero(); }

  /// Reshape without reallocating when the buffer is already large enough.
  void resize(int width, int n, int n_d1, int n_d2) {
    width_ = width;
    n_ = n;
    n_d1_ = n_d1;
    n_d2_ = n_d2;
    data_.resize(width, static_cast<Eigen::Index>(n) * (1 + n_d1 + n_d2));
  }

  bool same_shape(const JetBatch& o) const {
    return width_ == o.width_ && n_ == o.n_ && n_d1_ == o.n_d1_ && n_d2_ == o.n_d2_;
  }

  bool all_finite() const { return data_.allFinite(); }

 private:
  int width_ = 0;
  int n_ = 0;
  int n_d1_ = 0;
  int n_d2_ = 0;
  Mat data_;
};

/// Single-point jet of a scalar function, convenient for residual
/// definitions and tests.  Hot paths use JetBatch instead.
struct Jet {
  double value = 0.0;
  Vec d1;
  Vec d2;
};

/// Extract the jet of output row `row` at point `i`.
inline Jet jet_at(const JetBatch& b, int i, int row = 0) {
  Jet j;
  j.value = b.value()(row, i);
  j.d1.resize(b.n_d1());
  for (int c = 0; c < b.n_d1(); ++c) j.d1[c] = b.d1(c)(row, i);
  j.d2.resize(b.n_d2());
  for (int k = 0; k < b.n_d2(); ++k) j.d2[k] = b.d2(k)(row, i);
  return j;
}

}  // namespace empinn

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Core>

namespace star {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (Scalar(1) + e);
}

// log(1 + exp(z)) without overflow.
template <typename Scalar>
Scalar softplus(Scalar z) {
  return z > Scalar(0) ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// Linear model of the trainer's effectiveness signal, fit online by squared
// error: loss = 0.5 * (w.x + b - target)^2.
template <typename Scalar>
class LinearRegressor {
 public:
  LinearRegressor() = default;
  LinearRegressor(Eigen::Index dim, Scalar learning_rate)
      : weights_(Vector<Scalar>::Zero(dim)), learning_rate_(learning_rate) {}

  Eigen::Index dim() const { return weights_.size(); }
  Scalar learning_rate() const { return learning_rate_; }

  template <typename Derived>
  Scalar predict(const Eigen::MatrixBase<Derived>& x) const {
    return weights_.dot(x.template cast<Scalar>()) + bias_;
  }

  template <typename Derived>
  Scalar loss(const Eigen::MatrixBase<Derived>& x, Scalar target) const {
    const Scalar r = predict(x) - target;
    return Scalar(0.5) * r * r;
  }

  // d loss / d parameters, laid out as parameters().
  template <typename Derived>
  Vector<Scalar> gradient(const Eigen::MatrixBase<Derived>& x, Scalar target) const {
    const Scalar r = predict(x) - target;
    Vector<Scalar> g(dim() + 1);
    g.head(dim()) = r * x.template cast<Scalar>();
    g(dim()) = r;
    return g;
  }

  template <typename Derived>
  void update(const Eigen::MatrixBase<Derived>& x, Scalar target) {
    set_parameters(parameters() - learning_rate_ * gradient(x, target));
  }

  // [weights..., bias]
  Vector<Scalar> parameters() const {
    Vector<Scalar> p(dim() + 1);
    p << weights_, bias_;
    return p;
  }
  void set_parameters(const Vector<Scalar>& p) {
    if (p.size() != dim() + 1) throw std::invalid_argument("parameter size mismatch");
    weights_ = p.head(dim());
    bias_ = p(dim());
  }

  const Vector<Scalar>& weights() const { return weights_; }
  Scalar bias() const { return bias_; }

 private:
  Vector<Scalar> weights_;
  Scalar bias_ = 0;
  Scalar learning_rate_ = Scalar(0.02);
};

// Binary permissibility classifier trained by cross-entropy. With
// hidden_width == 0 it is a single logistic unit; otherwise one tanh hidden
// layer feeds the logistic output. Output weights start at zero, so an
// untrained model outputs exactly 0.5.
template <typename Scalar>
class LogisticClassifier {
 public:
  LogisticClassifier() = default;
  LogisticClassifier(Eigen::Index dim, Scalar learning_rate, Scalar threshold,
                     Eigen::Index hidden_width = 0, std::uint64_t seed = 0)
      : dim_(dim),
        hidden_(hidden_width),
        learning_rate_(learning_rate),
        threshold_(threshold) {
    if (!(threshold >= Scalar(0) && threshold <= Scalar(1))) {
      throw std::invalid_argument("decision threshold must lie in [0, 1]");
    }
    if (hidden_ == 0) {
      out_w_ = Vector<Scalar>::Zero(dim_);
      return;
    }
    std::mt19937_64 rng(seed);
    const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(dim_));
    hidden_w_.resize(hidden_, dim_);
    for (Eigen::Index i = 0; i < hidden_w_.size(); ++i) {
      // 53 high bits mapped to [-scale, scale); avoids library-specific
      // distribution algorithms so parameters are identical everywhere.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      hidden_w_.data()[i] = static_cast<Scalar>(2.0 * u - 1.0) * scale;
    }
    hidden_b_ = Vector<Scalar>::Zero(hidden_);
    out_w_ = Vector<Scalar>::Zero(hidden_);
  }

  Eigen::Index dim() const { return dim_; }
  Eigen::Index hidden_width() const { return hidden_; }
  Scalar learning_rate() const { return learning_rate_; }
  Scalar threshold() const { return threshold_; }
  void set_threshold(Scalar t) { threshold_ = t; }

  template <typename Derived>
  Scalar logit(const Eigen::MatrixBase<Derived>& x) const {
    const Vector<Scalar> xs = x.template cast<Scalar>();
    if (hidden_ == 0) return out_w_.dot(xs) + out_b_;
    const Vector<Scalar> a = (hidden_w_ * xs + hidden_b_).array().tanh().matrix();
    return out_w_.dot(a) + out_b_;
  }

  // Probability that the action is permissible.
  template <typename Derived>
  Scalar predict(const Eigen::MatrixBase<Derived>& x) const {
    return sigmoid(logit(x));
  }

  template <typename Derived>
  bool permissible(const Eigen::MatrixBase<Derived>& x) const {
    return predict(x) >= threshold_;
  }

  // label: 1 permissible, 0 unacceptable.
  template <typename Derived>
  Scalar loss(const Eigen::MatrixBase<Derived>& x, Scalar label) const {
    const Scalar z = logit(x);
    return softplus(z) - label * z;
  }

  template <typename Derived>
  Vector<Scalar> gradient(const Eigen::MatrixBase<Derived>& x, Scalar label) const {
    const Vector<Scalar> xs = x.template cast<Scalar>();
    Vector<Scalar> g(parameter_count());
    if (hidden_ == 0) {
      const Scalar r = sigmoid(out_w_.dot(xs) + out_b_) - label;
      g << r * xs, r;
      return g;
    }
    const Vector<Scalar> a = (hidden_w_ * xs + hidden_b_).array().tanh().matrix();
    const Scalar r = sigmoid(out_w_.dot(a) + out_b_) - label;
    const Vector<Scalar> da =
        (r * out_w_).cwiseProduct((Scalar(1) - a.array().square()).matrix());
    const Matrix<Scalar> dw = da * xs.transpose();
    g << Eigen::Map<const Vector<Scalar>>(dw.data(), dw.size()), da, r * a, r;
    return g;
  }

  template <typename Derived>
  void update(const Eigen::MatrixBase<Derived>& x, Scalar label) {
    set_parameters(parameters() - learning_rate_ * gradient(x, label));
  }

  Eigen::Index parameter_count() const {
    return hidden_ == 0 ? dim_ + 1 : hidden_ * dim_ + hidden_ + hidden_ + 1;
  }

  // Linear: [w..., b]. Hidden: [W1 column-major..., b1..., w2..., b2].
  Vector<Scalar> parameters() const {
    Vector<Scalar> p(parameter_count());
    if (hidden_ == 0) {
      p << out_w_, out_b_;
    } else {
      p << Eigen::Map<const Vector<Scalar>>(hidden_w_.data(), hidden_w_.size()),
          hidden_b_, out_w_, out_b_;
    }
    return p;
  }

  void set_parameters(const Vector<Scalar>& p) {
    if (p.size() != parameter_count()) {
      throw std::invalid_argument("parameter size mismatch");
    }
    if (hidden_ == 0) {
      out_w_ = p.head(dim_);
      out_b_ = p(dim_);
      return;
    }
    const Eigen::Index nw = hidden_ * dim_;
    hidden_w_ = Eigen::Map<const Matrix<Scalar>>(p.data(), hidden_, dim_);
    hidden_b_ = p.segment(nw, hidden_);
    out_w_ = p.segment(nw + hidden_, hidden_);
    out_b_ = p(p.size() - 1);
  }

 private:
  Eigen::Index dim_ = 0;
  Eigen::Index hidden_ = 0;
  Matrix<Scalar> hidden_w_;
  Vector<Scalar> hidden_b_;
  Vector<Scalar> out_w_;
  Scalar out_b_ = 0;
  Scalar learning_rate_ = Scalar(0.02);
  Scalar threshold_ = Scalar(0.5);
};

}  // namespace star

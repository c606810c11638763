#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradcheck.hpp"
#include "star/errors.hpp"

using namespace star;

TEST_CASE("sigmoid and softplus are stable") {
  CHECK(sigmoid(0.0) == doctest::Approx(0.5));
  CHECK(sigmoid(800.0) == doctest::Approx(1.0));
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(softplus(-800.0) >= 0.0);
  CHECK(softplus(800.0) == doctest::Approx(800.0));
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("updates follow the loss gradient") {
  const auto r = test::gradient_check(7);
  CHECK(r.samples == 200);
  CHECK(r.worst < 1e-4);
}

TEST_CASE("float instantiation") {
  LinearRegressor<float> lin(3, 0.1f);
  Vector<float> x(3);
  x << 1, 2, 3;
  lin.update(x, 1.0f);
  CHECK(lin.predict(x) > 0.0f);
}

TEST_CASE("repeated +1 feedback converges monotonically within 200 steps") {
  LinearRegressor<double> m(14, 0.02);
  Vector<double> x = Vector<double>::Constant(14, 0.3);
  double prev = m.predict(x);
  for (int i = 0; i < 200; ++i) {
    m.update(x, 1.0);
    const double now = m.predict(x);
    CHECK(now >= prev);
    CHECK(now <= 1.0 + 1e-12);
    prev = now;
  }
  CHECK(prev > 0.95);
}

TEST_CASE("alternating labels settle near one half") {
  LogisticClassifier<double> m(6, 0.02, 0.5);
  Vector<double> x(6);
  x << 1, -2, 0, 3, 1, 0;
  for (int i = 0; i < 2000; ++i) m.update(x, (i % 2) ? 1.0 : 0.0);
  CHECK(std::abs(m.predict(x) - 0.5) <= 0.05);
}

TEST_CASE("untrained classifier outputs exactly one half") {
  LogisticClassifier<double> lin(6, 0.02, 0.5);
  LogisticClassifier<double> deep(6, 0.02, 0.5, 8, 3);
  Vector<double> x = Vector<double>::LinSpaced(6, -3, 3);
  CHECK(lin.predict(x) == 0.5);
  CHECK(deep.predict(x) == 0.5);
  CHECK(lin.permissible(x));
  lin.set_threshold(1.0);
  CHECK_FALSE(lin.permissible(x));
}

TEST_CASE("saturating on unacceptable rejects the pattern") {
  LogisticClassifier<double> m(6, 0.02, 0.5, 8, 5);
  Vector<double> x(6);
  x << 0, 2, -1, 0, 1, 0;
  for (int i = 0; i < 2000; ++i) m.update(x, 0.0);
  CHECK_FALSE(m.permissible(x));
  CHECK(m.predict(x) < 0.05);
}

TEST_CASE("parameter round trip and validation") {
  LogisticClassifier<double> m(6, 0.02, 0.5, 4, 9);
  CHECK(m.parameter_count() == 6 * 4 + 4 + 4 + 1);
  Vector<double> p = Vector<double>::LinSpaced(m.parameter_count(), -1, 1);
  m.set_parameters(p);
  CHECK(m.parameters() == p);
  CHECK_THROWS(m.set_parameters(Vector<double>::Zero(3)));
  CHECK_THROWS(LogisticClassifier<double>(6, 0.02, 1.5));

  LogisticClassifier<double> a(6, 0.02, 0.5, 4, 9), b(6, 0.02, 0.5, 4, 9);
  CHECK(a.parameters() == b.parameters());
}

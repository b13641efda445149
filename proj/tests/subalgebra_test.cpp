#include <catch2/catch_amalgamated.hpp>

#include "sp2/subalgebra.hpp"
#include "testutil.hpp"

using namespace sp2;
using testutil::rand_lower_triangular;
using testutil::rand_rational;
using testutil::rng;

namespace {

// Rational points on the circle via the tangent half-angle substitution,
// so conjugators stay exact.
Mat2 rational_rotation(const Rational& t) {
  Scalar d(Rational(1) + t * t);
  Scalar c = Scalar(Rational(1) - t * t) / d;
  Scalar s = Scalar(2 * t) / d;
  return Mat2{c, s, Scalar(-1) * s, c};
}

// Rational points on the unit hyperbola, same trick.
Mat2 rational_boost(const Rational& t) {
  Scalar d(Rational(1) - t * t);
  Scalar c = Scalar(Rational(1) + t * t) / d;
  Scalar s = Scalar(2 * t) / d;
  return Mat2{c, s, s, c};
}

std::vector<Mat2> conjugate_all(const std::vector<Mat2>& gens, const Mat2& g) {
  Mat2 gi = g.invert();
  std::vector<Mat2> out;
  for (const auto& x : gens) out.push_back(g * x * gi);
  return out;
}

Rational small_t() {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(5, 9);
  return Rational(num(rng()), den(rng()));
}

}  // namespace

TEST_CASE("span reduction and membership") {
  Mat2Span s({Mat2::identity(), sigma4()});
  CHECK(s.dim() == 2);
  CHECK(s.contains(sigma4()));
  CHECK(s.contains(Scalar(3) * Mat2::identity() - Scalar(2) * sigma4()));
  CHECK_FALSE(s.contains(mat_B()));
  Mat2Span same({Mat2::identity() + sigma4(), Scalar(-2) * sigma4()});
  CHECK(s == same);
}

TEST_CASE("construction rejects bad generator sets") {
  // sigma3 and sigma4 + B do not close: [sigma3, B] = -B escapes.
  std::vector<Mat2> bad = {Mat2::identity() - sigma4(), sigma4() + mat_B()};
  CHECK_THROWS_AS(LieSub(3, bad), error);
  // B is not in the rotation ambient.
  CHECK_THROWS_AS(LieSub(1, {mat_B()}), error);
  CHECK_THROWS_AS(LieSub(4, {Mat2::identity()}), error);
}

TEST_CASE("classification is idempotent on canonical generators") {
  std::vector<HFamily> reps = {
      HFamily(hfam::h0_s1),
      HFamily(hfam::halpha_s1, FamParam::of(Rational(2, 3))),
      HFamily(hfam::hinf_s1),
      HFamily(hfam::h0_s2),
      HFamily(hfam::halpha_s2, FamParam::of(Rational(1, 2))),
      HFamily(hfam::hinf_s2),
      HFamily(hfam::t0),
      HFamily(hfam::h0_s3),
      HFamily(hfam::h1_s3),
      HFamily(hfam::hinf_s3),
      HFamily(hfam::hgamma0_s3, FamParam::of(Rational(-1, 3))),
      HFamily(hfam::k0_s3),
      HFamily(hfam::kinf_s3),
      HFamily(hfam::lgamma_s3, FamParam::of(Rational(5, 2))),
  };
  auto ambient_of = [](hfam t) {
    switch (t) {
      case hfam::h0_s1: case hfam::halpha_s1: case hfam::hinf_s1: return 1;
      case hfam::h0_s2: case hfam::halpha_s2: case hfam::hinf_s2: return 2;
      default: return 3;
    }
  };
  for (const auto& f : reps) {
    auto label = classify_subalgebra(LieSub(ambient_of(f.tag()), f.generators()));
    INFO(f.name());
    CHECK(label.tag == f.tag());
    if (f.has_param()) CHECK(label.param == f.param());
    CHECK(label.conjugator == Mat2::identity());
  }
}

TEST_CASE("planar labels survive rotation and reflection conjugation") {
  Mat2 reflect{Scalar(1), Scalar(0), Scalar(0), Scalar(-1)};
  for (int i = 0; i < 500; ++i) {
    Rational alpha = rand_rational(true);
    Mat2 g = rational_rotation(small_t());
    if (i % 2) g = g * reflect;
    LieSub sub(1, conjugate_all({Mat2::identity() + Scalar(alpha) * mat_J2()}, g));
    auto label = classify_subalgebra(sub);
    CHECK(label.tag == hfam::halpha_s1);
    // The reflection flips the rotation direction, so the parameter is
    // only an absolute value.
    CHECK(label.param.value == abs(alpha));
  }
  for (int i = 0; i < 500; ++i) {
    Rational alpha = rand_rational(true);
    Mat2 g = rational_boost(small_t());
    if (i % 2) g = g * reflect;
    LieSub sub(2, conjugate_all({Mat2::identity() + Scalar(alpha) * sigma5()}, g));
    auto label = classify_subalgebra(sub);
    CHECK(label.tag == hfam::halpha_s2);
    CHECK(label.param.value == abs(alpha));
  }
}

TEST_CASE("triangular labels survive lower-triangular conjugation") {
  std::vector<HFamily> reps = {
      HFamily(hfam::t0),
      HFamily(hfam::h0_s3),
      HFamily(hfam::h1_s3),
      HFamily(hfam::hinf_s3),
      HFamily(hfam::hgamma0_s3, FamParam::of(Rational(0))),
      HFamily(hfam::hgamma0_s3, FamParam::of(Rational(-7, 4))),
      HFamily(hfam::k0_s3),
      HFamily(hfam::kinf_s3),
      HFamily(hfam::lgamma_s3, FamParam::of(Rational(1, 6))),
      HFamily(hfam::lgamma_s3, FamParam::of(Rational(-1, 2))),
  };
  for (int i = 0; i < 500; ++i) {
    const HFamily& f = reps[i % reps.size()];
    Mat2 g = rand_lower_triangular();
    auto label = classify_subalgebra(LieSub(3, conjugate_all(f.generators(), g)));
    INFO(f.name() << " under " << g.str());
    CHECK(label.tag == f.tag());
    // The diagonal-ratio parameter is conjugation invariant and must come
    // back exactly, not to within tolerance.
    if (f.has_param()) CHECK(label.param == f.param());
  }
}

TEST_CASE("exponentiated label matches the input span") {
  for (int i = 0; i < 100; ++i) {
    HFamily f(hfam::lgamma_s3, FamParam::of(rand_rational()));
    Mat2 g = rand_lower_triangular();
    LieSub sub(3, conjugate_all(f.generators(), g));
    auto fam = exponentiate(classify_subalgebra(sub));
    CHECK(Mat2Span(fam.generators()) == Mat2Span(sub.basis));
  }
}

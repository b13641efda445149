#include <catch2/catch_amalgamated.hpp>

#include "sp2/parabolic.hpp"
#include "testutil.hpp"

using namespace sp2;
using testutil::rand_invertible2;
using testutil::rand_sym;

static QElement rand_q() { return QElement(rand_sym(), rand_invertible2()); }

TEST_CASE("realizations are symplectic and block triangular") {
  for (int i = 0; i < 200; ++i) {
    QElement g = rand_q();
    Mat4 m = g.realization();
    CHECK(is_symplectic(m, 0.0));
    CHECK(block(m, 0, 1) == Mat2::zero());
  }
}

TEST_CASE("semidirect group law matches matrix multiplication") {
  // The 4x4 realization is the independent oracle for the closed-form
  // composition on (sigma, h) pairs.
  for (int i = 0; i < 1000; ++i) {
    QElement g = rand_q(), k = rand_q();
    CHECK(q_compose(g, k).realization() == g.realization() * k.realization());
  }
}

TEST_CASE("closed-form inverse matches matrix inverse") {
  for (int i = 0; i < 1000; ++i) {
    QElement g = rand_q();
    CHECK(q_invert(g).realization() == g.realization().invert());
    CHECK(q_compose(g, q_invert(g)).realization() == Mat4::identity());
  }
}

TEST_CASE("membership round trip and failure modes") {
  for (int i = 0; i < 200; ++i) {
    QElement g = rand_q();
    auto back = q_member(g.realization(), 0.0);
    REQUIRE(back);
    CHECK(back->sigma() == g.sigma());
    CHECK(back->h() == g.h());
  }
  // Not block triangular: the symplectic form itself.
  CHECK_FALSE(q_member(sympl_J(), 0.0));
  CHECK_THROWS_AS(q_member_or_throw(sympl_J(), 0.0), error);
  // Not symplectic at all.
  Mat4 two = Scalar(2) * Mat4::identity();
  CHECK_FALSE(q_member(two, 0.0));
}

TEST_CASE("block decomposition factors through the unipotent radical") {
  for (int i = 0; i < 200; ++i) {
    QElement g = rand_q();
    auto [m, a, n] = langlands_split(g);
    // Floats enter through the square root of |det h|; allow rounding.
    Mat4 back = langlands_recompose(m, a, n).realization();
    CHECK((back - g.realization()).inf_norm() < 1e-12 * (1 + g.realization().inf_norm()));
    CHECK(a.lambda.sign() > 0);
    CHECK(m.h.det().abs().to_double() == Catch::Approx(1.0));
  }
}

TEST_CASE("sigma part composes by the dagger twist") {
  for (int i = 0; i < 1000; ++i) {
    QElement g = rand_q(), k = rand_q();
    QElement gk = q_compose(g, k);
    CHECK(gk.sigma() == g.sigma() + dagger(g.h(), k.sigma()));
    CHECK(gk.h() == g.h() * k.h());
  }
}

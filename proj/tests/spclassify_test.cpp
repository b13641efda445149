#include <catch2/catch_amalgamated.hpp>

#include "sp2/spclassify.hpp"
#include "testutil.hpp"

using namespace sp2;
using testutil::rand_invertible2;
using testutil::rand_lower_triangular;
using testutil::rand_scalar;
using testutil::rand_sym;

namespace {

QElement rand_borel() { return QElement(rand_sym(), rand_lower_triangular()); }

}  // namespace

TEST_CASE("weyl representatives are symplectic and distinguishable") {
  const auto& W = weyl_group();
  REQUIRE(W.size() == 8);
  std::set<std::string> names;
  for (const auto& w : W) {
    CHECK(is_symplectic(w.realization(), 0.0));
    names.insert(w.name());
    // Each representative sits in its own cell.
    CHECK(bruhat_cell(w.realization()) == w);
  }
  CHECK(names.size() == 8);
  CHECK(WeylElement{0, 0}.name() == "w0");
  CHECK(WeylElement{0, 0}.realization() == weyl_w0());
}

TEST_CASE("random double coset products return their cell") {
  for (const auto& w : weyl_group()) {
    for (int i = 0; i < 100; ++i) {
      Mat4 g = rand_borel().realization() * w.realization() * rand_borel().realization();
      INFO(w.name());
      CHECK(bruhat_cell(g) == w);
    }
  }
}

TEST_CASE("parabolic elements land in the cells inside the parabolic") {
  // The maximal parabolic is the union of the two cells whose Weyl part
  // is block diagonal; triangular h stays in the identity cell.
  for (int i = 0; i < 200; ++i) {
    QElement g(rand_sym(), rand_invertible2());
    WeylElement w = bruhat_cell(g.realization());
    CHECK(w.splus == 2);
    CHECK(block(w.realization(), 0, 1) == Mat2::zero());
  }
  for (int i = 0; i < 200; ++i) {
    WeylElement w = bruhat_cell(rand_borel().realization());
    CHECK(w.name() == "id");
  }
  CHECK_THROWS_AS(bruhat_cell(Scalar(2) * Mat4::identity()), error);
}

TEST_CASE("shift conjugation formula through the long element") {
  // w0 g(b sigma5 + c sigma3, I) w0^-1 lands back in the parabolic, with
  // the off-diagonal shift converted into a unipotent homogeneous part.
  for (int i = 0; i < 1000; ++i) {
    Scalar b = rand_scalar(), c = rand_scalar();
    SymMat2 s(c, b, Scalar(0));
    Mat4 lhs = weyl_w0() * QElement(s, Mat2::identity()).realization() * weyl_w0().invert();
    Mat2 h{Scalar(1), Scalar(0), Scalar(-1) * b, Scalar(1)};
    Mat4 rhs = QElement(SymMat2(c, Scalar(0), Scalar(0)), h).realization();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("conjugating the long element across the coordinate swap") {
  Mat2 I = Mat2::identity(), Z = Mat2::zero();
  Mat4 d5 = from_blocks(sigma5(), Z, Z, sigma5());
  Mat4 lhs = d5 * from_blocks(weyl_s0(), Scalar(-1) * weyl_s1(), weyl_s1(), weyl_s0()) * d5;
  Mat4 rhs = from_blocks(weyl_s1(), Scalar(-1) * weyl_s0(), weyl_s0(), weyl_s1());
  CHECK(lhs == rhs);
  // The swap itself is block diagonal, so this merges the two reflected
  // cells under MA conjugation.
  CHECK(block(d5, 1, 0) == Z);
  (void)I;
}

TEST_CASE("coboundary value times its argument in closed form") {
  // tau1(h) = a0 (sigma4 - dagger(h, sigma4)); multiplied by h the
  // inverse disappears and the product is rational in the entries.
  for (int i = 0; i < 1000; ++i) {
    Scalar alpha = rand_scalar(true), delta = rand_scalar(true);
    Scalar beta = rand_scalar(), a0 = rand_scalar();
    Mat2 h{alpha, Scalar(0), beta, delta};
    Mat2 lhs = a0 * (sym_sigma4() - dagger(h, sym_sigma4())).to_mat2() * h;
    Mat2 rhs = a0 * Mat2{Scalar(0), beta / (alpha * delta), beta, delta - Scalar(1) / delta};
    CHECK(lhs == rhs);
    CHECK(lhs == a0 * (sym_sigma4().to_mat2() * h - sharp(h) * sym_sigma4().to_mat2()));
  }
}

TEST_CASE("triangular conjugation of the nilpotent directions") {
  for (int i = 0; i < 1000; ++i) {
    Scalar a = rand_scalar(true), b = rand_scalar(), c = rand_scalar(true);
    Mat2 l{c, Scalar(0), b, a};
    CHECK(l * mat_B() * l.invert() == (a / c) * mat_B());
    CHECK(l * sigma4() * l.invert() == Scalar(-1) * (b / c) * mat_B() + sigma4());
  }
}

TEST_CASE("gamma dictionaries are exact involutions") {
  std::vector<Rational> gammas = {Rational(-2), Rational(-1), Rational(-1, 4),
                                  Rational(0), Rational(1, 3), Rational(1), Rational(2)};
  for (const auto& g : gammas) {
    CHECK(gamma_phi(gamma_phi(g)) == g);
    CHECK(gamma_psi(gamma_psi(g)) == g);
    // Either gamma or its image is in the fundamental interval.
    bool folded = gamma_in_unit_interval(FamParam::of(g)) ||
                  gamma_in_unit_interval(FamParam::of(gamma_phi(g)));
    CHECK(folded);
  }
  CHECK(gamma_phi(Rational(0)) == Rational(0));
  CHECK(gamma_phi(Rational(-1)) == Rational(-1));
  CHECK(gamma_psi(Rational(2)) == Rational(-3, 5));
  CHECK_THROWS_AS(gamma_phi(Rational(-1, 2)), error);
  CHECK_THROWS_AS(gamma_psi(Rational(-1, 2)), error);
}

TEST_CASE("transfer conditions fail with a transcript where they must") {
  // The unipotent-with-scaling family: the candidate shear never lies in
  // it, so the long-element route is barred.
  for (const Scalar& a0 : {Scalar(0), Scalar(1)}) {
    std::string transcript;
    auto got = crazytau_check(span_sigma3(), HFamily(hfam::h1_s3), a0, 1e-9, &transcript);
    CHECK_FALSE(got);
    CHECK(transcript.find("(crazytau) are not satisfied") != std::string::npos);
  }
  // Same family against the two-dimensional orthogonal span.
  std::string transcript;
  SymSpan s3perp({sym_sigma4(), sym_sigma5()});
  auto got = crazytau_check(s3perp, HFamily(hfam::h1_s3), Scalar(0), 1e-9, &transcript);
  CHECK_FALSE(got);
  CHECK(transcript.find("(crazytau) are not satisfied") != std::string::npos);
  CHECK_THROWS_AS(w0_conjugate(span_sigma3(), HFamily(hfam::h1_s3), Scalar(0)), error);
}

TEST_CASE("transfer conditions are stable under triangular conjugation") {
  // Conjugating by t in the triangular group preserves both hypotheses of
  // the long-element route, so success is invariant.
  for (int i = 0; i < 25; ++i) {
    Mat2 t = rand_lower_triangular();
    for (auto tag : {hfam::hinf_s3, hfam::h1_s3}) {
      HFamily fam(tag);
      SymSpan moved({dagger(t, sym_sigma3())});
      bool base = crazytau_check(span_sigma3(), fam, Scalar(0)).has_value();
      bool conj = crazytau_check(moved, fam.with_conjugator(t), Scalar(0)).has_value();
      INFO(fam.name() << " under " << t.str());
      CHECK(base == conj);
      CHECK(base == (tag == hfam::hinf_s3));
    }
  }
}

TEST_CASE("long-element conjugation of the scaling family folds gamma") {
  // Sigma3 x| H_inf goes through w0 to the diagonal family at gamma=-1/2.
  auto res = w0_conjugate(span_sigma3(), HFamily(hfam::hinf_s3), Scalar(0));
  HFamily img = identify_family(res.h_samples);
  CHECK(img.tag() == hfam::hgamma0_s3);
  CHECK(img.param().value == Rational(-1, 2));
  CHECK(res.a_prime.is_zero());
  CHECK(res.b_prime.is_zero());
  CHECK(res.sigma_prime.dim() == 1);
}

TEST_CASE("canonical line reduction in the orthogonal plane") {
  auto [t3, k3] = wcanonical_reduce(SymSpan({SymMat2(Scalar(2), Scalar(0), Scalar(0))}));
  CHECK(k3 == 3);
  CHECK(t3 == Mat2::identity());
  auto [t5, k5] = wcanonical_reduce(SymSpan({SymMat2(Scalar(3), Scalar(1), Scalar(0))}));
  CHECK(k5 == 5);
  SymMat2 img = dagger(t5, SymMat2(Scalar(3), Scalar(1), Scalar(0)));
  CHECK(img.c.is_zero());
  CHECK(img.a.is_zero());
  CHECK_THROWS_AS(wcanonical_reduce(span_sigma1()), error);
}

TEST_CASE("theorem catalog counts by dimension") {
  const auto& cat = theorem_catalog();
  REQUIRE(cat.size() == 19);
  std::map<int, int> counts;
  for (const auto& e : cat) counts[entry_dimension(e)]++;
  CHECK(counts[2] == 5);
  CHECK(counts[3] == 9);
  CHECK(counts[4] == 4);
  CHECK(counts[5] == 1);
}

namespace {

std::vector<FamParam> rep_params(const MACatalogEntry& e) {
  if (!e.parametrized) return {FamParam{}};
  if (e.alpha_param) return {FamParam::of(Rational(1, 2)), FamParam::of(Rational(2))};
  if (e.range == "[-1,0]") return {FamParam::of(Rational(-1, 3)), FamParam::of(Rational(-1))};
  return {FamParam::of(Rational(-1, 3)), FamParam::of(Rational(3))};
}

}  // namespace

TEST_CASE("classification fixes every canonical representative") {
  for (const auto& e : theorem_catalog()) {
    for (const auto& p : rep_params(e)) {
      Triple t = e.make(p);
      auto cls = sp_classify(t);
      INFO(e.str(p));
      CHECK(cls.label.id == e.id);
      if (e.parametrized) CHECK(cls.label.param == p);
      CHECK(cls.witness.residual <= 1e-9);
    }
  }
}

TEST_CASE("classification is invariant under block-diagonal conjugation") {
  int i = 0;
  for (const auto& e : theorem_catalog()) {
    for (const auto& p : rep_params(e)) {
      Triple t = e.make(p);
      Mat2 m = rand_invertible2();
      std::vector<SymMat2> conj_span;
      for (const auto& s : t.sigma.basis()) conj_span.push_back(dagger(m, s));
      Triple moved(SymSpan(conj_span), t.h.with_conjugator(m), t.tau);
      auto base = sp_classify(t);
      auto got = sp_classify(moved);
      INFO(e.str(p) << " conjugated by " << m.str());
      CHECK(got.label == base.label);
      CHECK(got.witness.residual <= 1e-9);
      ++i;
    }
  }
  CHECK(i >= 19);
}

TEST_CASE("distinct families come with a discriminating certificate") {
  Triple a = theorem_entry("(2.3)").make();
  Triple b = theorem_entry("(3.1)").make();
  auto ra = sp_classify(a), rb = sp_classify(b);
  std::string cert = non_conjugacy_certificate(a, ra, b, rb);
  CHECK(cert.find("labels differ") != std::string::npos);
  CHECK(cert.find("(2.3)") != std::string::npos);
  CHECK(cert.find("(3.1)") != std::string::npos);
}

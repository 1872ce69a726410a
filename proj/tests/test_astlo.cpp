#include "bhcone/astlo.hpp"

#include <doctest.h>

using namespace bhcone;

namespace {

const CutoffFunction& chi() {
  static const CutoffFunction c = make_smooth_step(0.5, 1.0);
  return c;
}

const CutoffFunction& f_step() {
  static const CutoffFunction c = make_smooth_step(0.05, 0.3);
  return c;
}

ConeSpeeds speeds() { return choose_epsilon(2.2, 2.0); }

}  // namespace

TEST_SUITE("astlo") {

TEST_CASE("construction preconditions") {
  const auto lat = EmbeddedLattice::chain(4);
  CHECK_THROWS(AstloFamily(enumerate_sector(4, 0), lat, Region(4, {0}), chi(), speeds()));
  CHECK_THROWS(AstloFamily(enumerate_sector(4, 2), lat, Region::none(4), chi(), speeds()));
  ConeSpeeds slow = speeds();
  slow.v_prime = slow.v_max;
  CHECK_THROWS(AstloFamily(enumerate_sector(4, 2), lat, Region(4, {0}), chi(), slow));
  const AstloFamily fam(enumerate_sector(4, 2), lat, Region(4, {0}), chi(), speeds());
  CHECK_THROWS(fam.build(0.0, 0.0));
}

TEST_CASE("translation to the ball center") {
  const auto lat = EmbeddedLattice::chain(8);
  const AstloFamily fam(enumerate_sector(8, 2), lat, Region(8, {2, 3, 4}), chi(), speeds());
  CHECK(fam.r_min() == doctest::Approx(1.0));
  CHECK(fam.radii()(3) == 0.0);
  CHECK(fam.radii()(0) == 3.0);
  CHECK(fam.radii()(7) == 4.0);
}

TEST_CASE("Mott chain reference value") {
  // X = {0}, s = 4, t = 0: sum_x chi(x/4) over x = 0..9 is 6 + chi(3/4) = 6.5
  const auto lat = EmbeddedLattice::chain(10);
  const auto sec = enumerate_sector(10, 10);
  const AstloFamily fam(sec, lat, Region(10, {0}), chi(), speeds());
  const int b = sec->index(Occupation(10, 1));
  double direct = 0.0;
  for (int x = 0; x < 10; ++x) direct += chi()(x / 4.0);
  const DiagonalObservable a = fam.build(0.0, 4.0);
  CHECK(a.values(b) == doctest::Approx(direct / 10.0).epsilon(1e-15));
  CHECK(a.values(b) == doctest::Approx(0.65).epsilon(1e-14));
}

TEST_CASE("values at the extremes and ranges") {
  const auto lat = EmbeddedLattice::chain(8);
  const auto sec = enumerate_sector(8, 3);
  const AstloFamily fam(sec, lat, Region(8, {0}), chi(), speeds());
  const double s = 2.0;
  // everyone at |x| <= s/2 gives 0, everyone at |x| >= s gives 1
  CHECK(fam.build(0.0, s).values(sec->index({3, 0, 0, 0, 0, 0, 0, 0})) == 0.0);
  CHECK(fam.build(0.0, s).values(sec->index({1, 2, 0, 0, 0, 0, 0, 0})) == 0.0);
  CHECK(fam.build(0.0, s).values(sec->index({0, 0, 1, 0, 1, 0, 0, 1})) == 1.0);
  for (double t : {0.0, 0.5, 1.5}) {
    const DiagonalObservable a = fam.build(t, s);
    CHECK(a.values.minCoeff() >= 0.0);
    CHECK(a.values.maxCoeff() <= 1.0);
    // nonincreasing in t
    CHECK((fam.build(t + 0.25, s).values - a.values).maxCoeff() <= 0.0);
  }
}

TEST_CASE("variants") {
  const auto lat = EmbeddedLattice::chain(6);
  const auto sec = enumerate_sector(6, 2);
  const AstloFamily fam(sec, lat, Region(6, {0}), chi(), speeds());
  const double t = 0.3, s = 3.0;
  const RealVector w = fam.site_weights(t, s, AstloVariant::Plain);
  const RealVector wp = fam.site_weights(t, s, AstloVariant::Prime);
  const double vp = speeds().v_prime;
  for (int x = 0; x < 6; ++x) {
    const double arg = (x - vp * t) / s;
    CHECK(w(x) == chi()(arg));
    CHECK(wp(x) == chi().derivative(1, arg));
  }
  const RealVector wt = fam.site_weights(t, s, AstloVariant::Tilde);
  const RealVector wtp = fam.site_weights(t, s, AstloVariant::TildePrime);
  for (int x = 0; x < 6; ++x) {
    CHECK(wt(x) >= 0.0);
    CHECK(wt(x) <= 1.0);
    // the tilde derivative is positive wherever chi' is
    if (wp(x) > 0) CHECK(wtp(x) > 0.0);
  }
  const DiagonalObservable prime = fam.build(t, s, AstloVariant::Prime);
  const int b = sec->index({1, 0, 0, 1, 0, 0});
  CHECK(prime.values(b) == doctest::Approx((wp(0) + wp(3)) / 2.0));
}

TEST_CASE("Phi as a function of the ASTLO") {
  const auto sec = enumerate_sector(3, 2);
  CHECK(build_phi(f_step(), DiagonalObservable{sec, RealVector::Zero(6)}).values.isZero());
  CHECK(build_phi(f_step(), DiagonalObservable{sec, RealVector::Ones(6)}).values == RealVector::Ones(6));
  const RealVector grid = RealVector::LinSpaced(101, 0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double p = f_step()(grid(i));
    const double defect = p - p * p;
    worst = std::max(worst, defect);
    if (grid(i) <= 0.05 || grid(i) >= 0.3) CHECK(defect == 0.0);
  }
  CHECK(worst <= 0.25);
}

TEST_CASE("sandwich relations at t = 0 with Y far away") {
  const auto lat = EmbeddedLattice::chain(8);
  const auto sec = enumerate_sector(8, 3);
  const Region x(8, {0, 1});
  const AstloFamily fam(sec, lat, x, chi(), speeds());
  const SandwichReport r = check_sandwich(fam, x, Region(8, {6, 7}), f_step(), Rational{1, 20}, Rational{3, 10}, 0.0, 1.0);
  CHECK(r.pass());
  CHECK(r.relations.size() == 4);
}

TEST_CASE("sandwich refuses inside the cone") {
  const auto lat = EmbeddedLattice::chain(8);
  const auto sec = enumerate_sector(8, 2);
  const Region x(8, {0, 1});
  const AstloFamily fam(sec, lat, x, chi(), speeds());
  CHECK_THROWS_AS(check_sandwich(fam, x, Region(8, {3}), f_step(), Rational{1, 20}, Rational{3, 10}, 1.0, 1.0),
                  std::domain_error);
  CHECK_THROWS(check_sandwich(fam, x, Region(8, {1, 5}), f_step(), Rational{1, 20}, Rational{3, 10}, 0.0, 1.0));
}

TEST_CASE("sandwich relations against a per-state loop") {
  const auto lat = EmbeddedLattice::chain(10);
  const auto sec = enumerate_sector(10, 2);
  const Region x(10, {0, 1}), y(10, {8, 9});
  const AstloFamily fam(sec, lat, x, chi(), speeds());
  const double dxy = 7.0, t = 2.0;
  const double s = speeds().epsilon * dxy;
  const SandwichReport r = check_sandwich(fam, x, y, f_step(), Rational{1, 20}, Rational{3, 10}, t, s);
  CHECK(r.pass());

  // independent loop: center 0.5, R_min 0.5
  bool ok = true;
  for (int b = 0; b < sec->dimension(); ++b) {
    const Occupation n = sec->state(b);
    double a0 = 0, at = 0, nxc = 0, ny = 0;
    for (int site = 0; site < 10; ++site) {
      const double radius = std::abs(site - 0.5);
      a0 += chi()((radius - 0.5) / s) * n[site];
      at += chi()((radius - 0.5 - speeds().v_prime * t) / s) * n[site];
      if (site >= 2) nxc += n[site];
      if (site >= 8) ny += n[site];
    }
    a0 /= 2;
    at /= 2;
    nxc /= 2;
    ny /= 2;
    ok = ok && nxc >= a0 - 1e-15 && ny <= at + 1e-15;
    if (nxc <= 0.05) ok = ok && f_step()(a0) == 0.0;
    if (ny >= 0.3) ok = ok && f_step()(at) == 1.0;
  }
  CHECK(ok);
  CHECK_FALSE(r.describe(*sec).empty());
}

}

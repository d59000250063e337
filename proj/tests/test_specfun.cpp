#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mvq/specfun.hpp"
#include "support/oracles.hpp"

using mvq::specfun::Order;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct BesselRef {
  int twice_nu;
  double t;
  double value;
};

// mpmath 1.3, 40 digits
constexpr BesselRef kIRef[] = {
    {0, 0.001, 1.000000250000015625},
    {0, 0.3, 1.0226268793515969911},
    {0, 1, 1.2660658777520083356},
    {0, 2, 2.2795853023360672674},
    {0, 5, 27.239871823604446895},
    {0, 12.9, 44915.941230039016322},
    {0, 13.1, 54431.299552537193472},
    {0, 15, 339649.37329791387952},
    {0, 20, 43558282.559553533272},
    {0, 35, 107338818494514.06357},
    {0, 50, 2.9325537838493363267e+20},
    {1, 0.001, 0.025231329425422680777},
    {1, 0.3, 0.44360422491882006485},
    {1, 0.5, 0.58799308679041632549},
    {1, 1, 0.93767488824548764672},
    {1, 5, 26.477547497559065205},
    {1, 15, 336729.88718706407554},
    {1, 50, 2.925156852991290042e+20},
    {2, 0.001, 0.00050000006250000260417},
    {2, 0.5, 0.25789430539089631636},
    {2, 1, 0.56515910399248502721},
    {2, 2, 1.5906368546373290634},
    {2, 12.9, 43138.277415294287099},
    {2, 15, 328124.92197020639673},
    {2, 50, 2.9030785901035567968e+20},
    {3, 0.001, 8.4104425811114042048e-6},
    {3, 0.3, 0.044096521002522979114},
    {3, 1, 0.29352532634747979979},
    {3, 5, 21.184442264794137679},
    {3, 20, 41115758.958807482034},
    {3, 50, 2.8666537159314642411e+20},
    {4, 0.001, 1.2500001041666699219e-7},
    {4, 0.5, 0.031906149177738253813},
    {4, 2, 0.68894844769873820405},
    {4, 13.1, 46444.938993016300962},
    {4, 35, 101293439862977.13408},
    {5, 0.001, 1.6820884681626110849e-9},
    {5, 0.3, 0.002639014893590273704},
    {5, 1, 0.057098909203048247351},
    {5, 5, 13.766882138682582598},
    {5, 15, 273873.64157879951081},
    {5, 50, 2.7531576300354021875e+20},
};

constexpr BesselRef kJRef[] = {
    {0, 0.001, 0.999999750000015625},
    {0, 0.3, 0.97762624653829608757},
    {0, 1, 0.76519768655796655145},
    {0, 2, 0.22389077914123566805},
    {0, 5, -0.17759677131433830435},
    {0, 12.9, 0.19884243713633095419},
    {0, 13.1, 0.21288819752206038005},
    {0, 15, -0.014224472826780773234},
    {0, 20, 0.16702466434058315473},
    {0, 35, -0.12684568275631256981},
    {0, 50, 0.055812327669251815005},
    {1, 0.001, 0.02523132101498094071},
    {1, 0.3, 0.43049351732812456502},
    {1, 0.5, 0.54097378993452809133},
    {1, 1, 0.67139670714180309042},
    {1, 5, -0.34216798479816180976},
    {1, 15, 0.13396768882243934618},
    {1, 50, -0.029605831888924612568},
    {2, 0.001, 0.00049999993750000260417},
    {2, 0.5, 0.24226845767487388638},
    {2, 1, 0.44005058574493351596},
    {2, 2, 0.5767248077568733872},
    {2, 12.9, -0.091248252249939444372},
    {2, 13.1, -0.048852473334223706753},
    {2, 15, 0.20510403861352276115},
    {2, 35, 0.04399094217962563997},
    {2, 50, -0.097511828125175137661},
    {3, 0.001, 8.4104408990230561914e-6},
    {3, 0.3, 0.043309881918378323272},
    {3, 1, 0.2402978391234270109},
    {3, 5, -0.16965130614474076152},
    {3, 20, -0.064662866592310355005},
    {3, 50, -0.10947687298831803539},
    {4, 0.001, 1.2499998958333365885e-7},
    {4, 0.5, 0.030604023458682641307},
    {4, 2, 0.35283402861563771915},
    {4, 12.9, -0.21298945298903474401},
    {4, 13.1, -0.22034659039751438108},
    {4, 15, 0.04157167797525047472},
    {4, 35, 0.12935945088086260638},
    {5, 0.001, 1.6820882278642756544e-9},
    {5, 0.5, 0.0092364078193797244999},
    {5, 1, 0.049496810228477942271},
    {5, 5, 0.24037720111131735285},
    {5, 15, -0.10088034979001177408},
    {5, 20, -0.17258019384387642416},
    {5, 50, 0.023037219509625530445},
};

}  // namespace

TEST_CASE("gamma at integer and half-integer arguments", "[specfun]") {
  CHECK(mvq::specfun::gamma(1.0) == 1.0);
  CHECK(mvq::specfun::gamma(3.0) == 2.0);
  CHECK(mvq::specfun::gamma(6.0) == 120.0);
  CHECK_THAT(mvq::specfun::gamma(0.5), WithinRel(1.7724538509055160273, 1e-14));
  CHECK_THAT(mvq::specfun::gamma(2.5), WithinRel(1.3293403881791370205, 1e-14));
  CHECK_THAT(mvq::specfun::gamma(30.5), WithinRel(std::tgamma(30.5), 1e-13));
  // defining-integral oracle
  CHECK_THAT(mvq::specfun::gamma(0.5), WithinAbs(oracle::gamma_half_by_integration(), 1e-12));
  CHECK_THROWS_AS(mvq::specfun::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(mvq::specfun::gamma(-2.0), std::domain_error);
}

TEST_CASE("unit sphere areas", "[specfun]") {
  const double pi = oracle::kPi;
  CHECK_THAT(mvq::specfun::unit_sphere_area(2), WithinRel(2.0 * pi, 1e-14));
  CHECK_THAT(mvq::specfun::unit_sphere_area(3), WithinRel(4.0 * pi, 1e-14));
  CHECK_THAT(mvq::specfun::unit_sphere_area(4), WithinRel(2.0 * pi * pi, 1e-14));
  CHECK_THAT(mvq::specfun::unit_sphere_area(5), WithinRel(8.0 * pi * pi / 3.0, 1e-14));
  CHECK_THROWS_AS(mvq::specfun::unit_sphere_area(1), std::out_of_range);
  CHECK_THROWS_AS(mvq::specfun::unit_sphere_area(6), std::out_of_range);
}

TEST_CASE("unit sphere area m=4 Monte Carlo cross-check", "[specfun]") {
  // volume fraction of the unit 4-ball in [-1,1]^4, area = m * volume
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 400000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double v = u(rng);
      s += v * v;
    }
    if (s <= 1.0) ++inside;
  }
  const double volume = 16.0 * inside / n;
  CHECK_THAT(mvq::specfun::unit_sphere_area(4), WithinRel(4.0 * volume, 0.02));
}

TEST_CASE("modified Bessel table", "[specfun]") {
  for (const auto& ref : kIRef) {
    INFO("I twice_nu=" << ref.twice_nu << " t=" << ref.t);
    CHECK_THAT(mvq::specfun::bessel_i(Order(ref.twice_nu), ref.t),
               WithinRel(ref.value, 1e-12));
  }
  CHECK(mvq::specfun::bessel_i(Order(0), 0.0) == 1.0);
  CHECK(mvq::specfun::bessel_i(Order(1), 0.0) == 0.0);
}

TEST_CASE("Bessel J table", "[specfun]") {
  for (const auto& ref : kJRef) {
    INFO("J twice_nu=" << ref.twice_nu << " t=" << ref.t);
    CHECK_THAT(mvq::specfun::bessel_j(Order(ref.twice_nu), ref.t),
               WithinRel(ref.value, 1e-12));
  }
  CHECK(mvq::specfun::bessel_j(Order(0), 0.0) == 1.0);
  // half-integer closed form: J_{1/2}(pi) = 0
  CHECK_THAT(mvq::specfun::bessel_j(Order(1), oracle::kPi), WithinAbs(0.0, 1e-12));
  // first J0 zero from the spec table
  CHECK_THAT(mvq::specfun::bessel_j(Order(0), 2.404825557695773), WithinAbs(0.0, 1e-12));
}

TEST_CASE("Bessel series agrees with the independent long-double series", "[specfun]") {
  for (const double t : {0.05, 0.4, 1.3, 3.7, 6.5}) {
    for (const int tn : {0, 1, 2, 3, 4, 5}) {
      const double nu = 0.5 * tn;
      const double g = mvq::specfun::gamma(nu + 1.0);
      INFO("twice_nu=" << tn << " t=" << t);
      CHECK_THAT(mvq::specfun::bessel_i(Order(tn), t),
                 WithinRel(oracle::bessel_series(nu, t, true, g), 1e-12));
      CHECK_THAT(mvq::specfun::bessel_j(Order(tn), t),
                 WithinAbs(oracle::bessel_series(nu, t, false, g),
                           1e-13 * std::max(1.0, std::abs(oracle::bessel_series(nu, t, false, g)))));
    }
  }
}

TEST_CASE("first positive zeros", "[specfun]") {
  CHECK_THAT(mvq::specfun::bessel_j_first_zero(Order(0)),
             WithinAbs(2.4048255576957727686, 1e-10));
  CHECK_THAT(mvq::specfun::bessel_j_first_zero(Order(1)), WithinAbs(oracle::kPi, 1e-10));
  CHECK_THAT(mvq::specfun::bessel_j_first_zero(Order(2)),
             WithinAbs(3.8317059702075123156, 1e-10));
  CHECK_THAT(mvq::specfun::bessel_j_first_zero(Order(3)),
             WithinAbs(4.4934094579090641753, 1e-10));
  for (const int tn : {0, 1, 2, 3}) {
    const double z = mvq::specfun::bessel_j_first_zero(Order(tn));
    CHECK_THAT(mvq::specfun::bessel_j(Order(tn), z), WithinAbs(0.0, 1e-10));
    // J_nu stays positive up to the first zero
    for (double t = 0.05; t < z - 1e-3; t += 0.05)
      CHECK(mvq::specfun::bessel_j(Order(tn), t) > 0.0);
  }
  CHECK_THROWS_AS(mvq::specfun::bessel_j_first_zero(Order(4)), std::domain_error);
}

TEST_CASE("I is positive and strictly increasing on (0, 50]", "[specfun]") {
  for (const int tn : {0, 1, 2, 3, 4, 5}) {
    double prev = mvq::specfun::bessel_i(Order(tn), 0.01);
    CHECK(prev > 0.0);
    for (double t = 0.11; t <= 50.0; t += 0.1) {
      const double cur = mvq::specfun::bessel_i(Order(tn), std::min(t, 50.0));
      INFO("twice_nu=" << tn << " t=" << t);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("I recurrence residual", "[specfun]") {
  // I_{nu-1}(t) - I_{nu+1}(t) = (2 nu / t) I_nu(t); orders with both
  // neighbours inside the supported range
  for (const int tn : {2, 3}) {
    const double nu = 0.5 * tn;
    for (double t = 0.1; t <= 40.0; t += 0.5) {
      const double lo = mvq::specfun::bessel_i(Order(tn - 2), t);
      const double mid = mvq::specfun::bessel_i(Order(tn), t);
      const double hi = mvq::specfun::bessel_i(Order(tn + 2), t);
      INFO("twice_nu=" << tn << " t=" << t);
      CHECK(std::abs(lo - hi - 2.0 * nu / t * mid) <= 1e-10 * lo);
    }
  }
}

TEST_CASE("derivative identity d/dt [t I1 - I0 + 1] = t (I2 + I0) / 2", "[specfun]") {
  const auto g = [](double t) {
    return t * mvq::specfun::bessel_i(Order(2), t) - mvq::specfun::bessel_i(Order(0), t) + 1.0;
  };
  const double h = 1e-5;
  for (const double t : {0.5, 1.0, 2.5, 5.0, 10.0, 20.0}) {
    const double fd = (g(t + h) - g(t - h)) / (2.0 * h);
    const double rhs = t *
                       (mvq::specfun::bessel_i(Order(4), t) + mvq::specfun::bessel_i(Order(0), t)) /
                       2.0;
    INFO("t=" << t);
    CHECK(std::abs(fd - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("domain guards", "[specfun]") {
  CHECK_THROWS_AS(Order(6), std::domain_error);
  CHECK_THROWS_AS(Order(-1), std::domain_error);
  CHECK_THROWS_AS(mvq::specfun::bessel_i(Order(0), -0.5), std::out_of_range);
  CHECK_THROWS_AS(mvq::specfun::bessel_i(Order(0), 50.5), std::out_of_range);
  CHECK_THROWS_AS(mvq::specfun::bessel_j(Order(1), 51.0), std::out_of_range);
}

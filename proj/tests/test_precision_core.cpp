#include "slg/complex.hpp"
#include "slg/precision.hpp"
#include "slg/sector.hpp"
#include "test_util.hpp"

#include <catch_amalgamated.hpp>

using namespace slg;
using slg::test::close;

TEST_CASE("precision context guard digits", "[precision]") {
  PrecisionContext a(30);
  CHECK(a.guard_digits() == 15);
  CHECK(a.working_digits() == 45);
  PrecisionContext b(200);
  CHECK(b.guard_digits() == 40);
  CHECK(b.working_digits() >= b.target_digits() + 10);
  CHECK_THROWS_AS(PrecisionContext(30, 5), std::invalid_argument);
  CHECK_THROWS_AS(PrecisionContext(0), std::invalid_argument);
  CHECK(a.boosted(7).working_digits() == 52);
}

TEST_CASE("scoped precision restores the previous default", "[precision]") {
  ScopedPrecision outer(40);
  {
    ScopedPrecision inner(PrecisionContext(60));
    CHECK(current_digits() == 75);
    Real x = 1;
    CHECK(x.precision() == 75u);
  }
  CHECK(current_digits() == 40);
}

TEST_CASE("constants at working precision", "[precision]") {
  ScopedPrecision sp(60);
  Real p = pi();
  CHECK(abs(p - Real("3.14159265358979323846264338327950288419716939937510582097494")) < pow10(-58));
  CHECK(abs(euler_gamma() - Real("0.577215664901532860606512090082402431042159335939923598805767")) < pow10(-58));
  CHECK(abs(pow10(-3) - Real("0.001")) < pow10(-62));
  CHECK(rounded(p, 20).precision() == 20u);
}

TEST_CASE("complex arithmetic", "[complex]") {
  ScopedPrecision sp(40);
  HPComplex a(Real(3), Real(4)), b(Real(1), Real(-2));
  CHECK(abs(a) == 5);
  HPComplex q = a / b;
  CHECK(close(q * b, a, pow10(-38)));
  HPComplex r = sqrt(HPComplex(Real(-4), Real(0)));
  CHECK(close(r, HPComplex(Real(0), Real(2)), pow10(-38)));
  CHECK(close(pow(a, 3L), a * a * a, pow10(-38)));
  CHECK(close(exp(log(a)), a, pow10(-38)));
  CHECK_THROWS_AS(log(HPComplex()), DomainError);
  CHECK_THROWS_AS(a / HPComplex(), DomainError);
  HPComplex p = parse_complex("1.5,-2");
  CHECK(p.re == Real("1.5"));
  CHECK(p.im == -2);
}

TEST_CASE("log_branch", "[complex]") {
  ScopedPrecision sp(40);
  const Real p = pi();
  CHECK(close(log_branch(HPComplex(1), 0), HPComplex(), pow10(-38)));
  CHECK(close(log_branch(HPComplex(-1), 0), HPComplex(Real(0), p), pow10(-38)));
  CHECK(close(log_branch(HPComplex(-1), 1), HPComplex(Real(0), 3 * p), pow10(-38)));
  CHECK_THROWS_AS(log_branch(HPComplex(), 0), DomainError);
  for (long k = -3; k <= 3; ++k) {
    HPComplex z(Real("-0.7"), Real("2.25"));
    CHECK(close(exp(log_branch(z, k)), z, pow10(-37)));
  }
}

TEST_CASE("pow_polar uses the unwound phase", "[complex]") {
  ScopedPrecision sp(40);
  const Real p = pi();
  CHECK(close(pow_polar(PolarPoint(Real(1), 2 * p), HPComplex(Real(1) / 2)), HPComplex(-1), pow10(-37)));
  Real e = exp(Real(1));
  CHECK(close(pow_polar(PolarPoint(e, Real(0)), HPComplex(Real(0), Real(1))), HPComplex(cos(Real(1)), sin(Real(1))),
              pow10(-37)));
  // repeated multiplication oracle
  PolarPoint z(Real(3), p * Real("0.6"));
  HPComplex zc = z.to_cartesian();
  HPComplex inv2 = HPComplex(1) / (zc * zc);
  CHECK(close(pow_polar(z, HPComplex(-2)), inv2, pow10(-37)));
  CHECK(close(inv2, expi(-Real("1.2") * p) / Real(9), pow10(-37)));
  // multiplicativity in the exponent
  HPComplex a(Real("0.3"), Real("-1.1")), b(Real("-2.5"), Real("0.4"));
  PolarPoint w(Real("1.7"), Real("7.9"));
  CHECK(close(pow_polar(w, a) * pow_polar(w, b), pow_polar(w, a + b), pow10(-37)));
}

TEST_CASE("polar points", "[complex]") {
  ScopedPrecision sp(40);
  CHECK_THROWS_AS(PolarPoint(Real(0), Real(1)), DomainError);
  PolarPoint z = PolarPoint::from(HPComplex(Real(-2), Real(0)));
  CHECK(close(z.theta, pi(), pow10(-38)));
  CHECK(z.conjugate().theta == -z.theta);
  PolarPoint w(Real(2), Real(7));
  HPComplex c = w.to_cartesian();
  Real diff = arg(c) - w.theta;
  Real turns = diff / (2 * pi());
  CHECK(abs(turns - round(turns)) < pow10(-36));
}

TEST_CASE("sector_locate", "[sector]") {
  ScopedPrecision sp(45);
  const Real p = pi();
  SectorLocation a = sector_locate(Real(0), Real(2), pow10(-20));
  CHECK(a.M == 0);
  CHECK_FALSE(a.on_line);
  SectorLocation b = sector_locate(p / 2, Real(2), pow10(-40));
  CHECK(b.M == 0);
  CHECK(b.on_line);
  SectorLocation c = sector_locate(p * Real("0.51"), Real(2), pow10(-20));
  CHECK(c.M == 1);
  CHECK(c.side == RotationSide::upper);
  CHECK_FALSE(c.on_line);
  SectorLocation d = sector_locate(-p * Real("1.5"), Real(2), pow10(-20));
  CHECK(d.M == 1);
  CHECK(d.on_line);
  CHECK(d.side == RotationSide::lower);
  SectorLocation e = sector_locate(-p * Real("2.2"), Real(1), pow10(-20));
  CHECK(e.M == 1);
  CHECK(e.side == RotationSide::lower);
  CHECK_THROWS_AS(sector_locate(Real(0), Real(0), pow10(-20)), std::invalid_argument);

  // Locally constant away from the lines.
  const Real tol = pow10(-20);
  for (int i = -40; i <= 40; ++i) {
    Real th = p * Real(i) / 13 + Real("0.001");
    SectorLocation base = sector_locate(th, Real("1.5"), tol);
    if (base.on_line) continue;
    CHECK(sector_locate(th + tol / 3, Real("1.5"), tol) == base);
    CHECK(sector_locate(th - tol / 3, Real("1.5"), tol) == base);
  }
}

TEST_CASE("line distance and default tolerance", "[sector]") {
  PrecisionContext ctx(30);
  ScopedPrecision sp(ctx);
  const Real p = pi();
  CHECK(default_line_tolerance(ctx) == pow10(-22));
  CHECK(abs(line_distance(p * Real("0.51"), Real(2)) - p / 100) < pow10(-40));
  CHECK(abs(line_distance(-p * Real("1.45"), Real(2)) - p / 20) < pow10(-40));
  CHECK(line_distance(p * Real("0.50001"), Real(2)) <= near_line_threshold());
  CHECK(line_distance(p * Real("0.5001"), Real(2)) > near_line_threshold());
}

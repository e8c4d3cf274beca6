#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "pullin/bifurcation.hpp"
#include "pullin/errors.hpp"

using namespace pullin;
using testing::graphene_device;

namespace {

// Independent threshold oracle: bisection on K over the predicate "h_cubic
// dips to zero somewhere in (0,1)", with the minimum located by a coarse
// scan plus ternary refinement. Shares no code path with kappa().
double min_h_on_unit_interval(const OscParams& q) {
    const int n = 2000;
    int best = 1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) {
        const double v = h_cubic(static_cast<double>(i) / n, q);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = static_cast<double>(best - 1) / n;
    double hi = static_cast<double>(best + 1) / n;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (h_cubic(m1, q) < h_cubic(m2, q))
            hi = m2;
        else
            lo = m1;
    }
    return h_cubic(0.5 * (lo + hi), q);
}

double kappa_oracle(double alpha) {
    double klo = 0.0, khi = 0.5; // min h < 0 at K=0, > 0 at K=0.5
    for (int it = 0; it < 60; ++it) {
        const double kmid = 0.5 * (klo + khi);
        if (min_h_on_unit_interval({alpha, kmid}) > 0.0)
            khi = kmid;
        else
            klo = kmid;
    }
    return 0.5 * (klo + khi);
}

} // namespace

TEST_CASE("kappa: linear limit and frozen reference values") {
    CHECK(kappa(0.0) == 0.125); // exact, by construction of the stable form
    CHECK(std::abs(kappa(1e-6) - 0.125) < 1e-6);

    CHECK(kappa(0.03) == doctest::Approx(0.1237531564046422105843).epsilon(1e-14));
    CHECK(kappa(0.1) == doctest::Approx(0.1208692315468233689318).epsilon(1e-14));
    CHECK(kappa(0.5) == doctest::Approx(0.1051883849068164707841).epsilon(1e-14));
    CHECK(kappa(1.0) == doctest::Approx(0.08802549128843251275775).epsilon(1e-14));
    CHECK(kappa(10.0) == doctest::Approx(0.0173721620556179665931).epsilon(1e-14));

    CHECK_THROWS_AS(kappa(-1e-9), std::domain_error);
    CHECK_THROWS_AS(kappa(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("kappa agrees with the bisection oracle and decreases in alpha") {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 25; ++i) {
        const double alpha = std::pow(10.0, -3.0 + 4.0 * i / 24.0); // 1e-3 .. 10
        const double k = kappa(alpha);
        CHECK(std::abs(k - kappa_oracle(alpha)) < 1e-9);
        CHECK(k < prev);
        CHECK(k < static_pull_in_reference());
        prev = k;
    }
}

TEST_CASE("critical point s1: closed form against the cubic itself") {
    CHECK(critical_point_s1(0.0) == 0.5);
    CHECK(critical_point_s1(1.0) == doctest::Approx(0.3923747814892349015831).epsilon(1e-14));
    CHECK(critical_point_s1(1e-8) == doctest::Approx(0.4999999991666666638889).epsilon(1e-14));
    CHECK_THROWS_AS(critical_point_s1(-0.5), std::domain_error);

    testing::Uniform u(424243);
    for (int i = 0; i < 200; ++i) {
        const double alpha = u.in(0.0, 12.0);
        const double s1 = critical_point_s1(alpha);
        CHECK(s1 > 0.0);
        CHECK(s1 <= 0.5);
        const double c3 = (2.0 / 3.0) * alpha;
        const double dh = -3.0 * c3 * s1 * s1 + 2.0 * (c3 + 1.0) * s1 - 1.0;
        const double ddh = -6.0 * c3 * s1 + 2.0 * (c3 + 1.0);
        CHECK(std::abs(dh) < 1e-12); // stationary point of h
        CHECK(ddh > 0.0);            // and a minimum
    }
}

TEST_CASE("amplitude: frozen values and the linear-spring closed form") {
    CHECK(amplitude_x_max({0.0, 0.1})
          == doctest::Approx(0.2763932022500210303591).epsilon(1e-13));
    CHECK(amplitude_x_max({0.1, 0.1})
          == doctest::Approx(0.2852370677988235143452).epsilon(1e-13));
    CHECK(amplitude_x_max({1.0, 0.05})
          == doctest::Approx(0.1245766843310504614366).epsilon(1e-13));

    for (const double K : {0.03125, 0.0625, 0.1, 0.124}) {
        const double closed = 0.5 - 0.5 * std::sqrt(1.0 - 8.0 * K);
        CHECK(std::abs(amplitude_x_max({0.0, K}) - closed) < 1e-12);
    }
}

TEST_CASE("amplitude: boundary, regime errors, monotonicity, root property") {
    // K exactly on the threshold: the root is double and sits at s1
    CHECK(amplitude_x_max({1.0, kappa(1.0)}) == critical_point_s1(1.0));

    CHECK_THROWS_AS(amplitude_x_max({0.0, 0.0}), RestError);
    CHECK_THROWS_AS(amplitude_x_max({0.0, 0.126}), RegimeError);
    CHECK_THROWS_AS(amplitude_x_max({1.0, 0.09}), RegimeError);
    CHECK_THROWS_AS(amplitude_x_max({-1.0, 0.05}), std::domain_error);

    testing::Uniform u(160423);
    for (int i = 0; i < 100; ++i) {
        const double alpha = u.in(0.0, 10.0);
        const double k = kappa(alpha);
        const double K = u.in(1e-4, 0.999) * k;
        const OscParams q{alpha, K};
        const double xm = amplitude_x_max(q);
        CHECK(xm > 0.0);
        CHECK(xm <= critical_point_s1(alpha));
        CHECK(std::abs(h_cubic(xm, q)) < 1e-12); // it is a root of h
        // growing forcing grows the amplitude
        const double xm2 = amplitude_x_max({alpha, K * 1.01 < k ? K * 1.01 : 0.5 * (K + k)});
        CHECK(xm2 > xm);
    }
}

TEST_CASE("classify: the three regimes and the exact boundary") {
    CHECK(classify({0.0, 0.0}).kind == RegimeKind::Rest);
    CHECK(classify({0.0, 0.124}).kind == RegimeKind::Periodic);
    CHECK(classify({0.0, 0.126}).kind == RegimeKind::PullIn);

    CHECK(classify({0.0, 0.124}).margin == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(classify({0.0, 0.126}).margin == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(classify({0.3, 0.0}).margin == kappa(0.3));

    CHECK(classify({0.0, 0.124}).x_max.has_value());
    CHECK(!classify({0.0, 0.126}).x_max.has_value());
    CHECK(!classify({0.0, 0.0}).x_max.has_value());

    // the comparison against the threshold is exact: one ulp decides
    for (const double alpha : {0.0, 0.4, 2.0}) {
        const double k = kappa(alpha);
        CHECK(classify({alpha, k}).kind == RegimeKind::Periodic);
        const double above = std::nextafter(k, 1.0);
        CHECK(classify({alpha, above}).kind == RegimeKind::PullIn);
        CHECK(classify({alpha, above}).margin == above - k);
    }

    CHECK_THROWS_AS(classify({-1.0, 0.1}), std::domain_error);
    CHECK_THROWS_AS(classify({0.1, -0.1}), std::domain_error);
}

TEST_CASE("pull-in voltage: frozen values for the reference device") {
    CHECK(pull_in_voltage(graphene_device())
          == doctest::Approx(33.81239419031728354771).epsilon(1e-13));

    DeviceParams lin = graphene_device();
    lin.D = 0.0;
    lin.sigma_max = std::numeric_limits<double>::quiet_NaN();
    CHECK(pull_in_voltage(lin)
          == doctest::Approx(34.38531834091592921391).epsilon(1e-13));
}

TEST_CASE("pull-in voltage: biasing at the threshold reproduces K = kappa") {
    auto round_trip = [](DeviceParams p) {
        p.V_dc = pull_in_voltage(p);
        const OscParams q = nondimensionalize(p).params;
        CHECK(q.K == doctest::Approx(kappa(q.alpha)).epsilon(1e-12));
    };
    round_trip(graphene_device());

    DeviceParams lin = graphene_device();
    lin.D = 0.0;
    round_trip(lin);

    DeviceParams by_sigma = graphene_device();
    by_sigma.D = std::numeric_limits<double>::quiet_NaN();
    by_sigma.sigma_max = 2.5e11;
    round_trip(by_sigma);
}

TEST_CASE("pull-in voltage scales as gap^(3/2) at fixed alpha") {
    DeviceParams p = graphene_device();
    const double v1 = pull_in_voltage(p);
    p.d *= 4.0;
    p.D /= 4.0; // keeps alpha = D*d/(E*L) unchanged
    p.sigma_max = std::numeric_limits<double>::quiet_NaN();
    const double v2 = pull_in_voltage(p);
    CHECK(v2 == doctest::Approx(8.0 * v1).epsilon(1e-13));
}

TEST_CASE("static reference sits above the dynamic threshold") {
    CHECK(static_pull_in_reference() == 4.0 / 27.0);
    CHECK(kappa(0.0) < static_pull_in_reference());
    CHECK(kappa(1.0) < static_pull_in_reference());
}

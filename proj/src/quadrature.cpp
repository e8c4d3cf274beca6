#include "pullin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "pullin/bifurcation.hpp"
#include "pullin/errors.hpp"

namespace pullin {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (classical
// QUADPACK constants). xgk holds the nonnegative abscissae; the odd-index
// entries are the Gauss nodes.
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
    double a, b;
    double integral;
    double err;
};

struct PanelOrder {
    bool operator()(const Panel& p, const Panel& q) const { return p.err < q.err; }
};

using Integrand = std::function<double(double)>;

Panel evaluate_panel(const Integrand& f, double a, double b, long& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto sample = [&](double x) {
        const double y = f(x);
        ++evaluations;
        if (!std::isfinite(y)) throw std::domain_error("integrand returned a non-finite value");
        return y;
    };

    double flo[8], fhi[8];
    const double fc = sample(center);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    double resabs = wgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        flo[j] = sample(center - dx);
        fhi[j] = sample(center + dx);
        const double fsum = flo[j] + fhi[j];
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
        resabs += wgk[j] * (std::abs(flo[j]) + std::abs(fhi[j]));
    }

    // Scaled deviation from the mean value; damps the raw |K15-G7| estimate
    // the standard way so smooth panels are not reported pessimistically.
    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(flo[j] - reskh) + std::abs(fhi[j] - reskh));

    double err = std::abs((resk - resg) * half);
    resasc *= half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    err = std::max(err, eps50 * resabs * half);

    return {a, b, resk * half, err};
}

QuadResult adaptive_gk15(const Integrand& f, double a, double b, double tol) {
    constexpr int max_panels = 4000;
    const double min_width = 8.0 * std::numeric_limits<double>::epsilon()
                           * std::max({std::abs(a), std::abs(b), 1.0});

    long evaluations = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    Panel whole = evaluate_panel(f, a, b, evaluations);
    double total = whole.integral;
    double total_err = whole.err;
    heap.push(whole);

    int panels = 1;
    while (total_err > tol) {
        const Panel worst = heap.top();
        if (worst.b - worst.a <= min_width || panels >= max_panels)
            throw NoConvergenceError("endpoint-singular quadrature stalled before reaching tolerance");
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = evaluate_panel(f, worst.a, mid, evaluations);
        const Panel right = evaluate_panel(f, mid, worst.b, evaluations);
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    return {total, total_err, evaluations};
}

QuadResult combine(const QuadResult& a, const QuadResult& b) {
    return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate,
            a.evaluations + b.evaluations};
}

void check_interval(double a, double b, double tol) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw std::domain_error("integration interval must satisfy a < b");
    if (!(std::isfinite(tol) && tol > 0.0))
        throw std::domain_error("tolerance must be positive");
}

void check_pair(const OscParams& q) {
    if (!(std::isfinite(q.alpha) && q.alpha >= 0.0))
        throw std::domain_error("alpha must be >= 0");
    if (!(std::isfinite(q.K) && q.K >= 0.0))
        throw std::domain_error("K must be >= 0");
}

} // namespace

QuadResult integrate_endpoint_singular(const Integrand& g, double a, double b,
                                       bool singular_at_a, bool singular_at_b,
                                       double tol) {
    check_interval(a, b, tol);

    if (singular_at_a && singular_at_b) {
        const double mid = 0.5 * (a + b);
        return combine(integrate_endpoint_singular(g, a, mid, true, false, 0.5 * tol),
                       integrate_endpoint_singular(g, mid, b, false, true, 0.5 * tol));
    }
    if (singular_at_a) {
        auto w = [&g, a](double u) { return 2.0 * u * g(a + u * u); };
        return adaptive_gk15(w, 0.0, std::sqrt(b - a), tol);
    }
    if (singular_at_b) {
        auto w = [&g, b](double u) { return 2.0 * u * g(b - u * u); };
        return adaptive_gk15(w, 0.0, std::sqrt(b - a), tol);
    }
    return adaptive_gk15(g, a, b, tol);
}

double pull_in_time(const OscParams& q, double tol) {
    check_pair(q);
    if (!(std::isfinite(tol) && tol > 0.0))
        throw std::domain_error("tolerance must be positive");
    if (q.K <= kappa(q.alpha))
        throw RegimeError("K at or below threshold: motion is bounded, no pull-in time");

    // dt = ds/sqrt(f), f = s*h(s)/(1-s). The substitutions s = u^2 and
    // s = 1 - u^2 cancel the sqrt(s) pole and the sqrt(1-s) zero
    // algebraically, leaving smooth, cancellation-free integrands.
    auto left = [&q](double u) {
        const double s = u * u;
        return 2.0 * std::sqrt((1.0 - s) / h_cubic(s, q));
    };
    auto right = [&q](double u) {
        const double s = 1.0 - u * u;
        return 2.0 * u * u / std::sqrt(s * h_cubic(s, q));
    };
    const double split = std::sqrt(0.5);
    const QuadResult r = combine(adaptive_gk15(left, 0.0, split, 0.5 * tol),
                                 adaptive_gk15(right, 0.0, split, 0.5 * tol));
    return r.value;
}

double period(const OscParams& q, double tol) {
    check_pair(q);
    if (!(std::isfinite(tol) && tol > 0.0))
        throw std::domain_error("tolerance must be positive");
    if (q.K == 0.0) throw RestError("K = 0: motion is at rest, no period");
    const double k = kappa(q.alpha);
    if (q.K > k) throw RegimeError("K above threshold: motion pulls in, no period");
    if (k - q.K < 1e-12)
        throw DivergentPeriodError("K at the threshold: boundary orbit, period diverges");

    const double xm = amplitude_x_max(q);

    // Deflate h by its smallest root: h(s) = (xm - s) * (q2*s^2 + q1*s + q0),
    // synthetic division against the computed root. The quotient is positive
    // on [0, xm] and equals -h'(xm) at the amplitude, which encodes the
    // strength of the simple-root singularity.
    const double c3 = -(2.0 / 3.0) * q.alpha;
    const double c2 = (2.0 / 3.0) * q.alpha + 1.0;
    const double b2 = c3;
    const double b1 = c2 + xm * b2;
    const double b0 = -1.0 + xm * b1;
    auto quotient = [b2, b1, b0](double s) { return -(b0 + s * (b1 + s * b2)); };

    // T = int_0^xm 2 ds / sqrt(s*(xm-s)*quotient(s)/(1-s)); with s = u^2 on
    // the left half and s = xm - u^2 on the right, the singular factors
    // reduce to exactly u^2 and drop out of the evaluated expression.
    auto left = [&quotient, xm](double u) {
        const double s = u * u;
        return 4.0 * std::sqrt((1.0 - s) / ((xm - s) * quotient(s)));
    };
    auto right = [&quotient, xm](double u) {
        const double s = xm - u * u;
        return 4.0 * std::sqrt((1.0 - s) / (s * quotient(s)));
    };
    const double split = std::sqrt(0.5 * xm);
    const QuadResult r = combine(adaptive_gk15(left, 0.0, split, 0.5 * tol),
                                 adaptive_gk15(right, 0.0, split, 0.5 * tol));
    return r.value;
}

} // namespace pullin

#include "wasep/field_theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wasep/errors.hpp"
#include "wasep/special.hpp"

namespace wasep {

namespace {

using Weights = std::array<double, 4>;  // indexed by 2 p + q

// Gaussian tails beyond this many standard deviations are dropped.
constexpr double kTailCut = 12.0;

// W_pq(y) = int psi_p(a) psi_q(a - y) da with psi_0 = 1 - a/h, psi_1 = a/h
// on [0, h]. The integrand is quadratic, so two Gauss points are exact.
Weights overlap_weights(double y, double h) {
    Weights w{0.0, 0.0, 0.0, 0.0};
    const double lo = std::max(0.0, y);
    const double hi = std::min(h, h + y);
    if (!(hi > lo)) return w;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double off = half / std::numbers::sqrt3;
    for (double a : {mid - off, mid + off}) {
        const double b = a - y;
        const double pa[2] = {1.0 - a / h, a / h};
        const double pb[2] = {1.0 - b / h, b / h};
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) w[static_cast<std::size_t>(2 * p + q)] += half * pa[p] * pb[q];
    }
    return w;
}

// S_pq(m) = sum over cell pairs (c, d) with c - d = m of g[c + p] g[d + q].
Weights lag_sums(const std::vector<double>& g, long m) {
    Weights s{0.0, 0.0, 0.0, 0.0};
    const long cells = static_cast<long>(g.size()) - 1;
    const long d0 = std::max(0L, -m);
    const long d1 = std::min(cells - 1, cells - 1 - m);
    for (long d = d0; d <= d1; ++d) {
        const auto c = static_cast<std::size_t>(d + m);
        const auto e = static_cast<std::size_t>(d);
        s[0] += g[c] * g[e];
        s[1] += g[c] * g[e + 1];
        s[2] += g[c + 1] * g[e];
        s[3] += g[c + 1] * g[e + 1];
    }
    return s;
}

// <K G, G> for (K G)(u) = int k(u - v) G(v) dv with k the N(center, t)
// density. M_pq(m) = int_{-h}^{h} k(m h + y) W_pq(y) dy is integrated with
// composite 10-point Gauss panels on each side of y = 0.
double gaussian_inner(const GridFunction& G, double t, double center) {
    const double h = G.step();
    const double sd = std::sqrt(t);
    const long cells = static_cast<long>(G.size()) - 1;
    const double reach = kTailCut * sd + h;
    const long m_lo = std::max(-(cells - 1), static_cast<long>(std::floor((center - reach) / h)) - 1);
    const long m_hi = std::min(cells - 1, static_cast<long>(std::ceil((center + reach) / h)) + 1);
    if (m_lo > m_hi) return 0.0;

    const int panels = static_cast<int>(std::clamp(std::ceil(4.0 * h / sd), 1.0, 256.0));
    const double width = h / panels;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& abscissa = Gauss::abscissa();
    const auto& weight = Gauss::weights();

    double total = 0.0;
    for (long m = m_lo; m <= m_hi; ++m) {
        Weights M{0.0, 0.0, 0.0, 0.0};
        const double base = static_cast<double>(m) * h;
        for (int side = -1; side <= 1; side += 2) {
            for (int k = 0; k < panels; ++k) {
                const double a = side < 0 ? -h + k * width : k * width;
                const double mid = a + 0.5 * width;
                const double half = 0.5 * width;
                for (std::size_t j = 0; j < abscissa.size(); ++j) {
                    for (int sgn = -1; sgn <= 1; sgn += 2) {
                        if (abscissa[j] == 0.0 && sgn > 0) continue;
                        const double y = mid + sgn * half * abscissa[j];
                        const double kern = normal_pdf((base + y - center) / sd) / sd;
                        const Weights W = overlap_weights(y, h);
                        const double f = half * weight[j] * kern;
                        for (std::size_t i = 0; i < 4; ++i) M[i] += f * W[i];
                    }
                }
            }
        }
        const Weights S = lag_sums(G.values(), m);
        for (std::size_t i = 0; i < 4; ++i) total += M[i] * S[i];
    }
    return total;
}

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": time must be non-negative");
}

}  // namespace

double heat_semigroup_inner(const GridFunction& G, double t) {
    require_time(t, "heat_semigroup_inner");
    if (t == 0.0) return G.squared_norm();
    return gaussian_inner(G, t, 0.0);
}

double drifted_semigroup_inner(const GridFunction& G, double t, double velocity) {
    require_time(t, "drifted_semigroup_inner");
    if (t == 0.0) return G.squared_norm();
    return gaussian_inner(G, t, -velocity * t);
}

double translation_inner(const GridFunction& G, double shift) {
    if (!std::isfinite(shift)) throw DomainError("translation_inner: shift must be finite");
    if (shift == 0.0) return G.squared_norm();
    // Delta kernel at z0 = -shift: M_pq(m) = W_pq(z0 - m h).
    const double h = G.step();
    const double z0 = -shift;
    const long cells = static_cast<long>(G.size()) - 1;
    const long centre = static_cast<long>(std::floor(z0 / h));
    double total = 0.0;
    for (long m = centre - 1; m <= centre + 2; ++m) {
        if (m < -(cells - 1) || m > cells - 1) continue;
        const Weights W = overlap_weights(z0 - static_cast<double>(m) * h, h);
        const Weights S = lag_sums(G.values(), m);
        for (std::size_t i = 0; i < 4; ++i) total += W[i] * S[i];
    }
    return total;
}

double field_semigroup_inner(const GridFunction& G, double r, const VarianceSpec& spec) {
    switch (spec.regime) {
        case Regime::super:
            return heat_semigroup_inner(G, r);
        case Regime::critical:
            return drifted_semigroup_inner(G, r, -kCriticalRecentringSign * spec.velocity());
        case Regime::sub:
            return translation_inner(G, spec.velocity() * r);
    }
    return 0.0;
}

double field_cov_increment(const GridFunction& G, double t, double s, const VarianceSpec& spec) {
    require_time(t, "field_cov_increment");
    require_time(s, "field_cov_increment");
    if (t == 0.0 || s == 0.0) return 0.0;
    const double base = G.squared_norm();
    const double lag = field_semigroup_inner(G, std::fabs(t - s), spec);
    const double at_t = field_semigroup_inner(G, t, spec);
    const double at_s = (s == t) ? at_t : field_semigroup_inner(G, s, spec);
    return spec.chi() * (base + lag - at_t - at_s);
}

double V_t(double t, double u) { return R_t(t, u, 0.0); }

double R_t(double t, double u, double velocity) {
    require_time(t, "R_t");
    const double w = u + velocity * t;
    if (t == 0.0) return (w >= 0.0 ? 1.0 : 0.0) - (u >= 0.0 ? 1.0 : 0.0);
    const double sd = std::sqrt(t);
    // Written with the tail probability on each side to avoid cancellation.
    return u >= 0.0 ? -normal_cdf(-w / sd) : normal_cdf(w / sd);
}

namespace {

// int_a^b (e0 + e1 w) Phi(sign w / sd) dw in closed form.
double linear_times_cdf(double e0, double e1, double a, double b, double sd, int sign) {
    auto antiderivative = [=](double w) {
        const double x = w / sd;
        const double cdf = normal_cdf(sign * x);
        const double pdf = normal_pdf(x);
        const double f0 = w * cdf + sign * sd * pdf;
        const double f1 = 0.5 * (w * w - sd * sd) * cdf + sign * 0.5 * sd * w * pdf;
        return e0 * f0 + e1 * f1;
    };
    return antiderivative(b) - antiderivative(a);
}

// int phi(u) R_t(u) du for a piecewise-linear phi.
double profile_term(const GridFunction& phi, double t, double velocity) {
    const double sd = std::sqrt(t);
    const double shift = velocity * t;
    const auto& g = phi.values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double x0 = phi.node(i);
        const double x1 = phi.node(i + 1);
        const double slope = (g[i + 1] - g[i]) / phi.step();
        // phi = g[i] + slope (u - x0) = e0 + slope w with w = u + shift.
        const double e0 = g[i] - slope * (x0 + shift);
        if (x0 < 0.0) {
            const double hi = std::min(x1, 0.0);
            total += linear_times_cdf(e0, slope, x0 + shift, hi + shift, sd, +1);
        }
        if (x1 > 0.0) {
            const double lo = std::max(x0, 0.0);
            total -= linear_times_cdf(e0, slope, lo + shift, x1 + shift, sd, -1);
        }
    }
    return total;
}

// int dG/du(u) g_tau(u + velocity tau) du with dG/du the cellwise slope.
double forcing_inner(const GridFunction& G, double tau, double velocity) {
    if (tau <= 0.0) return G.slope(0.0);
    const double sd = std::sqrt(tau);
    const double centre = -velocity * tau;
    const double lo = std::max(G.lo(), centre - kTailCut * sd);
    const double hi = std::min(G.hi(), centre + kTailCut * sd);
    if (!(hi > lo)) return 0.0;
    const auto& g = G.values();
    const double h = G.step();
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor((lo - G.lo()) / h)));
    const auto last = std::min(g.size() - 2, static_cast<std::size_t>(std::floor((hi - G.lo()) / h)));
    double total = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double slope = (g[i + 1] - g[i]) / h;
        if (slope == 0.0) continue;
        const double a = (G.node(i) - centre) / sd;
        const double b = (G.node(i + 1) - centre) / sd;
        // Difference of CDFs taken on the side where it is small.
        const double mass = (a > 0.0) ? normal_cdf(-a) - normal_cdf(-b) : normal_cdf(b) - normal_cdf(a);
        total += slope * mass;
    }
    return total;
}

double forcing_term(const SpaceTimeGridFunction& G, double t, double velocity) {
    using Quad = boost::math::quadrature::gauss_kronrod<double, 21>;
    std::vector<double> cuts{0.0};
    for (double s : G.times())
        if (s > 0.0 && s < t) cuts.push_back(s);
    cuts.push_back(t);
    double total = 0.0;
    double error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double err = 0.0;
        total += Quad::integrate(
            [&](double s) { return forcing_inner(G.at(s), t - s, velocity); }, cuts[k], cuts[k + 1], 15, 1e-10,
            &err);
        error += err;
    }
    if (!(error <= 1e-6) || !std::isfinite(total))
        throw QuadratureError("macroscopic_current: forcing integral did not converge");
    return total;
}

}  // namespace

double macroscopic_current(const GridFunction& phi, const SpaceTimeGridFunction* G, double t,
                           const VarianceSpec& spec) {
    require_time(t, "macroscopic_current");
    if (t == 0.0) return 0.0;
    const double v = spec.velocity();
    if (spec.regime == Regime::sub) return phi.integral(-v * t, 0.0);
    if (G != nullptr && t > G->horizon() * (1.0 + 1e-12))
        throw DomainError("macroscopic_current: forcing does not cover [0, t]");
    const double velocity = spec.regime == Regime::critical ? v : 0.0;
    double value = profile_term(phi, t, velocity);
    if (G != nullptr) value += forcing_term(*G, t, velocity);
    return value;
}

}  // namespace wasep

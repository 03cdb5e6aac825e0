#include "bsauth/oracles/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace bsauth::oracles {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod_sum = fc * kWgk[7];
    double gauss_sum = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        const double pair = f(center - dx) + f(center + dx);
        kronrod_sum += kWgk[static_cast<std::size_t>(j)] * pair;
        if (j % 2 == 1) gauss_sum += kWg[static_cast<std::size_t>(j / 2)] * pair;
    }
    return {lo, hi, kronrod_sum * half, std::abs((kronrod_sum - gauss_sum) * half)};
}

// Reference e^{-x} I0(x) independent of the library's series/asymptotic code.
double reference_i0_scaled(double x)
{
    if (x <= 700.0) return std::cyl_bessel_i(0.0, x) * std::exp(-x);
    return bessel_i0_scaled_quadrature(x);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                 double abs_tol, std::size_t max_intervals)
{
    if (!(hi > lo)) return 0.0;
    std::priority_queue<Segment> heap;
    double total = 0.0;
    double error = 0.0;
    constexpr int kInitial = 16;
    const double step = (hi - lo) / kInitial;
    for (int i = 0; i < kInitial; ++i) {
        const double a = lo + i * step;
        const double b = (i + 1 == kInitial) ? hi : a + step;
        Segment s = kronrod(f, a, b);
        total += s.value;
        error += s.error;
        heap.push(s);
    }
    while (error > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Segment left = kronrod(f, worst.lo, mid);
        const Segment right = kronrod(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the incremental updates.
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double bessel_i0_scaled_quadrature(double x)
{
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_i0_scaled_quadrature: x < 0");
    const auto integrand = [x](double t) { return std::exp(x * (std::cos(t) - 1.0)); };
    return integrate(integrand, 0.0, std::numbers::pi, 1e-15) / std::numbers::pi;
}

double marcum_q1_quadrature(double a, double b)
{
    if (!(a >= 0.0 && b >= 0.0)) throw std::invalid_argument("marcum_q1_quadrature: negative input");
    const auto integrand = [a](double x) {
        const double d = x - a;
        return x * std::exp(-0.5 * d * d) * reference_i0_scaled(a * x);
    };
    // The integrand is below exp(-800) past max(a, b) + 40.
    const double hi = std::max(a, b) + 40.0;
    return integrate(integrand, b, hi, 1e-14);
}

double ks_statistic(std::vector<double> first, std::vector<double> second)
{
    if (first.empty() || second.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    const double n = static_cast<double>(first.size());
    const double m = static_cast<double>(second.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < first.size() && j < second.size()) {
        const double v = std::min(first[i], second[j]);
        while (i < first.size() && first[i] <= v) ++i;
        while (j < second.size() && second[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m)
{
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((nn + mm) / (nn * mm));
}

double binomial_stderr(double p, double n)
{
    return std::sqrt(p * (1.0 - p) / n);
}

}  // namespace bsauth::oracles

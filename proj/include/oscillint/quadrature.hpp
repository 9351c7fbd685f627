#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

#include "oscillint/errors.hpp"

namespace oscillint {

/// Gauss-Legendre rule on [-1, 1], cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int n);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  /// Widest panel allowed in the initial subdivision.
  double max_panel = std::numeric_limits<double>::infinity();
  int max_panels = 400000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (nonnegative abscissae).
inline constexpr double kGk15X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGk15W[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7W[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15_panel(const F& f, double a, double b, std::complex<double>& value,
                double& error) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  std::complex<double> kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = hw * kGk15X[i];
    std::complex<double> fsum;
    if (i == 7) {
      fsum = f(c);
    } else {
      fsum = f(c - dx) + f(c + dx);
    }
    kron += kGk15W[i] * fsum;
    if (i % 2 == 1) gauss += kG7W[i / 2] * fsum;
    if (i == 7) gauss += 0.0;  // center point belongs to Kronrod only
  }
  value = kron * hw;
  error = std::abs((kron - gauss) * hw);
}

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand on [a, b].
/// Deterministic: panels are refined worst-first with a fixed tie-break and
/// the final sum runs in interval order.
template <class F>
std::complex<double> integrate_adaptive(const F& f, double a, double b,
                                        const QuadratureOptions& opt = {}) {
  if (!(b > a)) return 0.0;
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> heap;
  double total_error = 0.0;
  int count = 0;
  const double width = b - a;
  const int initial =
      std::min<int>(opt.max_panels,
                    std::isfinite(opt.max_panel) && opt.max_panel > 0
                        ? static_cast<int>(std::ceil(width / opt.max_panel))
                        : 1);
  for (int i = 0; i < initial; ++i) {
    detail::Panel p;
    p.a = a + width * static_cast<double>(i) / initial;
    p.b = a + width * static_cast<double>(i + 1) / initial;
    detail::gk15_panel(f, p.a, p.b, p.value, p.error);
    total_error += p.error;
    heap.push(p);
    ++count;
  }
  while (total_error > opt.abs_tol && count < opt.max_panels) {
    detail::Panel worst = heap.top();
    if (worst.error <= opt.abs_tol / (16.0 * static_cast<double>(count))) break;
    heap.pop();
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel l{worst.a, mid, 0.0, 0.0}, r{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, l.a, l.b, l.value, l.error);
    detail::gk15_panel(f, r.a, r.b, r.value, r.error);
    total_error += l.error + r.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  std::vector<detail::Panel> panels;
  panels.reserve(static_cast<std::size_t>(count));
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  std::complex<double> acc = 0.0;
  for (const auto& p : panels) acc += p.value;
  return acc;
}

template <class F>
double integrate_adaptive_real(const F& f, double a, double b,
                               const QuadratureOptions& opt = {}) {
  return integrate_adaptive(
             [&](double x) { return std::complex<double>(f(x), 0.0); }, a, b, opt)
      .real();
}

}  // namespace oscillint

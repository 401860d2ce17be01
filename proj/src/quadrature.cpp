#include "expcensus/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "expcensus/errors.hpp"

namespace expcensus {
namespace {

// Kronrod abscissae; odd entries (xgk[1], xgk[3], ...) and the centre are the
// 15-point Gauss nodes.
constexpr double kXgk[16] = {
    0.998002298693397060285172840152271, 0.987992518020485428489565718586613,
    0.967739075679139134257347978784337, 0.937273392400705904307758947710209,
    0.897264532344081900882509656454496, 0.848206583410427216200648320774217,
    0.790418501442465932967649294817947, 0.724417731360170047416186054613938,
    0.650996741297416970533735895313275, 0.570972172608538847537226737253911,
    0.485081863640239680693655740232351, 0.394151347077563369897207370981045,
    0.299180007153168812166780024266389, 0.201194093997434522300628303394596,
    0.101142066918717499027074231447392, 0.0};

constexpr double kWgk[16] = {
    0.005377479872923348987792051430128, 0.015007947329316122538374763075807,
    0.025460847326715320186874001019653, 0.035346360791375846222037948478360,
    0.044589751324764876608227299373280, 0.053481524690928087265343147239430,
    0.062009567800670640285139230960803, 0.069854121318728258709520077099147,
    0.076849680757720378894432777482659, 0.083080502823133021038289247286104,
    0.088564443056211770647275443693774, 0.093126598170825321225486872747346,
    0.096642726983623678505179907627589, 0.099173598721791959332393173484603,
    0.100769845523875595044946662617570, 0.101330007014791549017374792767493};

constexpr double kWg[8] = {
    0.030753241996117268354628393577204, 0.070366047488108124709267416450667,
    0.107159220467171935011869546685869, 0.139570677926154314447804794511028,
    0.166269205816993933553200860481209, 0.186161000015562211026800561866423,
    0.198431485327111576456118326443839, 0.202578241925561272880620199967519};

constexpr long kNodesPerPanel = 31;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel kronrod31(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double gauss = kWg[7] * fc;
  double kronrod = kWgk[15] * fc;
  for (int j = 0; j < 15; ++j) {
    const double x = half * kXgk[j];
    const double sum = f(centre - x) + f(centre + x);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

struct LargerError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (breakpoints.size() < 2) return result;

  std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
  std::vector<Panel> settled;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    const Panel p = kronrod31(f, a, b);
    result.nodes += kNodesPerPanel;
    value += p.value;
    error += p.error;
    queue.push(p);
  }

  auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::fabs(value)); };
  while (!queue.empty() && error > tolerance()) {
    if (result.nodes + 2 * kNodesPerPanel > options.node_budget) {
      throw Error(ErrorKind::NonConvergence, "quadrature node budget exhausted");
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at machine resolution; keep its estimate.
      settled.push_back(worst);
      error -= worst.error;
      continue;
    }
    const Panel left = kronrod31(f, worst.a, mid);
    const Panel right = kronrod31(f, mid, worst.b);
    result.nodes += 2 * kNodesPerPanel;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  while (!queue.empty()) {
    settled.push_back(queue.top());
    queue.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> values;
  std::vector<double> errors;
  values.reserve(settled.size());
  errors.reserve(settled.size());
  for (const Panel& p : settled) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  result.value = compensated_sum(values);
  result.abs_error = compensated_sum(errors);
  return result;
}

std::vector<double> find_sign_changes(const std::function<double(double)>& g, double a, double b,
                                      std::size_t pilot_points, double width) {
  std::vector<double> roots;
  if (pilot_points < 2 || !(b > a)) return roots;
  const double step = (b - a) / static_cast<double>(pilot_points - 1);
  double x_prev = a;
  double g_prev = g(a);
  for (std::size_t i = 1; i < pilot_points; ++i) {
    const double x = i + 1 == pilot_points ? b : a + step * static_cast<double>(i);
    const double gx = g(x);
    if (g_prev == 0.0) {
      if (x_prev > a) roots.push_back(x_prev);
    } else if ((g_prev < 0.0) != (gx < 0.0) && gx != 0.0) {
      double lo = x_prev;
      double hi = x;
      double g_lo = g_prev;
      while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if ((gm < 0.0) == (g_lo < 0.0)) {
          lo = mid;
          g_lo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    g_prev = gx;
  }
  return roots;
}

}  // namespace expcensus

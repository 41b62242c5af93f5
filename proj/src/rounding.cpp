#include "c2mabv/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace c2mabv::rounding {

namespace {

constexpr double kSnapTol = 1e-9;

std::vector<double> snapped(const FractionalSelection& z) {
  std::vector<double> v = z.values;
  for (double& x : v) {
    if (std::abs(x) <= kSnapTol) x = 0.0;
    if (std::abs(x - 1.0) <= kSnapTol) x = 1.0;
  }
  return v;
}

void validate_polytope(const std::vector<double>& v, int max_active) {
  double total = 0.0;
  for (double x : v) {
    if (x < 0.0 || x > 1.0)
      throw std::invalid_argument("selection coordinate outside [0,1]");
    total += x;
  }
  if (total > static_cast<double>(max_active) + kSnapTol)
    throw std::invalid_argument("selection mass exceeds the cardinality cap");
}

bool is_integral(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

ActionSet support(const std::vector<double>& v) {
  ActionSet s;
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (v[static_cast<std::size_t>(k)] == 1.0) s.members.push_back(k);
  return s;
}

// Set picked at phase u: coordinate k is in iff some integer lies in
// [C_{k-1} - u, C_k - u).
ActionSet set_at_phase(const std::vector<double>& cum, double u) {
  ActionSet s;
  for (std::size_t k = 1; k < cum.size(); ++k) {
    if (std::floor(cum[k] - u) > std::floor(cum[k - 1] - u))
      s.members.push_back(static_cast<int>(k) - 1);
  }
  return s;
}

std::vector<int> difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void replace_member(std::vector<int>& set, int remove, int insert) {
  set.erase(std::find(set.begin(), set.end(), remove));
  set.insert(std::upper_bound(set.begin(), set.end(), insert), insert);
}

}  // namespace

Decomposition decompose(const FractionalSelection& z, int max_active) {
  std::vector<double> v = snapped(z);
  validate_polytope(v, max_active);

  Decomposition d;
  if (is_integral(v)) {
    d.weights.push_back(1.0);
    d.sets.push_back(support(v));
    return d;
  }

  const std::size_t K = v.size();
  std::vector<double> cum(K + 1, 0.0);
  for (std::size_t k = 0; k < K; ++k) cum[k + 1] = cum[k] + v[k];

  std::vector<double> breaks;
  breaks.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    double f = cum[k] - std::floor(cum[k]);
    if (f >= 1.0) f = 0.0;
    breaks.push_back(f);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());

  const std::size_t m = breaks.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = breaks[i];
    const double hi = (i + 1 < m) ? breaks[i + 1] : breaks[0] + 1.0;  // wrap arc
    const double weight = hi - lo;
    if (weight <= 1e-12) continue;
    double mid = lo + 0.5 * weight;
    if (mid >= 1.0) mid -= 1.0;
    d.weights.push_back(weight);
    d.sets.push_back(set_at_phase(cum, mid));
  }
  return d;
}

ActionSet swap_round(const FractionalSelection& z, int max_active, rng::Stream& stream) {
  Decomposition d = decompose(z, max_active);
  if (d.sets.size() == 1) return d.sets[0];

  std::vector<int> merged = d.sets[0].members;
  double p1 = d.weights[0];
  for (std::size_t i = 1; i < d.sets.size(); ++i) {
    std::vector<int> b1 = std::move(merged);
    std::vector<int> b2 = d.sets[i].members;
    double p2 = d.weights[i];
    if (b1.size() < b2.size()) {
      std::swap(b1, b2);
      std::swap(p1, p2);
    }

    // Pad b2 with the lowest-index extras of b1 so the exchange walk runs on
    // equal-size sets; padding is resolved per element afterwards.
    std::vector<int> only1 = difference(b1, b2);
    std::vector<int> padding(only1.begin(),
                             only1.begin() + static_cast<std::ptrdiff_t>(b1.size() - b2.size()));
    for (int g : padding)
      b2.insert(std::upper_bound(b2.begin(), b2.end(), g), g);

    while (b1 != b2) {
      const std::vector<int> d1 = difference(b1, b2);
      const std::vector<int> d2 = difference(b2, b1);
      const int take_from_b2 = d2.front();
      const int take_from_b1 = d1.front();
      if (stream.uniform01() < p2 / (p1 + p2)) {
        replace_member(b1, take_from_b1, take_from_b2);
      } else {
        replace_member(b2, take_from_b2, take_from_b1);
      }
    }

    for (int g : padding) {
      if (stream.uniform01() < p2 / (p1 + p2))
        b1.erase(std::find(b1.begin(), b1.end(), g));
    }
    merged = std::move(b1);
    p1 = p1 + p2;
  }

  ActionSet out;
  out.members = std::move(merged);
  return out;
}

ActionSet dependent_round(const FractionalSelection& z, rng::Stream& stream) {
  std::vector<double> v = snapped(z);
  for (double x : v) {
    if (x < 0.0 || x > 1.0)
      throw std::invalid_argument("selection coordinate outside [0,1]");
  }

  std::vector<int> frac;
  for (int k = 0; k < static_cast<int>(v.size()); ++k) {
    const double x = v[static_cast<std::size_t>(k)];
    if (x > 0.0 && x < 1.0) frac.push_back(k);
  }

  while (frac.size() >= 2) {
    const int k = frac[0];
    const int j = frac[1];
    double& zk = v[static_cast<std::size_t>(k)];
    double& zj = v[static_cast<std::size_t>(j)];
    const double p = std::min(1.0 - zk, zj);
    const double q = std::min(zk, 1.0 - zj);
    if (stream.uniform01() < q / (p + q)) {
      // (zk + p, zj - p); assign the bound that defined p exactly
      if (1.0 - zk <= zj) {
        zj -= 1.0 - zk;
        zk = 1.0;
      } else {
        zk += zj;
        zj = 0.0;
      }
    } else {
      // (zk - q, zj + q)
      if (zk <= 1.0 - zj) {
        zj += zk;
        zk = 0.0;
      } else {
        zk -= 1.0 - zj;
        zj = 1.0;
      }
    }
    std::erase_if(frac, [&](int idx) {
      const double x = v[static_cast<std::size_t>(idx)];
      return x <= kSnapTol || x >= 1.0 - kSnapTol;
    });
  }

  if (frac.size() == 1) {
    // Leftover mass from a non-integral coordinate sum (or float dust):
    // resolve it by its own marginal.
    double& x = v[static_cast<std::size_t>(frac[0])];
    x = stream.uniform01() < x ? 1.0 : 0.0;
  }

  for (double& x : v) x = (x >= 1.0 - kSnapTol) ? 1.0 : 0.0;
  return support(v);
}

}  // namespace c2mabv::rounding

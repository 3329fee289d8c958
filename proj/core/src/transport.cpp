#include "mpho/transport.hpp"

#include "mpho/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace mpho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Stand-in for forbidden matches inside the solver; real costs stay far
// below it, so any matched sentinel marks an infeasible instance.
constexpr double kBig = 1e30;

struct Entry {
  const std::vector<double>* location;
  MassOrigin origin;
  int mass; // index into the owning measure's mass list
};

void expand(const SignedMeasure& measure, bool positive_side, MassOrigin origin,
            std::vector<Entry>& out) {
  for (std::size_t m = 0; m < measure.masses.size(); ++m) {
    const Mass& mass = measure.masses[m];
    if (positive_side ? mass.multiplicity <= 0 : mass.multiplicity >= 0) continue;
    long long copies = std::llabs(mass.multiplicity);
    for (long long c = 0; c < copies; ++c)
      out.push_back({&mass.location, origin, static_cast<int>(m)});
  }
}

double ground_distance(const GroundMetric& metric, const std::vector<double>& a,
                       const std::vector<double>& b) {
  (void)metric;
  return linf_distance(a, b);
}

/// O(n^3) Hungarian algorithm (shortest augmenting paths with potentials) on
/// a square cost matrix. Returns, per column, the matched row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kBig * 4);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = kBig * 4;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_of_col(n);
  for (int j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
  return row_of_col;
}

} // namespace

TransportResult ot_distance(const SignedMeasure& mu, const SignedMeasure& nu,
                            const GroundMetric& metric) {
  if (mu.ground != metric.space || nu.ground != metric.space || mu.params != nu.params ||
      mu.params != metric.params)
    fail(errc::ground_space_mismatch, "measures live on different ground spaces");

  std::vector<Entry> left, right;
  expand(mu, true, MassOrigin::mu_plus, left);
  expand(nu, false, MassOrigin::nu_minus, left);
  expand(nu, true, MassOrigin::nu_plus, right);
  expand(mu, false, MassOrigin::mu_minus, right);

  TransportResult result;
  result.assignment.metric = metric;

  const std::size_t la = left.size(), lb = right.size();

  if (metric.space == GroundSpace::euclidean) {
    if (la != lb) {
      result.cost = kInf;
      result.assignment.cost = kInf;
      return result;
    }
    if (la == 0) return result; // both empty: zero cost, empty assignment
    if (la + lb > 5000)
      fail(errc::too_large, std::to_string(la + lb) + " masses exceed the solver guard");

    std::vector<std::vector<double>> cost(la, std::vector<double>(la, 0));
    for (std::size_t i = 0; i < la; ++i)
      for (std::size_t j = 0; j < lb; ++j)
        cost[i][j] = ground_distance(metric, *left[i].location, *right[j].location);
    std::vector<int> row_of_col = solve_assignment(cost);
    double total = 0;
    for (std::size_t j = 0; j < la; ++j) {
      int i = row_of_col[j];
      MatchedPair pair;
      pair.left_location = *left[i].location;
      pair.right_location = *right[j].location;
      pair.left_origin = left[i].origin;
      pair.right_origin = right[j].origin;
      pair.left_mass = left[i].mass;
      pair.right_mass = right[j].mass;
      pair.cost = cost[i][j];
      total += pair.cost;
      result.assignment.pairs.push_back(std::move(pair));
    }
    result.cost = total;
    result.assignment.cost = total;
    return result;
  }

  // Bars: augment with one diagonal slot per mass. Row i can use slot lb+i,
  // column j can absorb slot la+j; diagonal-to-diagonal is free.
  const std::size_t n = la + lb;
  if (n == 0) return result;
  if (n > 5000) fail(errc::too_large, std::to_string(n) + " augmented masses exceed the solver guard");

  auto clip = [](double d) { return std::isinf(d) ? kBig : d; };

  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < la; ++i) {
    double to_diag = clip(bar_diagonal_distance(*left[i].location, static_cast<int>(mu.params)));
    for (std::size_t j = 0; j < lb; ++j)
      cost[i][j] = clip(ground_distance(metric, *left[i].location, *right[j].location));
    for (std::size_t j = 0; j < la; ++j) cost[i][lb + j] = (i == j) ? to_diag : kBig;
  }
  for (std::size_t i = 0; i < lb; ++i) {
    double to_diag = clip(bar_diagonal_distance(*right[i].location, static_cast<int>(mu.params)));
    for (std::size_t j = 0; j < lb; ++j) cost[la + i][j] = (i == j) ? to_diag : kBig;
  }

  std::vector<int> row_of_col = solve_assignment(cost);
  double total = 0;
  bool infeasible = false;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = static_cast<std::size_t>(row_of_col[j]);
    if (i >= la && j >= lb) continue; // diagonal to diagonal carries nothing
    if (cost[i][j] >= kBig) infeasible = true;
    MatchedPair pair;
    if (i < la) {
      pair.left_location = *left[i].location;
      pair.left_origin = left[i].origin;
      pair.left_mass = left[i].mass;
    } else {
      pair.left_origin = MassOrigin::diagonal;
    }
    if (j < lb) {
      pair.right_location = *right[j].location;
      pair.right_origin = right[j].origin;
      pair.right_mass = right[j].mass;
    } else {
      pair.right_origin = MassOrigin::diagonal;
    }
    pair.cost = cost[i][j];
    total += pair.cost;
    result.assignment.pairs.push_back(std::move(pair));
  }
  if (infeasible) {
    result.cost = kInf;
    result.assignment.pairs.clear();
    result.assignment.cost = kInf;
    return result;
  }
  result.cost = total;
  result.assignment.cost = total;
  return result;
}

namespace {

// d/dx of max_j |x_j - y_j| : the sign at the lowest maximizing coordinate.
void linf_gradient(const std::vector<double>& x, const std::vector<double>& y,
                   std::vector<double>& grad_out) {
  grad_out.assign(x.size(), 0.0);
  double best = -1;
  int arg = -1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d;
    if (std::isinf(x[j]) && std::isinf(y[j]) && x[j] == y[j]) {
      d = 0;
    } else {
      d = std::abs(x[j] - y[j]);
    }
    if (d > best) {
      best = d;
      arg = static_cast<int>(j);
    }
  }
  if (arg < 0 || best == 0) return;
  if (std::isinf(x[arg]) || std::isinf(y[arg])) return; // infinite coordinates carry no gradient
  grad_out[arg] = x[arg] > y[arg] ? 1.0 : -1.0;
}

// d/d(bar) of the distance to the diagonal, max_i |death_i - birth_i| / 2.
void diagonal_gradient(const std::vector<double>& bar, int params, std::vector<double>& grad_out) {
  grad_out.assign(bar.size(), 0.0);
  double best = -1;
  int arg = -1;
  for (int i = 0; i < params; ++i) {
    if (std::isinf(bar[params + i])) return; // infinite bars never reach the diagonal
    double d = std::abs(bar[params + i] - bar[i]);
    if (d > best) {
      best = d;
      arg = i;
    }
  }
  if (arg < 0 || best == 0) return;
  double sign = bar[params + arg] > bar[arg] ? 1.0 : -1.0;
  grad_out[params + arg] = 0.5 * sign;
  grad_out[arg] = -0.5 * sign;
}

} // namespace

std::vector<std::vector<double>> ot_subgradient(const SignedMeasure& mu, const Assignment& assignment) {
  if (std::isinf(assignment.cost))
    fail(errc::infinite_cost, "no subgradient for an infinite-cost assignment");

  std::vector<std::vector<double>> grads(mu.masses.size());
  for (std::size_t m = 0; m < mu.masses.size(); ++m)
    grads[m].assign(mu.masses[m].location.size(), 0.0);

  std::vector<double> local;
  for (const MatchedPair& pair : assignment.pairs) {
    if (pair.left_origin == MassOrigin::mu_plus) {
      if (pair.right_origin == MassOrigin::diagonal) {
        diagonal_gradient(pair.left_location, assignment.metric.params, local);
      } else {
        linf_gradient(pair.left_location, pair.right_location, local);
      }
      for (std::size_t c = 0; c < local.size(); ++c) grads[pair.left_mass][c] += local[c];
    }
    if (pair.right_origin == MassOrigin::mu_minus) {
      if (pair.left_origin == MassOrigin::diagonal) {
        diagonal_gradient(pair.right_location, assignment.metric.params, local);
      } else {
        linf_gradient(pair.right_location, pair.left_location, local);
      }
      for (std::size_t c = 0; c < local.size(); ++c) grads[pair.right_mass][c] += local[c];
    }
  }
  return grads;
}

} // namespace mpho

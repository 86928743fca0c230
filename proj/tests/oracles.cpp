#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool tie(double x, double y) {
  if (x == y) return true;
  return std::fabs(x - y) <= 1e-9 * std::max(std::fabs(x), std::fabs(y));
}

std::string two_digits(int i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", i);
  return buf;
}

int head(const Topology& t, int arc) {
  const auto& l = t.link(arc / 2);
  return (arc & 1) ? l.a : l.b;
}

bool ok(const std::vector<bool>& allowed, int v) { return allowed.empty() || allowed[v]; }

}  // namespace

Topology random_topology(std::mt19937& rng, int nodes, int chords) {
  Topology t;
  for (int i = 0; i < nodes; ++i) {
    capplan::Node n;
    n.id = "n" + std::to_string(i);
    n.name = n.id;
    t.add_node(n);
  }
  std::uniform_int_distribution<int> metric(1, 3);
  std::uniform_int_distribution<int> cap(1, 4);
  std::set<std::pair<int, int>> used;
  int next_id = 0;
  auto add = [&](int a, int b) {
    used.insert({std::min(a, b), std::max(a, b)});
    t.add_link("e" + two_digits(next_id++), "n" + std::to_string(a), "n" + std::to_string(b),
               metric(rng), 10.0 * cap(rng));
  };
  for (int i = 0; i < nodes; ++i) add(i, (i + 1) % nodes);
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  for (int tries = 0; chords > 0 && tries < 200; ++tries) {
    const int a = pick(rng), b = pick(rng);
    if (a == b || used.count({std::min(a, b), std::max(a, b)})) continue;
    add(a, b);
    --chords;
  }
  return t;
}

DemandMatrix random_demands(std::mt19937& rng, const Topology& t, int pairs,
                            const std::vector<int>& destinations) {
  const int n = static_cast<int>(t.node_count());
  DemandMatrix d(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> volume(1, 10);
  for (int tries = 0; pairs > 0 && tries < 1000; ++tries) {
    const int s = pick(rng);
    const int x = destinations.empty()
                      ? pick(rng)
                      : destinations[std::uniform_int_distribution<std::size_t>(
                            0, destinations.size() - 1)(rng)];
    if (s == x || d.at(s, x) > 0.0) continue;
    d.set(s, x, volume(rng));
    --pairs;
  }
  return d;
}

std::vector<std::vector<double>> floyd(const Topology& t, const std::vector<bool>& allowed) {
  const int n = static_cast<int>(t.node_count());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0.0;
  for (const auto& l : t.links()) {
    if (!ok(allowed, l.a) || !ok(allowed, l.b)) continue;
    d[l.a][l.b] = std::min(d[l.a][l.b], l.metric);
    d[l.b][l.a] = std::min(d[l.b][l.a], l.metric);
  }
  for (int k = 0; k < n; ++k) {
    if (!ok(allowed, k)) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

int next_arc(const Topology& t, const std::vector<std::vector<double>>& dist, int v, int target,
             const std::vector<bool>& allowed) {
  if (v == target || dist[v][target] == kInf) return -1;
  int best = -1;
  for (int l = 0; l < static_cast<int>(t.link_count()); ++l) {
    const auto& link = t.link(l);
    int arc;
    if (link.a == v) {
      arc = 2 * l;
    } else if (link.b == v) {
      arc = 2 * l + 1;
    } else {
      continue;
    }
    const int w = head(t, arc);
    if (!ok(allowed, w) && w != target) continue;
    if (!tie(dist[v][target], link.metric + dist[w][target])) continue;
    if (best < 0) {
      best = arc;
      continue;
    }
    const int bw = head(t, best);
    const auto& bl = t.link(best / 2);
    const auto key = std::make_pair(t.node(w).id, link.id);
    const auto best_key = std::make_pair(t.node(bw).id, bl.id);
    if (key < best_key) best = arc;
  }
  return best;
}

double brute_force_distance(const Topology& t, int s, int target) {
  const int n = static_cast<int>(t.node_count());
  std::vector<bool> seen(n, false);
  double best = kInf;
  std::function<void(int, double)> dfs = [&](int v, double len) {
    if (v == target) {
      best = std::min(best, len);
      return;
    }
    seen[v] = true;
    for (const auto& l : t.links()) {
      int w = -1;
      if (l.a == v) w = l.b;
      if (l.b == v) w = l.a;
      if (w >= 0 && !seen[w]) dfs(w, len + l.metric);
    }
    seen[v] = false;
  };
  dfs(s, 0.0);
  return best;
}

namespace {

// Dense tableau, minimize c.x subject to A x = b, x >= 0, b >= 0, with an
// initial basis supplied per row (slack or artificial).
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)),
                                basis_(rows, -1) {}

  double& at(int r, int c) { return a_[r][c]; }
  double& rhs(int r) { return a_[r][n_]; }
  void set_basis(int r, int c) { basis_[r] = c; }
  int basis(int r) const { return basis_[r]; }

  // Minimizes cost over columns with enter_ok; returns the objective.
  double minimize(const std::vector<double>& cost, const std::vector<bool>& enter_ok) {
    for (int iter = 0; iter < 200000; ++iter) {
      // Reduced costs.
      int enter = -1;
      for (int c = 0; c < n_ && enter < 0; ++c) {
        if (!enter_ok[c]) continue;
        double rc = cost[c];
        for (int r = 0; r < m_; ++r) rc -= cost[basis_[r]] * a_[r][c];
        if (rc < -1e-10) enter = c;
      }
      if (enter < 0) break;
      int leave = -1;
      double best = kInf;
      for (int r = 0; r < m_; ++r) {
        if (a_[r][enter] > 1e-10) {
          const double ratio = a_[r][n_] / a_[r][enter];
          const bool smaller = leave < 0 || ratio < best - 1e-12;
          const bool tied = !smaller && ratio <= best + 1e-12 && basis_[r] < basis_[leave];
          if (smaller || tied) {
            best = smaller ? ratio : std::min(best, ratio);
            leave = r;
          }
        }
      }
      if (leave < 0) throw std::runtime_error("oracle LP unbounded");
      pivot(leave, enter);
    }
    double obj = 0.0;
    for (int r = 0; r < m_; ++r) obj += cost[basis_[r]] * a_[r][n_];
    return obj;
  }

  void pivot(int r, int c) {
    const double p = a_[r][c];
    for (double& v : a_[r]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == r || a_[i][c] == 0.0) continue;
      const double f = a_[i][c];
      for (int j = 0; j <= n_; ++j) a_[i][j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  int rows() const { return m_; }

 private:
  int m_, n_;
  std::vector<std::vector<double>> a_;
  std::vector<int> basis_;
};

}  // namespace

double lp_min_max_utilization(const Topology& t, const DemandMatrix& d,
                              const std::vector<double>& cap) {
  const int n = static_cast<int>(t.node_count());
  const int arcs = static_cast<int>(2 * t.link_count());
  std::vector<std::pair<int, int>> com;
  for (int s = 0; s < n; ++s) {
    for (int x = 0; x < n; ++x) {
      if (d.at(s, x) > 0.0) com.emplace_back(s, x);
    }
  }
  const int k = static_cast<int>(com.size());
  const int flow_cols = k * arcs;
  const int u_col = flow_cols;
  const int eq_rows = k * (n - 1);
  const int rows = eq_rows + arcs;
  const int slack0 = u_col + 1;
  const int art0 = slack0 + arcs;
  const int cols = art0 + eq_rows;
  Tableau tab(rows, cols);

  int r = 0;
  for (int c = 0; c < k; ++c) {
    const auto [s, x] = com[c];
    for (int v = 0; v < n; ++v) {
      if (v == x) continue;
      for (int a = 0; a < arcs; ++a) {
        const auto& l = t.link(a / 2);
        const int tail = (a & 1) ? l.b : l.a;
        const int hd = (a & 1) ? l.a : l.b;
        if (tail == v) tab.at(r, c * arcs + a) += 1.0;
        if (hd == v) tab.at(r, c * arcs + a) -= 1.0;
      }
      tab.rhs(r) = v == s ? d.at(s, x) : 0.0;
      tab.at(r, art0 + r) = 1.0;
      tab.set_basis(r, art0 + r);
      ++r;
    }
  }
  for (int a = 0; a < arcs; ++a, ++r) {
    for (int c = 0; c < k; ++c) tab.at(r, c * arcs + a) = 1.0;
    tab.at(r, u_col) = -cap[a / 2];
    tab.at(r, slack0 + a) = 1.0;
    tab.rhs(r) = 0.0;
    tab.set_basis(r, slack0 + a);
  }

  std::vector<double> phase1(cols, 0.0);
  for (int c = art0; c < cols; ++c) phase1[c] = 1.0;
  std::vector<bool> all(cols, true);
  if (tab.minimize(phase1, all) > 1e-7) throw std::runtime_error("oracle LP infeasible");
  // Drive zero-level artificials out of the basis where possible.
  for (int i = 0; i < tab.rows(); ++i) {
    if (tab.basis(i) < art0) continue;
    for (int c = 0; c < art0; ++c) {
      if (std::fabs(tab.at(i, c)) > 1e-9) {
        tab.pivot(i, c);
        break;
      }
    }
  }
  std::vector<double> phase2(cols, 0.0);
  phase2[u_col] = 1.0;
  std::vector<bool> no_art(cols, true);
  for (int c = art0; c < cols; ++c) no_art[c] = false;
  return tab.minimize(phase2, no_art);
}

double max_util(const Topology& t, const std::vector<double>& arc_load,
                const std::vector<double>& cap) {
  double u = 0.0;
  for (std::size_t a = 0; a < arc_load.size(); ++a) {
    if (arc_load[a] <= 0.0) continue;
    const double c = cap[a / 2];
    u = std::max(u, c > 0.0 ? arc_load[a] / c : kInf);
  }
  (void)t;
  return u;
}

namespace {

// Fractions (in units of `step`) summing to 1 over `k` parts, each within
// `radius` units of `center` (empty center: unrestricted).
void compositions(int k, int total, const std::vector<int>& center, int radius,
                  std::vector<std::vector<int>>& out) {
  std::vector<int> cur(k, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      if (!center.empty() && std::abs(left - center[i]) > radius) return;
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    int lo = 0, hi = left;
    if (!center.empty()) {
      lo = std::max(lo, center[i] - radius);
      hi = std::min(hi, center[i] + radius);
    }
    for (int v = lo; v <= hi; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
}

}  // namespace

double stacked_grid_oracle(const Topology& t, int sdn, const DemandMatrix& d,
                           const std::vector<double>& cap) {
  const int n = static_cast<int>(t.node_count());
  const int arcs = static_cast<int>(2 * t.link_count());
  const auto dist = floyd(t);
  std::vector<double> base(arcs, 0.0);

  struct Dest {
    double pool = 0.0;
    std::vector<std::vector<double>> path;  // unit load per usable SDN arc
  };
  std::vector<Dest> dests;
  for (int x = 0; x < n; ++x) {
    Dest dest;
    for (int s = 0; s < n; ++s) {
      const double vol = d.at(s, x);
      if (vol <= 0.0) continue;
      int v = s;
      std::vector<int> walked;
      while (v != x && !(v == sdn && x != sdn)) {
        const int a = next_arc(t, dist, v, x);
        walked.push_back(a);
        v = head(t, a);
      }
      for (int a : walked) base[a] += vol;
      if (v == sdn && x != sdn) dest.pool += vol;
    }
    if (dest.pool <= 0.0) continue;
    for (int a = 0; a < arcs; ++a) {
      const auto& l = t.link(a / 2);
      const int tail = (a & 1) ? l.b : l.a;
      if (tail != sdn) continue;
      std::vector<double> unit(arcs, 0.0);
      unit[a] = 1.0;
      int v = head(t, a);
      bool loop = false;
      while (v != x) {
        const int b = next_arc(t, dist, v, x);
        unit[b] += 1.0;
        v = head(t, b);
        if (v == sdn) {
          loop = true;
          break;
        }
      }
      if (!loop) dest.path.push_back(unit);
    }
    dests.push_back(dest);
  }

  // Candidate load vectors per destination for a set of split vectors.
  auto contributions = [&](const Dest& dest, const std::vector<std::vector<int>>& splits,
                           double unit) {
    std::vector<std::vector<double>> out;
    for (const auto& sp : splits) {
      std::vector<double> load(arcs, 0.0);
      for (std::size_t j = 0; j < sp.size(); ++j) {
        const double f = sp[j] * unit * dest.pool;
        if (f == 0.0) continue;
        for (int a = 0; a < arcs; ++a) load[a] += f * dest.path[j][a];
      }
      out.push_back(std::move(load));
    }
    return out;
  };
  auto search = [&](const std::vector<std::vector<std::vector<int>>>& splits, double unit,
                    std::vector<std::size_t>& best_pick) {
    std::vector<std::vector<std::vector<double>>> cand;
    for (std::size_t i = 0; i < dests.size(); ++i) {
      cand.push_back(contributions(dests[i], splits[i], unit));
    }
    double best = kInf;
    std::vector<std::size_t> pick(dests.size(), 0);
    std::vector<double> load(arcs);
    std::function<void(std::size_t, std::vector<double>&)> rec = [&](std::size_t i,
                                                                     std::vector<double>& cur) {
      if (i == dests.size()) {
        const double u = max_util(t, cur, cap);
        if (u < best) {
          best = u;
          best_pick = pick;
        }
        return;
      }
      for (std::size_t j = 0; j < cand[i].size(); ++j) {
        pick[i] = j;
        std::vector<double> next = cur;
        for (int a = 0; a < arcs; ++a) next[a] += cand[i][j][a];
        rec(i + 1, next);
      }
    };
    std::vector<double> start = base;
    rec(0, start);
    return best;
  };

  std::vector<std::vector<std::vector<int>>> coarse;
  for (const Dest& dest : dests) {
    std::vector<std::vector<int>> sp;
    compositions(static_cast<int>(dest.path.size()), 100, {}, 0, sp);
    coarse.push_back(std::move(sp));
  }
  std::vector<std::size_t> pick;
  const double coarse_best = search(coarse, 0.01, pick);
  if (dests.empty()) return coarse_best;

  std::vector<std::vector<std::vector<int>>> fine;
  for (std::size_t i = 0; i < dests.size(); ++i) {
    std::vector<int> center = coarse[i][pick[i]];
    for (int& c : center) c *= 10;
    std::vector<std::vector<int>> sp;
    compositions(static_cast<int>(center.size()), 1000, center, 10, sp);
    fine.push_back(std::move(sp));
  }
  std::vector<std::size_t> fine_pick;
  return std::min(coarse_best, search(fine, 0.001, fine_pick));
}

double partition_oracle(const Topology& t, const std::set<int>& borders, const DemandMatrix& d,
                        const std::vector<double>& cap, long long* count) {
  const int n = static_cast<int>(t.node_count());
  const int arcs = static_cast<int>(2 * t.link_count());
  // Sub-domains: components without the borders.
  std::vector<int> label(n, -1);
  int k = 0;
  for (int v = 0; v < n; ++v) {
    if (borders.count(v) || label[v] >= 0) continue;
    std::vector<int> stack{v};
    label[v] = k;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& l : t.links()) {
        int w = -1;
        if (l.a == u) w = l.b;
        if (l.b == u) w = l.a;
        if (w >= 0 && !borders.count(w) && label[w] < 0) {
          label[w] = k;
          stack.push_back(w);
        }
      }
    }
    ++k;
  }
  std::vector<std::vector<int>> adjacent(k);
  for (int b : borders) {
    std::set<int> near;
    for (const auto& l : t.links()) {
      if (l.a == b && label[l.b] >= 0) near.insert(label[l.b]);
      if (l.b == b && label[l.a] >= 0) near.insert(label[l.a]);
    }
    for (int i : near) adjacent[i].push_back(b);
  }

  const auto full = floyd(t);
  // Restricted distances: inside sub-domain i plus border b; outside i.
  std::vector<std::vector<std::vector<std::vector<double>>>> inner(k);
  std::vector<std::vector<std::vector<double>>> outer(k);
  std::vector<std::vector<bool>> outer_allowed(k);
  std::vector<std::vector<std::vector<bool>>> inner_allowed(k);
  for (int i = 0; i < k; ++i) {
    for (int b : adjacent[i]) {
      std::vector<bool> allowed(n, false);
      for (int v = 0; v < n; ++v) allowed[v] = label[v] == i || v == b;
      inner[i].push_back(floyd(t, allowed));
      inner_allowed[i].push_back(allowed);
    }
    outer_allowed[i].assign(n, true);
    for (int v = 0; v < n; ++v) {
      if (label[v] == i) outer_allowed[i][v] = false;
    }
    outer[i] = floyd(t, outer_allowed[i]);
  }

  std::vector<bool> has_demand(n, false);
  for (int s = 0; s < n; ++s) {
    for (int x = 0; x < n; ++x) {
      if (d.at(s, x) > 0.0) has_demand[x] = true;
    }
  }
  struct Key {
    int i, dest;
  };
  std::vector<Key> keys;
  for (int i = 0; i < k; ++i) {
    if (adjacent[i].empty()) continue;
    for (int x = 0; x < n; ++x) {
      if (has_demand[x] && label[x] != i) keys.push_back({i, x});
    }
  }
  std::vector<std::vector<int>> choice(k, std::vector<int>(n, 0));

  auto walk = [&](int s, int x, std::vector<int>& route) {
    route.clear();
    std::vector<bool> seen(n, false);
    int v = s;
    seen[v] = true;
    auto step = [&](int a) {
      if (a < 0) return false;
      route.push_back(a);
      v = head(t, a);
      if (seen[v]) return false;
      seen[v] = true;
      return true;
    };
    const int home = label[x];
    int steered = -1;
    while (v != x) {
      const int i = label[v];
      if (i >= 0 && i == home) {
        while (v != x) {
          if (!step(next_arc(t, full, v, x))) return false;
        }
        break;
      }
      if (i >= 0) {
        steered = -1;
        const int opt = choice[i][x];
        if (opt == 0) {
          if (!step(next_arc(t, full, v, x))) return false;
          continue;
        }
        const int b = adjacent[i][opt - 1];
        while (v != b) {
          if (!step(next_arc(t, inner[i][opt - 1], v, b, inner_allowed[i][opt - 1]))) return false;
        }
        steered = i;
        continue;
      }
      if (steered >= 0) {
        do {
          if (!step(next_arc(t, outer[steered], v, x, outer_allowed[steered]))) return false;
        } while (v != x && label[v] < 0);
        steered = -1;
        continue;
      }
      if (!step(next_arc(t, full, v, x))) return false;
    }
    return true;
  };

  double best = kInf;
  long long evaluated = 0;
  std::vector<int> route;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == keys.size()) {
      ++evaluated;
      std::vector<double> load(arcs, 0.0);
      for (int s = 0; s < n; ++s) {
        for (int x = 0; x < n; ++x) {
          if (d.at(s, x) <= 0.0) continue;
          if (!walk(s, x, route)) return;
          for (int a : route) load[a] += d.at(s, x);
        }
      }
      best = std::min(best, max_util(t, load, cap));
      return;
    }
    const Key& key = keys[j];
    for (int opt = 0; opt <= static_cast<int>(adjacent[key.i].size()); ++opt) {
      choice[key.i][key.dest] = opt;
      rec(j + 1);
    }
    choice[key.i][key.dest] = 0;
  };
  rec(0);
  if (count) *count = evaluated;
  return best;
}

}  // namespace oracle

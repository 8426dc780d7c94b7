#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace ballot::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kTiny = 1e-12;

bool is_free_col(const std::vector<double>& lb, const std::vector<double>& ub, std::size_t j) {
  return ub[j] - lb[j] > kTiny;
}

}  // namespace

std::size_t dense_lp_size(const CompiledModel& cm, const std::vector<double>& lb, const std::vector<double>& ub,
                          const std::vector<char>& active) {
  std::size_t cols = 0;
  for (std::size_t j = 0; j < cm.cols; ++j) cols += is_free_col(lb, ub, j) ? 1 : 0;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < cm.rows; ++i) rows += active[i] ? 1 : 0;
  return (rows + 1) * cols;
}

LpSolution solve_dense_lp(const CompiledModel& cm, const std::vector<double>& lb, const std::vector<double>& ub,
                          const std::vector<char>& active, const SimplexOptions& opts) {
  const double ftol = opts.feasibility_tol;
  const double otol = opts.optimality_tol;
  LpSolution out;

  std::vector<std::uint32_t> cols;
  std::vector<int> pos(cm.cols, -1);
  for (std::size_t j = 0; j < cm.cols; ++j) {
    if (is_free_col(lb, ub, j)) {
      pos[j] = static_cast<int>(cols.size());
      cols.push_back(static_cast<std::uint32_t>(j));
    }
  }
  const std::size_t J = cols.size();

  std::vector<std::uint32_t> rows;
  for (std::size_t i = 0; i < cm.rows; ++i) {
    if (active[i]) rows.push_back(static_cast<std::uint32_t>(i));
  }
  const std::size_t R = rows.size();
  const std::size_t NV = J + R;

  std::vector<double> lo(NV), hi(NV), cost(NV, 0.0), val(NV, 0.0);
  std::vector<double> T(R * J, 0.0);
  for (std::size_t k = 0; k < J; ++k) {
    lo[k] = lb[cols[k]];
    hi[k] = ub[cols[k]];
    cost[k] = cm.obj[cols[k]];
    val[k] = cost[k] > 0 ? hi[k] : lo[k];
  }
  for (std::size_t r = 0; r < R; ++r) {
    const std::size_t i = rows[r];
    double shift = 0.0, amin = 0.0, amax = 0.0;
    for (std::size_t e = cm.row_start[i]; e < cm.row_start[i + 1]; ++e) {
      const std::size_t j = cm.row_col[e];
      const double a = cm.row_val[e];
      if (pos[j] < 0) {
        shift += a * lb[j];
      } else {
        T[r * J + static_cast<std::size_t>(pos[j])] = a;
        amin += a > 0 ? a * lb[j] : a * ub[j];
        amax += a > 0 ? a * ub[j] : a * lb[j];
      }
    }
    double l = std::max(cm.row_lo[i] - shift, amin);
    double h = std::min(cm.row_hi[i] - shift, amax);
    if (l > h + ftol) return out;
    if (l > h) l = h;
    lo[J + r] = l;
    hi[J + r] = h;
  }

  std::vector<std::size_t> nb(J), bs(R);
  for (std::size_t k = 0; k < J; ++k) nb[k] = k;
  for (std::size_t r = 0; r < R; ++r) bs[r] = J + r;

  auto recompute_basics = [&] {
    for (std::size_t r = 0; r < R; ++r) {
      double s = 0.0;
      const double* row = &T[r * J];
      for (std::size_t k = 0; k < J; ++k) s += row[k] * val[nb[k]];
      val[bs[r]] = s;
    }
  };
  recompute_basics();

  // Phase one relaxes each violated basic bound to the far side and drives
  // the variable back; it rejoins the normal box once it reaches its bound.
  std::vector<signed char> p1(NV, 0);
  std::vector<double> orig_lo(lo), orig_hi(hi);
  std::size_t p1_count = 0;
  for (std::size_t r = 0; r < R; ++r) {
    const std::size_t v = bs[r];
    if (val[v] > hi[v] + ftol) {
      p1[v] = 1;
      lo[v] = orig_hi[v];
      hi[v] = kInf;
      ++p1_count;
    } else if (val[v] < lo[v] - ftol) {
      p1[v] = -1;
      hi[v] = orig_lo[v];
      lo[v] = -kInf;
      ++p1_count;
    }
  }
  auto release = [&](std::size_t v) {
    lo[v] = orig_lo[v];
    hi[v] = orig_hi[v];
    p1[v] = 0;
    --p1_count;
  };

  std::vector<double> d(J, 0.0);
  bool phase1 = p1_count > 0;
  auto price = [&] {
    for (std::size_t k = 0; k < J; ++k) d[k] = phase1 ? 0.0 : cost[nb[k]];
    for (std::size_t r = 0; r < R; ++r) {
      const double cb = phase1 ? -static_cast<double>(p1[bs[r]]) : cost[bs[r]];
      if (cb == 0.0) continue;
      const double* row = &T[r * J];
      for (std::size_t k = 0; k < J; ++k) d[k] += cb * row[k];
    }
  };
  price();

  bool bland = false;
  std::size_t degenerate = 0;
  const std::uint64_t max_iter = 50 * static_cast<std::uint64_t>(NV) + 1000;

  while (true) {
    if (out.iterations >= max_iter) {
      out.status = LpStatus::IterationLimit;
      return out;
    }
    if (phase1) {
      bool changed = false;
      for (std::size_t r = 0; r < R; ++r) {
        const std::size_t v = bs[r];
        if ((p1[v] > 0 && val[v] <= orig_hi[v] + ftol) || (p1[v] < 0 && val[v] >= orig_lo[v] - ftol)) {
          release(v);
          changed = true;
        }
      }
      if (changed) {
        phase1 = p1_count > 0;
        price();
      }
    }

    std::size_t enter = J;
    double best = 0.0;
    for (std::size_t k = 0; k < J; ++k) {
      const std::size_t v = nb[k];
      if (hi[v] - lo[v] <= kTiny) continue;
      const bool up = d[k] > otol && val[v] < hi[v] - kTiny;
      const bool down = d[k] < -otol && val[v] > lo[v] + kTiny;
      if (!up && !down) continue;
      if (bland) {
        if (enter == J || v < nb[enter]) enter = k;
      } else if (std::abs(d[k]) > best) {
        best = std::abs(d[k]);
        enter = k;
      }
    }
    if (enter == J) {
      if (phase1) return out;
      break;
    }

    const double dir = d[enter] > 0 ? 1.0 : -1.0;
    const std::size_t e = nb[enter];
    double theta = hi[e] - lo[e];
    std::size_t leave = R;
    double leave_g = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double g = T[r * J + enter] * dir;
      if (std::abs(g) < kPivotTol) continue;
      const std::size_t v = bs[r];
      double lim;
      if (g > 0) {
        if (hi[v] == kInf) continue;
        lim = (hi[v] - val[v]) / g;
      } else {
        if (lo[v] == -kInf) continue;
        lim = (lo[v] - val[v]) / g;
      }
      if (lim < 0) lim = 0;
      if (lim < theta - kTiny) {
        theta = lim;
        leave = r;
        leave_g = std::abs(g);
      } else if (leave < R && lim <= theta + kTiny) {
        const bool better = bland ? v < bs[leave] : std::abs(g) > leave_g;
        if (better) {
          leave = r;
          leave_g = std::abs(g);
        }
      }
    }
    if (theta == kInf) {
      out.status = LpStatus::Unbounded;
      return out;
    }

    const double step = dir * theta;
    val[e] += step;
    for (std::size_t r = 0; r < R; ++r) {
      const double t = T[r * J + enter];
      if (t != 0.0) val[bs[r]] += t * step;
    }
    ++out.iterations;

    if (leave == R) {
      val[e] = dir > 0 ? hi[e] : lo[e];
      degenerate = 0;
    } else {
      const std::size_t lv = bs[leave];
      const bool rises = T[leave * J + enter] * dir > 0;
      val[lv] = rises ? hi[lv] : lo[lv];
      bool reprice = false;
      if (p1[lv] != 0) {
        release(lv);
        reprice = true;
      }

      double* prow = &T[leave * J];
      const double inv = 1.0 / prow[enter];
      for (std::size_t k = 0; k < J; ++k) prow[k] = -prow[k] * inv;
      prow[enter] = inv;
      for (std::size_t r = 0; r < R; ++r) {
        if (r == leave) continue;
        double* row = &T[r * J];
        const double f = row[enter];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < J; ++k) row[k] += f * prow[k];
        row[enter] = f * inv;
      }
      const double fd = d[enter];
      for (std::size_t k = 0; k < J; ++k) d[k] += fd * prow[k];
      d[enter] = fd * inv;

      bs[leave] = e;
      nb[enter] = lv;

      if (theta <= kTiny) {
        if (++degenerate > opts.degeneracy_window) bland = true;
      } else {
        degenerate = 0;
      }
      if (reprice) {
        phase1 = p1_count > 0;
        price();
      }
    }
    if (out.iterations % 64 == 0) recompute_basics();
  }

  recompute_basics();
  for (std::size_t r = 0; r < R; ++r) {
    const std::size_t v = bs[r];
    if (val[v] < lo[v] - 10 * ftol || val[v] > hi[v] + 10 * ftol) {
      out.status = LpStatus::IterationLimit;
      return out;
    }
  }

  out.status = LpStatus::Optimal;
  out.x.assign(cm.cols, 0.0);
  for (std::size_t j = 0; j < cm.cols; ++j) {
    out.x[j] = pos[j] < 0 ? lb[j] : std::min(ub[j], std::max(lb[j], val[static_cast<std::size_t>(pos[j])]));
  }
  out.value = 0.0;
  for (std::size_t j = 0; j < cm.cols; ++j) out.value += cm.obj[j] * out.x[j];
  return out;
}

}  // namespace ballot::detail

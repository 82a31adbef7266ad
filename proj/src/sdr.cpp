#include "bvmin/sdr.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace bvmin {

namespace {

void report_nonzero(McReport& rep, const std::string& family, const std::string& what,
                    const Mat& a) {
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t k = 0; k < a[j].size(); ++k)
      if (a[j][k] != 0) {
        rep.residuals.push_back({family, 0,
                                 what + " has entry " + rat_str(a[j][k]) + " at (" +
                                     std::to_string(j) + "," + std::to_string(k) + ")"});
        rep.ok = false;
        return;
      }
}

// Deterministic column-space basis: columns taken left to right, pivot at the
// topmost surviving row.
std::vector<std::vector<Rat>> col_space(const Mat& a) {
  int rows = int(a.size());
  int cols = rows ? int(a[0].size()) : 0;
  std::vector<std::vector<Rat>> basis;
  std::vector<int> prow;
  for (int k = 0; k < cols; ++k) {
    std::vector<Rat> col(rows, Rat(0));
    for (int j = 0; j < rows; ++j) col[j] = a[j][k];
    for (size_t b = 0; b < basis.size(); ++b) {
      if (col[prow[b]] == 0) continue;
      Rat f = col[prow[b]] / basis[b][prow[b]];
      for (int j = 0; j < rows; ++j) col[j] -= f * basis[b][j];
    }
    int row = -1;
    for (int j = 0; j < rows; ++j)
      if (col[j] != 0) { row = j; break; }
    if (row >= 0) {
      basis.push_back(std::move(col));
      prow.push_back(row);
    }
  }
  return basis;
}

int vector_parity(const SpacePtr& space, const std::vector<Rat>& v) {
  for (size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return space->par(int(j));
  return 0;
}

// i p with the square shape pinned, so a zero-dimensional small space works.
Mat include_project(const Mat& i, const Mat& p, int n) {
  Mat r = mat_zero(n, n);
  for (int j = 0; j < n; ++j)
    for (size_t t = 0; t < p.size(); ++t)
      if (i[j][t] != 0)
        for (int k = 0; k < n; ++k) r[j][k] += i[j][t] * p[t][k];
  return r;
}

}  // namespace

McReport verify_sdr(const SDRData& x) {
  int n = x.big->dim();
  int m = x.small->dim();
  auto shape = [&](const Mat& a, int rows, int cols, const char* what) {
    if (int(a.size()) != rows) throw std::invalid_argument(std::string(what) + ": bad row count");
    for (auto& row : a)
      if (int(row.size()) != cols) throw std::invalid_argument(std::string(what) + ": bad column count");
  };
  shape(x.i, n, m, "i");
  shape(x.p, m, n, "p");
  shape(x.s, n, n, "s");

  McReport rep;
  auto parity_check = [&](const Mat& a, const char* what, auto par_target, auto par_source,
                          int shift) {
    for (size_t j = 0; j < a.size(); ++j)
      for (size_t k = 0; k < a[j].size(); ++k)
        if (a[j][k] != 0 && par_target(int(j)) != ((par_source(int(k)) + shift) & 1)) {
          rep.residuals.push_back({"parity", 0,
                                   std::string(what) + "[" + std::to_string(j) + "][" +
                                       std::to_string(k) + "] crosses parity"});
          rep.ok = false;
          return;
        }
  };
  auto big_par = [&](int k) { return x.big->par(k); };
  auto small_par = [&](int k) { return x.small->par(k); };
  parity_check(x.i, "i", big_par, small_par, 0);
  parity_check(x.p, "p", small_par, big_par, 0);
  parity_check(x.s, "s", big_par, big_par, 1);

  const Mat& db = x.big->d;
  const Mat& ds = x.small->d;
  report_nonzero(rep, "chain", "d i - i d", mat_sub(mat_mul(db, x.i), mat_mul(x.i, ds)));
  report_nonzero(rep, "chain", "p d - d p", mat_sub(mat_mul(x.p, db), mat_mul(ds, x.p)));
  report_nonzero(rep, "retract", "p i - 1", mat_sub(mat_mul(x.p, x.i), mat_id(m)));
  Mat homo = mat_add(mat_mul(db, x.s), mat_mul(x.s, db));
  report_nonzero(rep, "homotopy", "d s + s d + i p - 1",
                 mat_sub(mat_add(homo, include_project(x.i, x.p, n)), mat_id(n)));
  report_nonzero(rep, "side", "s i", mat_mul(x.s, x.i));
  report_nonzero(rep, "side", "p s", mat_mul(x.p, x.s));
  report_nonzero(rep, "side", "s s", mat_mul(x.s, x.s));
  return rep;
}

SDRData compute_homology_sdr(const SpacePtr& v) {
  int n = v->dim();
  const Mat& d = v->d;

  // Column elimination with preimage tracking: each surviving column gives an
  // image basis vector w = d(u); fully reduced columns give kernel vectors.
  struct Pivot {
    int row;
    std::vector<Rat> w, u;
  };
  std::vector<Pivot> pivots;
  std::vector<std::vector<Rat>> kernel;
  for (int k = 0; k < n; ++k) {
    std::vector<Rat> col(n, Rat(0)), pre(n, Rat(0));
    for (int j = 0; j < n; ++j) col[j] = d[j][k];
    pre[k] = 1;
    for (auto& pv : pivots) {
      if (col[pv.row] == 0) continue;
      Rat f = col[pv.row] / pv.w[pv.row];
      for (int j = 0; j < n; ++j) {
        col[j] -= f * pv.w[j];
        pre[j] -= f * pv.u[j];
      }
    }
    int row = -1;
    for (int j = 0; j < n; ++j)
      if (col[j] != 0) { row = j; break; }
    if (row < 0)
      kernel.push_back(std::move(pre));
    else
      pivots.push_back({row, std::move(col), std::move(pre)});
  }

  // Extend the image basis inside the kernel; what survives represents homology.
  std::vector<std::pair<int, std::vector<Rat>>> seen;
  for (auto& pv : pivots) seen.push_back({pv.row, pv.w});
  std::vector<std::vector<Rat>> reps;
  for (auto& kv : kernel) {
    std::vector<Rat> cur = kv;
    for (auto& [row, w] : seen) {
      if (cur[row] == 0) continue;
      Rat f = cur[row] / w[row];
      for (int j = 0; j < n; ++j) cur[j] -= f * w[j];
    }
    int row = -1;
    for (int j = 0; j < n; ++j)
      if (cur[j] != 0) { row = j; break; }
    if (row < 0) continue;
    seen.push_back({row, cur});
    reps.push_back(std::move(cur));
  }

  int r = int(pivots.size());
  int m = int(reps.size());
  if (m + 2 * r != n) throw std::logic_error("rank bookkeeping broke");

  Mat basis = mat_zero(n, n);
  for (int t = 0; t < m; ++t)
    for (int j = 0; j < n; ++j) basis[j][t] = reps[t][j];
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < n; ++j) {
      basis[j][m + a] = pivots[a].w[j];
      basis[j][m + r + a] = pivots[a].u[j];
    }
  Mat coords = mat_inverse(basis);

  std::vector<std::string> names;
  std::vector<Parity> pars;
  for (int t = 0; t < m; ++t) {
    names.push_back("h" + std::to_string(t));
    pars.push_back(Parity(vector_parity(v, reps[t])));
  }

  SDRData out;
  out.big = v;
  out.small = make_space(std::move(names), std::move(pars));
  out.i = mat_zero(n, m);
  for (int t = 0; t < m; ++t)
    for (int j = 0; j < n; ++j) out.i[j][t] = reps[t][j];
  out.p = mat_zero(m, n);
  for (int t = 0; t < m; ++t)
    for (int k = 0; k < n; ++k) out.p[t][k] = coords[t][k];
  out.s = mat_zero(n, n);
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < n; ++j) {
      if (pivots[a].u[j] == 0) continue;
      for (int k = 0; k < n; ++k) out.s[j][k] += pivots[a].u[j] * coords[m + a][k];
    }
  return out;
}

SDRData repair_side_conditions(const SDRData& x) {
  int n = x.big->dim();
  int m = x.small->dim();
  const Mat& db = x.big->d;
  const Mat& ds = x.small->d;
  auto demand = [&](const Mat& a, const char* what) {
    if (!mat_is_zero(a)) throw std::invalid_argument(std::string("repair needs ") + what);
  };
  demand(mat_sub(mat_mul(db, x.i), mat_mul(x.i, ds)), "chain maps");
  demand(mat_sub(mat_mul(x.p, db), mat_mul(ds, x.p)), "chain maps");
  demand(mat_sub(mat_mul(x.p, x.i), mat_id(m)), "a retract");
  Mat homo = mat_add(mat_mul(db, x.s), mat_mul(x.s, db));
  demand(mat_sub(mat_add(homo, include_project(x.i, x.p, n)), mat_id(n)), "a homotopy");

  Mat t = mat_mul(mat_mul(homo, x.s), homo);
  SDRData out = x;
  out.s = mat_mul(mat_mul(t, db), t);
  return out;
}

SDRData dual_sdr(const SDRData& x) {
  int n = x.big->dim();
  int m = x.small->dim();
  SDRData out;
  out.big = dual_space(x.big);
  out.small = dual_space(x.small);
  out.i = mat_zero(n, m);
  out.p = mat_zero(m, n);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < m; ++t) {
      out.i[j][t] = x.p[t][j];
      out.p[t][j] = x.i[j][t];
    }
  out.s = mat_zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      out.s[k][j] = (x.big->par(j) ? -x.s[j][k] : x.s[j][k]);
  return out;
}

SDRData double_sdr(const SDRData& base, Parity kind) {
  if (!verify_sdr(base).ok) throw std::invalid_argument("double_sdr: invalid retract");
  const SpacePtr& v = base.big;
  int n = v->dim();
  int m = base.small->dim();
  SpacePtr bigc = underlying_space(make_double(v, kind).total());
  SpacePtr smallc = underlying_space(make_double(base.small, kind).total());
  int nn = 2 * n;

  Mat bi = mat_zero(nn, 2 * m), bp = mat_zero(2 * m, nn);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < m; ++t) {
      bi[j][t] = base.i[j][t];
      bi[n + j][m + t] = base.p[t][j];
      bp[t][j] = base.p[t][j];
      bp[m + t][n + j] = base.i[j][t];
    }
  auto partner_s = [&](int xsign, int tau, int alpha, int beta) {
    Mat bs = mat_zero(nn, nn);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        bs[j][k] = Rat(xsign) * base.s[j][k];
        int flip = alpha * v->par(j) + beta * v->par(k);
        Rat dual = (flip & 1) ? -base.s[j][k] : base.s[j][k];
        bs[n + k][n + j] = Rat(tau) * dual;
      }
    return bs;
  };
  SDRData out{bigc, smallc, bi, bp, partner_s(1, -1, 1, 0)};
  for (int xsign : {1, -1})
    for (int tau : {-1, 1})
      for (int alpha : {1, 0})
        for (int beta : {0, 1}) {
          out.s = partner_s(xsign, tau, alpha, beta);
          if (verify_sdr(out).ok) return out;
        }
  throw std::logic_error("no homotopy sign fits the double");
}

LagrangianData induced_double_sdr(const SDRData& base) {
  if (!verify_sdr(base).ok) throw std::invalid_argument("induced_double_sdr: invalid retract");
  const SpacePtr& v = base.big;
  int n = v->dim();
  int m = base.small->dim();

  LagrangianData lag;
  lag.dbl = make_double(v, Parity::odd);
  lag.hdbl = make_double(base.small, Parity::odd);
  lag.sdr = double_sdr(base, Parity::odd);
  SpacePtr bigc = lag.sdr.big;
  int nn = 2 * n;

  lag.sigma = scale(double_odd(lag.dbl, lift_differential(lag.dbl.coords, 1)), Rat(2));
  lag.live_row = mat_mul(lag.sdr.s, bigc->d);

  // The Lagrangian im(s) splits into a base half spanned by s-images of the
  // conjugate directions and a partner half carrying their dual functionals.
  Mat dshalf = mat_mul(v->d, base.s);
  auto conj_dirs = col_space(dshalf);
  int r = int(conj_dirs.size());
  if (m + 2 * r != n) throw std::logic_error("decomposition rank mismatch");

  std::vector<std::vector<Rat>> ells;
  for (auto& e : conj_dirs) ells.push_back(mat_apply(base.s, e));

  Mat split = mat_zero(n, n);
  for (int t = 0; t < m; ++t)
    for (int j = 0; j < n; ++j) split[j][t] = base.i[j][t];
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < n; ++j) {
      split[j][m + a] = conj_dirs[a][j];
      split[j][m + r + a] = ells[a][j];
    }
  Mat split_coords = mat_inverse(split);

  lag.lag_basis = mat_zero(2 * r, nn);
  std::vector<int> half_par(r, 0);
  for (int a = 0; a < r; ++a) {
    half_par[a] = vector_parity(v, ells[a]);
    for (int j = 0; j < n; ++j) lag.lag_basis[a][j] = ells[a][j];
    for (int j = 0; j < n; ++j) {
      Rat c(0);
      for (int i2 = 0; i2 < n; ++i2) c += split_coords[m + r + a][i2] * base.s[i2][j];
      if (half_par[a]) c = -c;
      lag.lag_basis[r + a][n + j] = c;
    }
  }
  lag.conj_basis = mat_zero(2 * r, nn);
  for (int a = 0; a < 2 * r; ++a) lag.conj_basis[a] = mat_apply(bigc->d, lag.lag_basis[a]);

  // Restrict the weight to the Lagrangian: it must split into conjugate pairs,
  // one per basis pair, with nothing across pairs.
  std::vector<std::string> pn;
  std::vector<Parity> pp;
  for (int a = 0; a < r; ++a) pn.push_back("u" + std::to_string(a));
  for (int a = 0; a < r; ++a) pn.push_back("v" + std::to_string(a));
  for (int round = 0; round < 2; ++round)
    for (int a = 0; a < r; ++a) pp.push_back(Parity((half_par[a] + 1) & 1));
  SpacePtr aux = make_space(pn, pp);
  std::vector<Poly> images;
  for (int z = 0; z < nn; ++z) {
    Poly f = poly_zero(aux, 2);
    for (int a = 0; a < 2 * r; ++a)
      if (lag.lag_basis[a][z] != 0)
        f = add(f, scale(poly_gen(aux, 2, a), lag.lag_basis[a][z]));
    images.push_back(f);
  }
  Poly restricted = substitute(lag.sigma, aux, 2, images);
  std::vector<Rat> pair_coef(r, Rat(0));
  for (auto& [w, c] : restricted.terms) {
    if (w.size() != 2 || w[0] >= r || w[1] != w[0] + r)
      throw std::logic_error("quadratic weight fails to split into pairs");
    pair_coef[w[0]] = c;
  }
  for (int a = 0; a < r; ++a)
    if (pair_coef[a] == 0) throw std::logic_error("degenerate pair in the quadratic weight");

  lag.prop = mat_zero(nn, nn);
  for (int a = 0; a < r; ++a) {
    int cp = (half_par[a] + 1) & 1;
    Rat two_point = Rat(2 * kPropagatorSign) / pair_coef[a];
    if (cp) two_point = -two_point;
    for (int x2 = 0; x2 < nn; ++x2) {
      if (lag.lag_basis[a][x2] == 0 && lag.lag_basis[r + a][x2] == 0) continue;
      for (int y2 = 0; y2 < nn; ++y2) {
        Rat fwd = lag.lag_basis[a][x2] * lag.lag_basis[r + a][y2];
        Rat bwd = lag.lag_basis[r + a][x2] * lag.lag_basis[a][y2];
        if (cp) bwd = -bwd;
        lag.prop[x2][y2] += two_point * (fwd + bwd);
      }
    }
  }
  return lag;
}

}  // namespace bvmin

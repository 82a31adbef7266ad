#include "bvmin/htt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvmin {

namespace {

// Nondecreasing index tuples of the given length, lexicographic.
bool next_tuple(Word& w, int dim) {
  for (int pos = int(w.size()) - 1; pos >= 0; --pos) {
    if (int(w[pos]) + 1 < dim) {
      unsigned char up = static_cast<unsigned char>(w[pos] + 1);
      for (size_t t = size_t(pos); t < w.size(); ++t) w[t] = up;
      return true;
    }
  }
  return false;
}

std::map<int, Rat> family_value(const MultilinearFamily& fam, const Word& w) {
  const size_t n = w.size();
  if (n >= fam.maps.size()) return {};
  auto it = fam.maps[n].find(w);
  if (it == fam.maps[n].end()) return {};
  return it->second;
}

std::vector<Rat> apply_matrix(const Mat& m, const std::vector<Rat>& v) {
  std::vector<Rat> r(m.size(), Rat(0));
  for (size_t j = 0; j < m.size(); ++j)
    for (size_t k = 0; k < v.size(); ++k)
      if (m[j][k] != 0 && v[k] != 0) r[j] += m[j][k] * v[k];
  return r;
}

struct NodeValue {
  std::vector<Rat> vec;  // over the ambient basis
  int arg_par = 0;       // parity of the arguments fed in below
  int op_par = 0;        // parity of the operator stack below
};

struct TreeEval {
  const MultilinearFamily& fam;
  const SDRData& sdr;
  const SpacePtr shifted_small;
  const std::vector<int>& args;  // small basis indices in planar leaf order
  int next_leaf = 0;

  TreeEval(const MultilinearFamily& f, const SDRData& r,
           const std::vector<int>& a)
      : fam(f), sdr(r), shifted_small(parity_flip(r.small)), args(a) {}

  NodeValue run(const RootedTree& node, bool root) {
    const int nbig = sdr.big->dim();
    if (node.leaf()) {
      const int t = args[next_leaf++];
      NodeValue leaf;
      leaf.vec.assign(nbig, Rat(0));
      for (int j = 0; j < nbig; ++j) leaf.vec[j] = sdr.i[j][t];
      leaf.arg_par = shifted_small->par(t);
      return leaf;
    }

    std::vector<NodeValue> child;
    child.reserve(node.sub.size());
    for (auto& c : node.sub) child.push_back(run(c, false));

    // Distributing the child operators over the concatenated arguments costs
    // a sign for every operator jumping the arguments to its left.
    int swaps = 0, seen_args = 0;
    for (auto& c : child) {
      swaps += c.op_par * seen_args;
      seen_args = (seen_args + c.arg_par) & 1;
    }

    NodeValue out;
    out.vec.assign(nbig, Rat(0));
    for (auto& c : child) {
      out.arg_par = (out.arg_par + c.arg_par) & 1;
      out.op_par = (out.op_par + c.op_par) & 1;
    }
    out.op_par = (out.op_par + 1) & 1;  // the vertex operation is odd

    const int k = int(node.sub.size());
    Word tuple(size_t(k), 0);
    std::vector<Rat> coef(static_cast<size_t>(k));
    expand(child, tuple, coef, 0, (swaps & 1) ? Rat(-1) : Rat(1), out.vec);

    if (root) {
      out.vec = apply_matrix(sdr.p, out.vec);
    } else {
      out.vec = apply_matrix(sdr.s, out.vec);
      out.op_par = (out.op_par + 1) & 1;
    }
    return out;
  }

  void expand(const std::vector<NodeValue>& child, Word& tuple,
              std::vector<Rat>& coef, int depth, const Rat& carry,
              std::vector<Rat>& acc) {
    if (depth == int(child.size())) {
      for (auto& [j, v] : family_value(fam, tuple)) acc[j] += carry * v;
      return;
    }
    const auto& vec = child[depth].vec;
    for (size_t b = 0; b < vec.size(); ++b) {
      if (vec[b] == 0) continue;
      tuple[depth] = static_cast<unsigned char>(b);
      expand(child, tuple, coef, depth + 1, carry * vec[b], acc);
    }
  }
};

// Koszul sign of bringing the arguments, listed in the order perm, back to
// their original order.
int perm_sign(const std::vector<int>& perm, const Word& w, const SpacePtr& sh) {
  int swaps = 0;
  for (size_t a = 0; a < perm.size(); ++a)
    for (size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b])
        swaps += sh->par(w[perm[a]]) * sh->par(w[perm[b]]);
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

MultilinearFamily htt_transfer(const MultilinearFamily& fam, const SDRData& sdr,
                               int n_max) {
  require_same_space(fam.base, sdr.big, "htt_transfer");
  if (n_max < 2) throw std::invalid_argument("htt_transfer: arity bound too small");
  if (!verify_sdr(sdr).ok)
    throw std::invalid_argument("htt_transfer: invalid retract");
  if (!brute_force_mc(fam, fam.cutoff).ok)
    throw std::invalid_argument("htt_transfer: input fails Maurer-Cartan");

  const int msmall = sdr.small->dim();
  auto shifted_small = parity_flip(sdr.small);
  MultilinearFamily out = family_zero(sdr.small, n_max);

  for (int n = 2; n <= n_max; ++n) {
    const int widest = std::min(n, fam.cutoff);
    auto shapes = enumerate_trees(n, widest + 1);
    if (shapes.empty() || msmall == 0) continue;

    Word tuple(size_t(n), 0);
    do {
      if (normalize_word(*shifted_small, tuple).second == 0) continue;
      std::vector<Rat> value(size_t(msmall), Rat(0));
      for (auto& shape : shapes) {
        std::vector<Rat> shape_sum(size_t(msmall), Rat(0));
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
          std::vector<int> args(static_cast<size_t>(n));
          for (int t = 0; t < n; ++t) args[t] = tuple[perm[t]];
          TreeEval ev(fam, sdr, args);
          NodeValue res = ev.run(shape, true);
          const Rat sg(perm_sign(perm, tuple, shifted_small));
          for (int j = 0; j < msmall; ++j) shape_sum[j] += sg * res.vec[j];
        } while (std::next_permutation(perm.begin(), perm.end()));
        Rat norm = Rat(1) / Rat(tree_automorphisms(shape));
        for (int j = 0; j < msmall; ++j) value[j] += norm * shape_sum[j];
      }
      for (int j = 0; j < msmall; ++j)
        if (value[j] != 0) family_add_symmetric(out, tuple, j, value[j]);
    } while (next_tuple(tuple, msmall));
  }
  return out;
}

McReport brute_force_mc(const MultilinearFamily& fam, int n_max) {
  McReport rep;
  const int dim = fam.base->dim();
  auto shifted = parity_flip(fam.base);
  const Mat& d = fam.base->d;

  for (int n = 1; n <= std::min(n_max, fam.cutoff); ++n) {
    Word tuple(size_t(n), 0);
    if (dim == 0) break;
    do {
      if (normalize_word(*shifted, tuple).second == 0) continue;
      std::map<int, Rat> total;

      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Word inner, outer;
        for (int t = 0; t < n; ++t)
          (mask >> t & 1 ? inner : outer).push_back(tuple[t]);
        int swaps = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (!(mask >> a & 1) && (mask >> b & 1))
              swaps += shifted->par(tuple[a]) * shifted->par(tuple[b]);
        const Rat chi((swaps & 1) ? -1 : 1);

        std::map<int, Rat> first;
        if (inner.size() == 1) {
          for (int j = 0; j < dim; ++j)
            if (d[j][inner[0]] != 0) first[j] = d[j][inner[0]];
        } else {
          first = family_value(fam, inner);
        }

        for (auto& [b, cb] : first) {
          if (outer.empty()) {
            for (int j = 0; j < dim; ++j)
              if (d[j][b] != 0) total[j] += chi * cb * d[j][b];
            continue;
          }
          Word rest;
          rest.push_back(static_cast<unsigned char>(b));
          rest.insert(rest.end(), outer.begin(), outer.end());
          for (auto& [j, v] : family_value(fam, rest)) total[j] += chi * cb * v;
        }
      }

      for (auto& [j, v] : total)
        if (v != 0) {
          std::string where = "tuple";
          for (auto l : tuple) where += " " + fam.base->names[l];
          rep.residuals.push_back(
              {"jacobi", n, where + " -> " + fam.base->names[j] + ": " + rat_str(v)});
          rep.ok = false;
        }
    } while (next_tuple(tuple, dim));
  }
  return rep;
}

}  // namespace bvmin

#include "bvmin/superspace.hpp"

#include <stdexcept>

namespace bvmin {

int SuperSpace::find(const std::string& name) const {
  for (int k = 0; k < dim(); ++k)
    if (names[k] == name) return k;
  return -1;
}

bool SuperSpace::zero_differential() const {
  for (auto& col : d)
    for (auto& c : col)
      if (c != 0) return false;
  return true;
}

void SuperSpace::validate() const {
  int n = dim();
  if (int(parities.size()) != n || int(d.size()) != n)
    throw std::invalid_argument("superspace: inconsistent field sizes");
  for (auto& col : d)
    if (int(col.size()) != n) throw std::invalid_argument("superspace: ragged differential");
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (d[j][k] != 0 && par(j) == par(k))
        throw std::invalid_argument("superspace: differential not odd at " + names[k]);
  // d^2 = 0
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      Rat acc = 0;
      for (int j = 0; j < n; ++j) acc += d[i][j] * d[j][k];
      if (acc != 0)
        throw std::invalid_argument("superspace: differential does not square to zero");
    }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      if (names[j] == names[k])
        throw std::invalid_argument("superspace: duplicate generator name " + names[k]);
}

SpacePtr make_space(std::vector<std::string> names, std::vector<Parity> parities,
                    std::vector<std::vector<Rat>> d) {
  auto s = std::make_shared<SuperSpace>();
  s->names = std::move(names);
  s->parities = std::move(parities);
  s->d = std::move(d);
  s->validate();
  return s;
}

SpacePtr make_space(std::vector<std::string> names, std::vector<Parity> parities) {
  int n = int(names.size());
  std::vector<std::vector<Rat>> zero(n, std::vector<Rat>(n, Rat(0)));
  return make_space(std::move(names), std::move(parities), std::move(zero));
}

SpacePtr parity_flip(const SpacePtr& s) {
  auto t = std::make_shared<SuperSpace>(*s);
  for (auto& p : t->parities) p = p + Parity::odd;
  t->validate();
  return t;
}

SpacePtr dual_space(const SpacePtr& s) {
  int n = s->dim();
  auto t = std::make_shared<SuperSpace>();
  t->parities = s->parities;
  for (auto& nm : s->names) t->names.push_back(nm + "*");
  t->d.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      t->d[j][k] = (s->par(k) ? s->d[k][j] : -s->d[k][j]);
  t->validate();
  return t;
}

SpacePtr coordinate_space(const SpacePtr& v) {
  int n = v->dim();
  auto t = std::make_shared<SuperSpace>();
  t->names = v->names;
  for (auto p : v->parities) t->parities.push_back(p + Parity::odd);
  t->d.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      t->d[j][k] = (t->par(k) ? v->d[k][j] : -v->d[k][j]);
  t->validate();
  return t;
}

SpacePtr underlying_space(const SpacePtr& w) {
  int n = w->dim();
  auto t = std::make_shared<SuperSpace>();
  t->names = w->names;
  for (auto p : w->parities) t->parities.push_back(p + Parity::odd);
  t->d.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      t->d[k][j] = (w->par(k) ? w->d[j][k] : -w->d[j][k]);
  t->validate();
  return t;
}

bool same_structure(const SuperSpace& a, const SuperSpace& b) {
  return a.names == b.names && a.parities == b.parities && a.d == b.d;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
  if (a == b) return;
  if (!a || !b || !same_structure(*a, *b))
    throw std::invalid_argument(std::string(where) + ": space mismatch");
}

}  // namespace bvmin

#include <map>
#include <sstream>

#include "fk/catsys.hpp"
#include "json.hpp"

namespace fk {

FiniteCategory FiniteCategory::skeleton(std::vector<std::string> objects, std::vector<int> src, std::vector<int> dst,
                                        std::vector<int> ident, std::vector<std::string> labels) {
  FiniteCategory c;
  int n = int(objects.size()), m = int(src.size());
  if (int(dst.size()) != m || int(ident.size()) != n) throw InputError("category: inconsistent sizes");
  if (labels.empty())
    for (int i = 0; i < m; ++i) labels.push_back("m" + std::to_string(i));
  if (std::size_t(m) * std::size_t(m) > std::size_t(1) << 28) throw BoundExceeded("category too large for a dense table");
  c.objects_ = std::move(objects);
  c.src_ = std::move(src);
  c.dst_ = std::move(dst);
  c.ident_ = std::move(ident);
  c.labels_ = std::move(labels);
  c.table_.assign(std::size_t(m) * m, -1);
  c.hom_.assign(std::size_t(n) * n, {});
  c.into_.assign(n, {});
  c.out_.assign(n, {});
  for (int i = 0; i < m; ++i) {
    if (c.src_[i] < 0 || c.src_[i] >= n || c.dst_[i] < 0 || c.dst_[i] >= n) throw InputError("category: bad endpoint");
    c.hom_[std::size_t(c.src_[i]) * n + c.dst_[i]].push_back(i);
    c.into_[c.dst_[i]].push_back(i);
    c.out_[c.src_[i]].push_back(i);
  }
  return c;
}

int FiniteCategory::inverse(int m) const {
  for (int k : hom(dst(m), src(m)))
    if (compose(k, m) == identity(src(m)) && compose(m, k) == identity(dst(m))) return k;
  return -1;
}

std::optional<std::string> FiniteCategory::check_laws() const {
  int m = num_morphisms();
  for (int a = 0; a < num_objects(); ++a) {
    int e = identity(a);
    if (e < 0 || e >= m || src(e) != a || dst(e) != a) return "identity of " + object_name(a) + " is not an endomorphism";
  }
  for (int f = 0; f < m; ++f) {
    if (compose(identity(dst(f)), f) != f || compose(f, identity(src(f))) != f)
      return "identity law fails at " + label(f);
  }
  for (int g = 0; g < m; ++g)
    for (int f : into(src(g))) {
      int gf = compose(g, f);
      if (gf < 0 || src(gf) != src(f) || dst(gf) != dst(g))
        return "composite " + label(g) + " o " + label(f) + " has wrong endpoints";
    }
  for (int h = 0; h < m; ++h)
    for (int g : into(src(h))) {
      int hg = compose(h, g);
      for (int f : into(src(g)))
        if (compose(hg, f) != compose(h, compose(g, f)))
          return "associativity fails at (" + label(h) + ", " + label(g) + ", " + label(f) + ")";
    }
  return std::nullopt;
}

std::string FiniteCategory::to_json() const {
  nlohmann::ordered_json j;
  j["objects"] = objects_;
  nlohmann::ordered_json mors = nlohmann::ordered_json::array();
  for (int i = 0; i < num_morphisms(); ++i) mors.push_back({i, src_[i], dst_[i], labels_[i]});
  j["morphisms"] = mors;
  j["identities"] = ident_;
  nlohmann::ordered_json comp = nlohmann::ordered_json::array();
  for (int g = 0; g < num_morphisms(); ++g)
    for (int f : into(src_[g])) comp.push_back({g, f, compose(g, f)});
  j["composition"] = comp;
  return j.dump();
}

FiniteGroup automorphism_group(const FiniteCategory& C, int a, std::vector<int>* ids) {
  std::vector<int> mor = C.hom(a, a);
  int e = C.identity(a);
  std::erase(mor, e);
  mor.insert(mor.begin(), e);
  std::map<int, int> pos;
  for (int i = 0; i < int(mor.size()); ++i) pos[mor[i]] = i;
  int n = int(mor.size());
  std::vector<int> table(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = pos.find(C.compose(mor[i], mor[j]));
      if (it == pos.end()) throw StructureError("endomorphisms of " + C.object_name(a) + " not closed");
      table[std::size_t(i) * n + j] = it->second;
    }
  std::vector<std::string> labels;
  for (int x : mor) labels.push_back(C.label(x));
  if (ids) *ids = mor;
  return FiniteGroup::from_table(std::move(table), n, std::move(labels));
}

}  // namespace fk

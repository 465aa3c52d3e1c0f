#include "pcc/catalog.hpp"

#include <map>
#include <stdexcept>

namespace pcc {

namespace {

std::map<std::string, AlgebraPtr>& registry() {
  static std::map<std::string, AlgebraPtr> r = [] {
    std::map<std::string, AlgebraPtr> m;
    m["f2"] = truncated_poly_algebra(2, 1);
    m["d2"] = truncated_poly_algebra(2, 2);
    m["z3"] = truncated_poly_algebra(2, 3);
    m["a2"] = path_algebra_line(2, 2);
    m["a3"] = path_algebra_line(2, 3);
    m["t2"] = triangular_algebra(truncated_poly_algebra(2, 1));
    m["f3"] = truncated_poly_algebra(3, 1);
    m["d3"] = truncated_poly_algebra(3, 2);
    return m;
  }();
  return r;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (auto& [k, v] : registry()) out.push_back(k);
  return out;
}

AlgebraPtr catalog_algebra(const std::string& name) {
  auto& r = registry();
  auto it = r.find(name);
  if (it == r.end())
    throw std::invalid_argument("unknown algebra '" + name + "'; try `algebra list`");
  return it->second;
}

void catalog_register(const std::string& name, AlgebraPtr A) {
  if (name.empty()) throw std::invalid_argument("algebra name must be nonempty");
  registry()[name] = std::move(A);
}

ModulePtr catalog_module(const AlgebraPtr& A, const std::string& name) {
  if (name == "k") return simples(A)[0];
  if (name == "regular") return regular_module(A);
  if (name == "zero") return zero_module(A);
  auto indexed = [&](const std::string& prefix, size_t count) -> std::optional<size_t> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    size_t i = std::stoul(name.substr(prefix.size()));
    if (i >= count)
      throw std::invalid_argument("module index out of range: " + name);
    return i;
  };
  if (auto i = indexed("simple", simples(A).size())) return simples(A)[*i];
  if (auto i = indexed("proj", proj_indecs(A).size())) return proj_indecs(A)[*i].proj;
  throw std::invalid_argument(
      "unknown module '" + name + "'; use k, simpleN, projN, regular, or zero");
}

ModulePtr sample_module(const AlgebraPtr& A, std::mt19937& rng, size_t max_dim) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    auto R = regular_module(A);
    ModulePtr amb = rng() % 2 ? R : direct_sum_module({R, R});
    size_t ngens = 1 + rng() % 2;
    Mat gens(A->p, amb->dim, ngens);
    for (size_t j = 0; j < ngens; ++j)
      for (size_t i = 0; i < amb->dim; ++i) gens.at(i, j) = rng() % A->p;
    auto sub = submodule_generated(amb, gens);
    auto q = quotient_by_submodule(amb, sub.basis).quot;
    if (q->dim > 0 && q->dim <= max_dim) return q;
  }
  return simples(A)[rng() % simples(A).size()];
}

ModuleMap sample_module_map(const ModulePtr& M, const ModulePtr& N, std::mt19937& rng) {
  auto hom = module_hom(M, N);
  Mat f(M->A->p, N->dim, M->dim);
  for (const auto& b : hom.basis) f = f + b.scaled(rng() % M->A->p);
  return make_module_map(M, N, f);
}

ComplexPtr sample_complex(const AlgebraPtr& A, std::mt19937& rng, size_t max_total) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    size_t half = max_total / 2 > 0 ? max_total / 2 : 1;
    ComplexPtr Z;
    switch (rng() % 3) {
      case 0:
        Z = stalk_complex(sample_module(A, rng, max_total), (int)(rng() % 3) - 1);
        break;
      default: {
        auto M = sample_module(A, rng, half);
        auto N = sample_module(A, rng, half);
        auto f = sample_module_map(M, N, rng);
        Z = cone(make_chain_map(stalk_complex(M, 0), stalk_complex(N, 0), 0, {f.mat}))
                .cone;
        if (rng() % 2 && !Z->empty()) {
          auto extra = stalk_complex(simples(A)[rng() % simples(A).size()],
                                     (int)(rng() % 3) - 1);
          Z = direct_sum_complex(Z, extra);
        }
        break;
      }
    }
    if (Z && !Z->empty() && total_dim(*Z) <= max_total) return Z;
  }
  return stalk_complex(simples(A)[0], 0);
}

}  // namespace pcc

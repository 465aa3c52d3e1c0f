// Built-in registry of named desk-scale algebras, module lookup by name, and
// seeded samplers shared by the command-line tool and the acceptance suite.
#pragma once

#include "pcc/complexes.hpp"

#include <random>

namespace pcc {

std::vector<std::string> catalog_names();
AlgebraPtr catalog_algebra(const std::string& name);  // throws on unknown name
// register a user-defined algebra for the rest of the process
void catalog_register(const std::string& name, AlgebraPtr A);

// named modules: "k" (first simple), "simpleN", "projN", "regular", "zero"
ModulePtr catalog_module(const AlgebraPtr& A, const std::string& name);

// seeded samplers, deterministic given the generator state
ModulePtr sample_module(const AlgebraPtr& A, std::mt19937& rng, size_t max_dim = 8);
ModuleMap sample_module_map(const ModulePtr& M, const ModulePtr& N, std::mt19937& rng);
ComplexPtr sample_complex(const AlgebraPtr& A, std::mt19937& rng, size_t max_total = 12);

}  // namespace pcc

#pragma once

#include <optional>

#include "tdlab/graph.hpp"

namespace tdlab {

// Branch decomposition witness: pattern vertex -> connected host vertex set.
// Sets are pairwise disjoint and every pattern edge has a host edge between
// the two corresponding sets.
using MinorModel = std::map<int, VertexSet>;

bool validate_minor_model(const Graph& host, const Graph& pattern,
                          const MinorModel& model);

enum class MinorResult { Found, NoMinor, Inconclusive };

struct MinorSearch {
  MinorResult result = MinorResult::Inconclusive;
  MinorModel model;        // populated when result == Found
  long long expansions = 0;  // candidate branch sets tried
};

// Branch-and-bound minor test. `budget` caps candidate expansions; a
// negative budget means unlimited. NoMinor is only reported after an
// exhaustive search, so it is definitive.
MinorSearch find_minor_model(const Graph& host, const Graph& pattern,
                             long long budget = -1);

// model_inner maps P-vertices to branch sets in M; model_outer maps
// M-vertices to branch sets in H. Result maps P-vertices to H.
MinorModel compose_minor_models(const MinorModel& model_outer,
                                const MinorModel& model_inner);

// Restriction of a model to a subset of pattern vertices.
MinorModel restrict_model(const MinorModel& model, const VertexSet& keep);

}  // namespace tdlab

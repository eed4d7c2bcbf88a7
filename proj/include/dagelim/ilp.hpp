#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dagelim/dag.hpp"
#include "dagelim/exact.hpp"

namespace dagelim {

enum class IlpProblem { OVE, MEC };
enum class OveVariant { vA, vB, vC, vD };

struct IlpVar {
  std::string name;
  std::optional<int> fixed;  // materialized constants land in Bounds, not Binaries
};

struct LinTerm {
  int var;
  long long coef;
};

enum class ConstraintSense { Le, Ge, Eq };

struct LinConstraint {
  std::vector<LinTerm> terms;
  ConstraintSense sense;
  long long rhs;
};

/// A binary linear model plus everything needed to interpret a solution:
/// the encoded graph (the preprocessed residual for variant vD), the
/// pinned prefix and its accrued cost, and per-variable lookup tables.
struct IlpModel {
  IlpProblem problem = IlpProblem::OVE;
  OveVariant variant = OveVariant::vA;
  bool closure_restricted = false;

  std::vector<IlpVar> vars;
  std::vector<LinConstraint> constraints;
  std::vector<LinTerm> objective;  // minimized

  Dag graph;
  std::vector<int> prefix;      // vD: vertices eliminated before solving
  long long accrued_cost = 0;   // vD: cost of that prefix

  std::map<std::string, int> var_index;

  size_t free_var_count() const;
  size_t fixed_var_count() const;
  int find_var(const std::string& name) const;  // -1 when absent
};

/// Order-encoded model for minimum-cost total elimination.
/// vA: the base model (order transitivity, edge persistence, payment
/// rows). vB elides variables for pairs outside the transitive closure.
/// vC adds the per-vertex mu* floors and the global half-edge floor.
/// vD applies the safe preprocessing first and models the residual; the
/// solver objective plus `accrued_cost` is then the optimum of the input.
IlpModel build_ove_ilp(const Dag& d, OveVariant variant);

/// Subset-encoded model for minimum edge count. With closure_restriction
/// (default), pair variables exist only for transitive-closure pairs.
IlpModel build_mec_ilp(const Dag& d, bool closure_restriction = true);

/// Serializes in LP text format (Minimize / Subject To / Bounds /
/// Binaries / End) with deterministic ordering.
void write_lp(const IlpModel& model, std::ostream& out);

/// Parses a `name value` solution file (one pair per line, `#` comments
/// ignored, values within 1e-6 of binary), reconstructs the elimination
/// order or subset, and validates it by replay against the rounded
/// objective. Throws NonIntegralError / InconsistentOrderError /
/// ReplayMismatchError.
ExactResult read_solution(const IlpModel& model, const std::string& text);

}  // namespace dagelim

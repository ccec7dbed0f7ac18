#pragma once

#include "qmms/numbers.hpp"

#include <vector>

namespace qmms {

enum class Sense { LE, GE, EQ };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Sense sense = Sense::LE;
    Rational rhs;
};

// Integer-data constraint for hot paths (incidence systems); semantically the
// same as LinearConstraint.
struct IntConstraint {
    std::vector<int> coeffs;
    Sense sense = Sense::LE;
    long rhs = 0;
};

struct LpResult {
    bool feasible = false;
    std::vector<Rational> witness;  // one value per variable when feasible
};

// Decides feasibility of a system of linear constraints over unrestricted
// real variables and produces an exact rational witness when feasible.
// Phase-1 simplex with Bland's anti-cycling rule, evaluated in exact rational
// arithmetic: a word-sized fast path with overflow detection first, with an
// automatic arbitrary-precision rerun should it ever overflow. Deterministic.
LpResult lp_feasibility(int num_vars, const std::vector<LinearConstraint>& constraints);
LpResult lp_feasibility(int num_vars, const std::vector<IntConstraint>& constraints);

}  // namespace qmms

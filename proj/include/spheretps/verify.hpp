#pragma once

#include <string>
#include <vector>

namespace stps {

struct CheckResult {
    std::string name;
    double residual = 0.0; // worst observed deviation
    double bound = 0.0;    // tolerance it must stay under
    bool pass = false;
};

// Closed forms against the series on a shared abscissa grid: convergent
// entries ("agreement ...", bound 1e-8, 41 points spanning [-1,1]) and
// entries divergent at +1 ("singular ...", bound 1e-7, grid capped at 0.9),
// plus the check that both paths reject (5,2) at xi = 1.
std::vector<CheckResult> verify_catalog();

// Operator identities: eigenfunction relations for T and T*, adjointness on
// random polynomial pairs, kernel zero-mean integrals, and the exact
// rational constants of the general closed forms.
std::vector<CheckResult> verify_props();

// Iterated-operator evaluation against the closed forms at 7 interior
// points, with per-step zero-mean residuals.
std::vector<CheckResult> verify_recurrence();

} // namespace stps

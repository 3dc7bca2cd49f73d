#pragma once

#include <string>

#include <json.hpp>

#include "bergman/certify.h"
#include "bergman/functional.h"
#include "bergman/poly.h"
#include "bergman/solver.h"

namespace bergman {

using json = nlohmann::ordered_json;

// Polynomials are arrays of [re, im] pairs indexed by power of z.
void to_json(json& j, const Poly& f);
void from_json(const json& j, Poly& f);

// {"p": real, "g": coefficient array}
json functional_to_json(const KernelFunctional& phi);
KernelFunctional functional_from_json(const json& j);

// {degree, phi_norm_n, grad_norm, iterations, f_hat, f_star}
void to_json(json& j, const ExtremalSolution& sol);

void to_json(json& j, const Certificate& cert);
void to_json(json& j, const RecoveredFunctional& psi);
void to_json(json& j, const BoundReport& rep);

/// CSV rows "r,lhs,rhs" with a header line.
std::string bound_report_csv(const BoundReport& rep);

/// Shortest round-trip decimal form, as used for every number we write.
std::string format_number(double x);

}  // namespace bergman

#include "bergman/json_io.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back({c.real(), c.imag()});
  return a;
}

}  // namespace

void to_json(json& j, const Poly& f) {
  j = json::array();
  for (const auto& c : f.coeffs()) j.push_back({c.real(), c.imag()});
}

void from_json(const json& j, Poly& f) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
  std::vector<cplx> c;
  c.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw std::invalid_argument("polynomial coefficient must be [re, im] or a number");
    }
  }
  f = Poly(std::move(c));
}

json functional_to_json(const KernelFunctional& phi) {
  return json{{"p", phi.exponent().p()}, {"g", phi.kernel()}};
}

KernelFunctional functional_from_json(const json& j) {
  return KernelFunctional(j.at("g").get<Poly>(), Exponent(j.at("p").get<double>()));
}

void to_json(json& j, const ExtremalSolution& sol) {
  j = json{{"degree", sol.degree},
           {"phi_norm_n", sol.phi_norm_n},
           {"grad_norm", sol.grad_norm},
           {"iterations", sol.iterations},
           {"f_hat", sol.f_hat},
           {"f_star", sol.f_star}};
}

void to_json(json& j, const Certificate& cert) {
  j = json{{"max_residual", cert.max_residual}, {"residuals", complex_array(cert.residuals)}};
}

void to_json(json& j, const RecoveredFunctional& psi) {
  j = json{{"moments", complex_array(psi.moments)}};
}

void to_json(json& j, const BoundReport& rep) {
  j = json{{"r_values", rep.r_values}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"slack", rep.slack}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string bound_report_csv(const BoundReport& rep) {
  std::string out = "r,lhs,rhs\n";
  for (size_t i = 0; i < rep.r_values.size(); ++i)
    out += format_number(rep.r_values[i]) + "," + format_number(rep.lhs[i]) + "," +
           format_number(rep.rhs) + "\n";
  return out;
}

}  // namespace bergman

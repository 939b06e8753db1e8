#pragma once

// JSON encodings for the exact types. Conventions: integers that can exceed
// the native range travel as decimal strings, rationals as {"num","den"}
// string pairs, cyclotomic numbers as conductor + power-basis coefficients.
// Rendered expressions use the zeta(n)^j grammar of CycloElement::to_string.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "cmcurves/polynomial.hpp"

namespace cmcurves {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& r) {
  return Json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

inline Rational rational_from_json(const Json& j) {
  Rational r(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
  r.canonicalize();
  return r;
}

inline Json cyclo_to_json(const CycloElement& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(rational_to_json(c));
  return Json{{"conductor", x.conductor()}, {"coeffs", std::move(coeffs)}};
}

inline CycloElement cyclo_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& e : j.at("coeffs")) c.push_back(rational_from_json(e));
  return CycloElement(j.at("conductor").get<long>(), std::move(c));
}

/// Coefficients ascending; the zero polynomial is an empty list.
inline Json poly_to_json(const Poly& p) {
  Json coeffs = Json::array();
  for (long i = 0; i <= p.degree(); ++i) coeffs.push_back(cyclo_to_json(p.coeff(i)));
  return Json{{"coeffs", std::move(coeffs)}};
}

inline Poly poly_from_json(const Json& j) {
  std::vector<CycloElement> c;
  for (const auto& e : j.at("coeffs")) c.push_back(cyclo_from_json(e));
  return Poly(std::move(c));
}

/// FNV-1a 64 over the serialized payload; stable across platforms.
inline std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cmcurves

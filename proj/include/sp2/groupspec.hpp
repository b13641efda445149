#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "sp2/subalgebra.hpp"
#include "sp2/triple.hpp"

#include "json.hpp"

namespace sp2 {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Scalar scalar_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    const std::string& s = j.get<std::string>();
    size_t i = 0;
    Scalar v = parse_number(s, i);
    if (i != s.size())
      throw error(errc::parse_error, field + ": trailing characters in \"" + s + "\"");
    return v;
  }
  if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
  if (j.is_number_float()) {
    // JSON literals are decimal, so recover the exact rational whenever
    // the small-denominator reconstruction round trips.
    double d = j.get<double>();
    Rational r = rationalize(d);
    if (r.convert_to<double>() == d) return Scalar(r);
    return Scalar::approx(d);
  }
  throw error(errc::parse_error, field + ": expected a number or a rational string");
}

inline Mat2 mat2_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw error(errc::parse_error, field + ": expected a 2x2 matrix");
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2)
      throw error(errc::parse_error, field + ": expected a 2x2 matrix");
    for (int c = 0; c < 2; ++c)
      m(r, c) = scalar_from_json(j[r][c], field);
  }
  return m;
}

inline nlohmann::json scalar_to_json(const Scalar& s) {
  if (!s.exact()) return s.to_double();
  const Rational& r = s.rat();
  if (boost::multiprecision::denominator(r) == 1 &&
      boost::multiprecision::numerator(r) >= std::numeric_limits<long long>::min() &&
      boost::multiprecision::numerator(r) <= std::numeric_limits<long long>::max())
    return boost::multiprecision::numerator(r).convert_to<long long>();
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::string tag_name(hfam t) {
  for (const auto& n : HFamily::valid_names())
    if (HFamily::tag_from_name(n) == t) return n;
  throw error(errc::precondition_violated, "unnamed family tag");
}

inline nlohmann::json mat2_to_json(const Mat2& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 2; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 2; ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

/// Parsed form of a group-spec file; validates at parse time and yields a
/// Triple whose invariants already hold.
struct GroupSpec {
  Triple triple;

  static GroupSpec parse(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw error(errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw error(errc::parse_error, "top level: expected an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
      throw error(errc::parse_error, "schema_version: missing or not an integer");
    if (j["schema_version"].get<int>() != kSchemaVersion)
      throw error(errc::parse_error, "schema_version: expected " + std::to_string(kSchemaVersion));

    if (!j.contains("sigma_basis") || !j["sigma_basis"].is_array())
      throw error(errc::parse_error, "sigma_basis: missing or not an array");
    std::vector<SymMat2> basis;
    for (size_t k = 0; k < j["sigma_basis"].size(); ++k) {
      Mat2 m = detail::mat2_from_json(j["sigma_basis"][k],
                                      "sigma_basis[" + std::to_string(k) + "]");
      if (!(m(0, 1) == m(1, 0)))
        throw error(errc::parse_error,
                    "sigma_basis[" + std::to_string(k) + "]: matrix is not symmetric");
      basis.push_back(SymMat2::from_mat2(m));
    }

    if (!j.contains("h_family") || !j["h_family"].is_object())
      throw error(errc::parse_error, "h_family: missing or not an object");
    const auto& hf = j["h_family"];
    if (!hf.contains("name") || !hf["name"].is_string())
      throw error(errc::parse_error, "h_family.name: missing or not a string");
    std::string name = hf["name"].get<std::string>();
    auto tag = HFamily::tag_from_name(name);
    if (!tag) {
      std::string valid;
      for (const auto& n : HFamily::valid_names()) valid += (valid.empty() ? "" : ", ") + n;
      throw error(errc::parse_error,
                  "h_family.name: unknown family \"" + name + "\"; valid names: " + valid);
    }
    FamParam p;
    bool needs_param = HFamily(*tag).has_param();
    bool alpha_style = *tag == hfam::halpha_s1 || *tag == hfam::halpha_s2;
    const char* pkey = alpha_style ? "alpha" : "gamma";
    if (hf.contains("alpha") && hf.contains("gamma"))
      throw error(errc::parse_error, "h_family: give alpha or gamma, not both");
    if (needs_param) {
      if (!hf.contains(pkey))
        throw error(errc::parse_error, std::string("h_family.") + pkey + ": required by " + name);
      const auto& pj = hf[pkey];
      if (pj.is_string() && pj.get<std::string>() == "inf") {
        if (!alpha_style)
          throw error(errc::parse_error, "h_family.gamma: \"inf\" is not a valid gamma");
        p = FamParam::infinity();
      } else {
        Scalar v = detail::scalar_from_json(pj, std::string("h_family.") + pkey);
        if (!v.exact())
          throw error(errc::parse_error,
                      std::string("h_family.") + pkey + ": parameter must be exact");
        p = FamParam::of(v.rat());
      }
    } else if (hf.contains("alpha") || hf.contains("gamma")) {
      throw error(errc::parse_error, "h_family: " + name + " takes no parameter");
    }
    HFamily fam = p.inf ? HFamily(*tag == hfam::halpha_s1 ? hfam::hinf_s1 : hfam::hinf_s2)
                        : HFamily(*tag, p);
    if (hf.contains("transposed")) {
      if (!hf["transposed"].is_boolean())
        throw error(errc::parse_error, "h_family.transposed: expected a boolean");
      if (hf["transposed"].get<bool>()) fam = fam.with_transposed();
    }
    if (hf.contains("conjugator")) {
      Mat2 c = detail::mat2_from_json(hf["conjugator"], "h_family.conjugator");
      if (c.det().is_zero())
        throw error(errc::parse_error, "h_family.conjugator: matrix is singular");
      if (!(c == Mat2::identity())) fam = fam.with_conjugator(c);
    }

    TauMap tau = TauMap::zero();
    if (j.contains("tau")) {
      if (!j["tau"].is_object() || !j["tau"].contains("kind") || !j["tau"]["kind"].is_string())
        throw error(errc::parse_error, "tau.kind: missing or not a string");
      std::string kind = j["tau"]["kind"].get<std::string>();
      if (kind == "zero") {
        // nothing further
      } else if (kind == "coboundary") {
        if (!j["tau"].contains("tau0"))
          throw error(errc::parse_error, "tau.tau0: required when kind is coboundary");
        Mat2 t0 = detail::mat2_from_json(j["tau"]["tau0"], "tau.tau0");
        if (!(t0(0, 1) == t0(1, 0)))
          throw error(errc::parse_error, "tau.tau0: matrix is not symmetric");
        tau = TauMap::coboundary(SymMat2::from_mat2(t0));
      } else {
        throw error(errc::parse_error, "tau.kind: expected \"zero\" or \"coboundary\"");
      }
    }
    return GroupSpec{Triple(SymSpan(basis), fam, tau)};
  }

  std::string print() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : triple.sigma.basis()) basis.push_back(detail::mat2_to_json(b.to_mat2()));
    j["sigma_basis"] = basis;
    nlohmann::json hf;
    HFamily base = triple.h.base();
    hfam tag = base.tag();
    FamParam p = base.param();
    // The "inf" tags print as the parametrized family at its endpoint.
    if (tag == hfam::hinf_s1) { tag = hfam::halpha_s1; p = FamParam::infinity(); }
    if (tag == hfam::hinf_s2) { tag = hfam::halpha_s2; p = FamParam::infinity(); }
    hf["name"] = detail::tag_name(tag);
    if (HFamily(tag).has_param()) {
      const char* pkey = (tag == hfam::halpha_s1 || tag == hfam::halpha_s2) ? "alpha" : "gamma";
      if (p.inf) hf[pkey] = "inf";
      else hf[pkey] = detail::scalar_to_json(Scalar(p.value));
    }
    hf["transposed"] = triple.h.transposed();
    if (triple.h.conjugator()) hf["conjugator"] = detail::mat2_to_json(*triple.h.conjugator());
    j["h_family"] = hf;
    nlohmann::json tj;
    if (triple.tau.which() == TauMap::kind::coboundary) {
      tj["kind"] = "coboundary";
      tj["tau0"] = detail::mat2_to_json(triple.tau.tau0().to_mat2());
    } else {
      tj["kind"] = "zero";
    }
    j["tau"] = tj;
    return j.dump(2) + "\n";
  }
};

/// Inline generator form for the subalgebra commands:
/// {"ambient": "sigma3", "generators": [[[0,0],[1,0]], ...]}.
inline LieSub parse_liesub(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("ambient") || !j["ambient"].is_string())
    throw error(errc::parse_error, "ambient: missing or not a string");
  std::string amb = j["ambient"].get<std::string>();
  int idx = amb == "sigma1" ? 1 : amb == "sigma2" ? 2 : amb == "sigma3" ? 3 : 0;
  if (idx == 0)
    throw error(errc::parse_error, "ambient: expected sigma1, sigma2 or sigma3, got " + amb);
  if (!j.contains("generators") || !j["generators"].is_array())
    throw error(errc::parse_error, "generators: missing or not an array");
  std::vector<Mat2> gens;
  for (size_t k = 0; k < j["generators"].size(); ++k)
    gens.push_back(detail::mat2_from_json(j["generators"][k],
                                          "generators[" + std::to_string(k) + "]"));
  return LieSub(idx, gens);
}

}  // namespace sp2

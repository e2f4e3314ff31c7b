#include "report.hpp"

#include "wrtwist/errors.hpp"

namespace wrtwist::cli {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Vec3& v) { return Json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

Json to_json(const IMat3& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json::array({row[0].get_str(), row[1].get_str(), row[2].get_str()}));
  return out;
}

Json to_json(const Mat3& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

Json to_json(const GramMatrix3& g) {
  return {{"s11", to_json(g.s11)}, {"s22", to_json(g.s22)}, {"s33", to_json(g.s33)},
          {"u", to_json(g.u)},     {"v", to_json(g.v)},     {"w", to_json(g.w)}};
}

Json to_json(const WrSlack& s) {
  Json half = Json::array(), sums = Json::array();
  for (const auto& x : s.half_bound) half.push_back(to_json(x));
  for (const auto& x : s.sum_bound) sums.push_back(to_json(x));
  return {{"half_bound", half}, {"sum_bound", sums}};
}

Json to_json(const FieldElement& x) { return {{"coords", to_json(x.coords())}, {"text", to_string(x)}}; }

Json to_json(const Basis3& b) { return Json::array({to_json(b[0]), to_json(b[1]), to_json(b[2])}); }

Json to_json(const PrincipalLink& p) {
  Json j{{"psi", to_json(p.psi)},
         {"k", p.k.get_str()},
         {"norm_psi", to_json(p.norm_psi)},
         {"t", p.t},
         {"verified", p.verified},
         {"equal_abs_offdiagonal", p.equal_abs_offdiagonal},
         {"unit_assumption", p.unit_assumption}};
  j["similar_to_generator"] = p.similar_to_generator ? Json(*p.similar_to_generator) : Json(nullptr);
  return j;
}

Json to_json(const TwistReport& r) {
  Json j{{"basis", to_json(r.basis)}, {"alpha0", to_json(r.alpha0)}, {"e1", to_json(r.e1)}, {"e2", to_json(r.e2)},
         {"e3", to_json(r.e3)},       {"sign_ok", r.sign_ok},           {"sign", r.sign}, {"is_good", r.is_good}};
  j["twisted_gram"] = r.twisted_gram ? to_json(*r.twisted_gram) : Json(nullptr);
  j["wr_slack"] = r.twisted_gram && r.twisted_gram->has_equal_diagonal() ? to_json(wr_slack(*r.twisted_gram)) : Json(nullptr);
  j["principal_link"] = r.principal_link ? to_json(*r.principal_link) : Json(nullptr);
  return j;
}

Json to_json(const IdealBasis& ib) {
  return {{"elements", to_json(ib.elements)},
          {"claimed_norm", ib.claimed_norm.get_str()},
          {"construction", to_string(ib.construction)}};
}

Json to_json(const OrthoResult& r) {
  Json j{{"candidates_tried", r.candidates_tried}};
  if (!r.certificate) {
    j["status"] = "unverified";
    j["certificate"] = nullptr;
    return j;
  }
  const auto& c = *r.certificate;
  j["status"] = "certified";
  j["certificate"] = {{"delta", to_json(c.delta)},
                      {"delta_source", c.delta_source},
                      {"unimodular_gram", to_json(c.unimodular_gram)},
                      {"unimodular_det", to_json(c.unimodular_gram.det())},
                      {"orthonormal_frame", to_json(c.orthonormal_frame)},
                      {"frame_gram", to_json(c.frame_gram)}};
  return j;
}

Json to_json(const GateMap& g) {
  Json j = Json::object();
  for (const auto& [k, v] : g) j[k] = std::string(to_string(v));
  return j;
}

Json to_json(const FamilyInstance& inst) {
  Json j{{"family", to_string(inst.family)},
         {"n", inst.n.get_str()},
         {"min_poly", inst.field->poly_string()},
         {"poly_discriminant", to_json(inst.field->poly_discriminant())},
         {"basis_case", inst.basis_case},
         {"conditions", to_json(inst.conditions_met)},
         {"mobius_power", inst.mobius_power}};
  j["field_discriminant"] = inst.field->discriminant() ? Json(inst.field->discriminant()->get_str()) : Json(nullptr);
  j["integral_basis"] = inst.integral_basis ? to_json(*inst.integral_basis) : Json(nullptr);
  Json cases = Json::array();
  for (const auto& c : admissible_cases(inst)) cases.push_back(c);
  j["admissible_cases"] = cases;
  return j;
}

Json field_summary(const FieldPtr& F, unsigned precision_bits) {
  Json j{{"min_poly", F->poly_string()},
         {"poly_discriminant", to_json(F->poly_discriminant())},
         {"galois", to_json(F->galois())},
         {"t_sign", F->t_sign()}};
  if (const auto& cd = F->conductor())
    j["conductor"] = {{"m", cd->m.get_str()}, {"a", cd->a.get_str()}, {"b", cd->b.get_str()}};
  else
    j["conductor"] = nullptr;
  j["discriminant"] = F->discriminant() ? Json(F->discriminant()->get_str()) : Json(nullptr);
  j["integral_basis"] = F->has_integral_basis() ? to_json(F->integral_basis()) : Json(nullptr);
  Json roots = Json::array();
  for (const auto& r : F->roots(precision_bits)) {
    Interval o = r.rounded_outward(precision_bits);
    roots.push_back({{"lo", to_json(o.lo())}, {"hi", to_json(o.hi())}});
  }
  j["roots"] = roots;
  return j;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "exact quantity must be a string");
  return parse_rational(j.get<std::string>());
}

GramMatrix3 gram_from_json(const Json& j) {
  return {rational_from_json(j.at("s11")), rational_from_json(j.at("s22")), rational_from_json(j.at("s33")),
          rational_from_json(j.at("u")),   rational_from_json(j.at("v")),   rational_from_json(j.at("w"))};
}

Json envelope(const std::string& command, Json args, Json results) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"args", std::move(args)}, {"results", std::move(results)}};
}

std::string serialize_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace wrtwist::cli

#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "wrtwist/families.hpp"
#include "wrtwist/ideals.hpp"
#include "wrtwist/lattice.hpp"
#include "wrtwist/twist.hpp"

namespace wrtwist::cli {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// Exact quantities are always strings in canonical "p" or "p/q" form.
Json to_json(const Rational& q);
Json to_json(const Vec3& v);
Json to_json(const IMat3& m);
Json to_json(const Mat3& m);
Json to_json(const GramMatrix3& g);
Json to_json(const WrSlack& s);
Json to_json(const FieldElement& x);
Json to_json(const Basis3& b);
Json to_json(const PrincipalLink& p);
Json to_json(const TwistReport& r);
Json to_json(const IdealBasis& ib);
Json to_json(const OrthoResult& r);
Json to_json(const GateMap& g);
Json to_json(const FamilyInstance& inst);
Json field_summary(const FieldPtr& field, unsigned precision_bits);

Rational rational_from_json(const Json& j);
GramMatrix3 gram_from_json(const Json& j);

// {"schema_version", "command", "args", "results"}.
Json envelope(const std::string& command, Json args, Json results);
// Keys sorted, two-space indent, trailing newline.
std::string serialize_report(const Json& j);

}  // namespace wrtwist::cli

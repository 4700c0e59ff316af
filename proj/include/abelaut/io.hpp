#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelaut/aut.hpp"
#include "abelaut/bigint.hpp"
#include "abelaut/endo.hpp"
#include "abelaut/error.hpp"
#include "abelaut/group.hpp"
#include "abelaut/oracle.hpp"

// JSON forms:
//   group    {"components": [{"p": 2, "exponents": [1, 2]}, ...]}
//   endo     {"p": 2, "exponents": [1, 2], "entries": [[1, 1], [2, 1]]}
//   element  {"p": 2, "exponents": [1, 2], "residues": [0, 3]}
//   aut      {"group": <group>, "parts": [<endo>, ...]}
// Integers that do not fit in 64 bits are written as decimal strings and
// accepted in either form.

namespace abelaut::io {

using json = nlohmann::json;

inline json to_json(const BigInt& v) {
  if (auto small = to_int64(v)) return *small;
  return v.str();
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw ParseError("expected an integer, got " + j.dump());
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline PrimePowerGroup hp_group_from(const json& j) {
  const json& p = field(j, "p");
  const json& e = field(j, "exponents");
  if (!p.is_number_unsigned() || !e.is_array()) throw ParseError("malformed group component " + j.dump());
  std::vector<unsigned> exps;
  for (const auto& x : e) {
    if (!x.is_number_unsigned()) throw ParseError("exponents must be positive integers");
    exps.push_back(x.get<unsigned>());
  }
  return PrimePowerGroup(p.get<std::uint64_t>(), std::move(exps));
}

inline json hp_group_fields(const PrimePowerGroup& g) { return {{"p", g.prime()}, {"exponents", g.exponents()}}; }

}  // namespace detail

inline json to_json(const PrimePowerGroup& g) { return detail::hp_group_fields(g); }

inline json to_json(const AbelianGroup& g) {
  json comps = json::array();
  for (const auto& c : g.components()) comps.push_back(to_json(c));
  return {{"components", comps}};
}

inline AbelianGroup group_from_json(const json& j) {
  const json& comps = detail::field(j, "components");
  if (!comps.is_array()) throw ParseError("'components' must be an array");
  std::vector<PrimePowerGroup> out;
  for (const auto& c : comps) out.push_back(detail::hp_group_from(c));
  return AbelianGroup(std::move(out));
}

inline json to_json(const Endo& m) {
  json j = detail::hp_group_fields(m.group());
  json rows = json::array();
  for (const auto& row : m.matrix().rows()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j;
}

/// Validates R_p divisibility, then canonicalizes.
inline Endo endo_from_json(const json& j) {
  const PrimePowerGroup g = detail::hp_group_from(j);
  const json& rows = detail::field(j, "entries");
  if (!rows.is_array()) throw ParseError("'entries' must be an array of rows");
  std::vector<std::vector<BigInt>> m;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("'entries' must be an array of rows");
    auto& out = m.emplace_back();
    for (const auto& v : row) out.push_back(bigint_from_json(v));
  }
  if (m.size() != g.rank()) throw ParseError("'entries' must be " + std::to_string(g.rank()) + "x" + std::to_string(g.rank()));
  for (const auto& row : m)
    if (row.size() != g.rank()) throw ParseError("'entries' must be square");
  return Endo(g, IntMatrix::from_rows(m));
}

inline json to_json(const HpElement& h) {
  json j = detail::hp_group_fields(h.group());
  json r = json::array();
  for (const auto& v : h.residues()) r.push_back(to_json(v));
  j["residues"] = r;
  return j;
}

inline HpElement element_from_json(const json& j) {
  const PrimePowerGroup g = detail::hp_group_from(j);
  std::vector<BigInt> vals;
  for (const auto& v : detail::field(j, "residues")) vals.push_back(bigint_from_json(v));
  return HpElement(g, std::move(vals));
}

inline json to_json(const GroupAut& a) {
  json parts = json::array();
  for (const auto& m : a.parts()) parts.push_back(to_json(m));
  return {{"group", to_json(a.group())}, {"parts", parts}};
}

inline GroupAut group_aut_from_json(const json& j) {
  AbelianGroup g = group_from_json(detail::field(j, "group"));
  std::vector<Endo> parts;
  for (const auto& p : detail::field(j, "parts")) parts.push_back(endo_from_json(p));
  return GroupAut(std::move(g), std::move(parts));
}

inline json to_json(const oracle::VerifyReport& rep) {
  json comps = json::array();
  for (const auto& c : rep.components) {
    json jc = {{"p", c.p},
               {"exponents", c.exponents},
               {"formula", to_json(c.formula)},
               {"oracle", c.oracle ? to_json(*c.oracle) : json(nullptr)},
               {"criterion_agrees", c.criterion_agrees}};
    if (c.error) jc["error"] = *c.error;
    comps.push_back(jc);
  }
  json j = {{"components", comps}};
  if (rep.whole_group) {
    const auto& w = *rep.whole_group;
    json jw = {{"formula", to_json(w.formula)}, {"oracle", w.oracle ? to_json(*w.oracle) : json(nullptr)}};
    if (w.error) jw["error"] = *w.error;
    j["whole_group"] = jw;
  }
  j["pass"] = rep.pass;
  return j;
}

/// Parse text as JSON, mapping syntax errors to ParseError.
inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace abelaut::io

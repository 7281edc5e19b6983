// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lincell/star.hpp"

namespace lincell {

using Json = nlohmann::json;

// --- rationals and affine functionals ---------------------------------

inline Json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline Json to_json(const AffineFunc& f) {
  Json coef = Json::array();
  for (const Rational& c : f.coef) coef.push_back(to_string(c));
  return Json{{"coef", std::move(coef)}, {"const", to_string(f.constant)}};
}

inline AffineFunc affine_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coef") || !j.contains("const"))
    throw InputError("expected an affine functional {coef, const}, got " + j.dump());
  AffineFunc f;
  for (const Json& c : j.at("coef")) f.coef.push_back(rational_from_json(c));
  f.constant = rational_from_json(j.at("const"));
  return f;
}

// --- semilinear sets ---------------------------------------------------

inline Json to_json(const Constraint& c) {
  Json j = to_json(c.func);
  j["rel"] = to_string(c.rel);
  return j;
}

inline Constraint constraint_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rel")) throw InputError("constraint atom needs a rel field");
  std::string rel = j.at("rel").get<std::string>();
  Rel r;
  if (rel == "<")
    r = Rel::LT0;
  else if (rel == "<=")
    r = Rel::LE0;
  else if (rel == "=")
    r = Rel::EQ0;
  else
    throw InputError("unknown relation '" + rel + "'");
  return Constraint(affine_from_json(j), r);
}

inline Json to_json(const SemilinearSet& a) {
  Json dnf = Json::array();
  for (const ConjSystem& d : a.disjuncts) {
    Json clause = Json::array();
    for (const Constraint& c : d.constraints) clause.push_back(to_json(c));
    dnf.push_back(std::move(clause));
  }
  return Json{{"dim", a.dim}, {"dnf", std::move(dnf)}};
}

inline SemilinearSet semilinear_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("dnf"))
    throw InputError("expected a semilinear set {dim, dnf}");
  size_t dim = j.at("dim").get<size_t>();
  SemilinearSet a(dim);
  for (const Json& clause : j.at("dnf")) {
    ConjSystem sys(dim);
    for (const Json& atom : clause) sys.add(constraint_from_json(atom));
    a.disjuncts.push_back(std::move(sys));
  }
  return a;
}

// --- cells and decompositions ------------------------------------------

inline Json to_json(const ExtRational& e) { return to_string(e); }

inline ExtRational ext_rational_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "-inf") return ExtRational::neg_inf();
    if (s == "+inf") return ExtRational::pos_inf();
    return ExtRational(parse_rational(s));
  }
  throw InputError("expected a rational string or +/-inf, got " + j.dump());
}

inline Json to_json(const ExtAffine& e) {
  switch (e.kind) {
    case ExtAffine::NegInf: return "-inf";
    case ExtAffine::PosInf: return "+inf";
    default: return to_json(e.fn);
  }
}

inline ExtAffine ext_affine_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "-inf") return ExtAffine::neg_inf();
    if (s == "+inf") return ExtAffine::pos_inf();
    throw InputError("unknown wall '" + s + "'");
  }
  return ExtAffine(affine_from_json(j));
}

inline Json to_json(const LinearCell& c) {
  switch (c.kind()) {
    case LinearCell::Kind::Point:
      return Json{{"kind", "point"}, {"value", to_string(c.point_value())}};
    case LinearCell::Kind::Interval:
      return Json{{"kind", "interval"},
                  {"lo", to_json(c.interval_lo())},
                  {"hi", to_json(c.interval_hi())}};
    case LinearCell::Kind::Graph:
      return Json{{"kind", "graph"}, {"base", to_json(c.base())}, {"f", to_json(c.graph_fn())}};
    default:
      return Json{{"kind", "band"},
                  {"base", to_json(c.base())},
                  {"lo", to_json(c.band_lo())},
                  {"hi", to_json(c.band_hi())}};
  }
}

inline LinearCell cell_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("cell objects need a kind field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "point") return LinearCell::point(rational_from_json(j.at("value")));
  if (kind == "interval")
    return LinearCell::interval(ext_rational_from_json(j.at("lo")),
                                ext_rational_from_json(j.at("hi")));
  if (kind == "graph")
    return LinearCell::graph(cell_from_json(j.at("base")), affine_from_json(j.at("f")));
  if (kind == "band")
    return LinearCell::band(cell_from_json(j.at("base")), ext_affine_from_json(j.at("lo")),
                            ext_affine_from_json(j.at("hi")));
  throw InputError("unknown cell kind '" + kind + "'");
}

inline Json to_json(const Decomposition& d) {
  Json cells = Json::array();
  for (const LinearCell& c : d.cells()) cells.push_back(to_json(c));
  Json j{{"dim", d.dim()}, {"cells", std::move(cells)}};
  if (d.has_base()) j["base"] = to_json(d.base());
  return j;
}

inline Decomposition decomposition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("cells"))
    throw InputError("expected a decomposition {dim, cells[, base]}");
  size_t dim = j.at("dim").get<size_t>();
  std::vector<LinearCell> cells;
  for (const Json& c : j.at("cells")) cells.push_back(cell_from_json(c));
  std::shared_ptr<const Decomposition> base;
  if (j.contains("base"))
    base = std::make_shared<const Decomposition>(decomposition_from_json(j.at("base")));
  return Decomposition::assemble(dim, std::move(cells), std::move(base));
}

// --- open piecewise-affine cells ----------------------------------------

inline Json to_json(const PWAWall& w) {
  switch (w.kind) {
    case PWAWall::NegInf: return "-inf";
    case PWAWall::PosInf: return "+inf";
    default: {
      Json pieces = Json::array();
      for (const auto& [cell, fn] : w.pieces)
        pieces.push_back(Json{{"base", to_json(cell)}, {"wall", to_json(fn)}});
      return Json{{"pwa", std::move(pieces)}};
    }
  }
}

inline PWAWall pwa_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "-inf") return PWAWall::neg_inf();
    if (s == "+inf") return PWAWall::pos_inf();
    throw InputError("unknown wall '" + s + "'");
  }
  if (!j.is_object() || !j.contains("pwa")) throw InputError("expected a pwa wall object");
  PWAWall w;
  for (const Json& p : j.at("pwa"))
    w.pieces.emplace_back(cell_from_json(p.at("base")), affine_from_json(p.at("wall")));
  return w;
}

inline Json to_json(const OpenPLCell& c) {
  if (c.is_interval())
    return Json{{"kind", "interval"},
                {"lo", to_json(c.interval_lo())},
                {"hi", to_json(c.interval_hi())}};
  return Json{{"kind", "band"},
              {"base", to_json(c.base())},
              {"lo", to_json(c.wall_lo())},
              {"hi", to_json(c.wall_hi())}};
}

inline OpenPLCell open_cell_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("cell objects need a kind field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval")
    return OpenPLCell::interval(ext_rational_from_json(j.at("lo")),
                                ext_rational_from_json(j.at("hi")));
  if (kind == "band")
    return OpenPLCell::band(open_cell_from_json(j.at("base")), pwa_from_json(j.at("lo")),
                            pwa_from_json(j.at("hi")));
  throw InputError("unknown open-cell kind '" + kind + "'");
}

inline Json cover_to_json(const std::vector<OpenPLCell>& cells) {
  Json j = Json::array();
  for (const OpenPLCell& c : cells) j.push_back(to_json(c));
  return j;
}

inline std::vector<OpenPLCell> cover_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a JSON array of open cells");
  std::vector<OpenPLCell> cells;
  for (const Json& c : j) cells.push_back(open_cell_from_json(c));
  return cells;
}

inline Json to_json(const Point& p) {
  Json j = Json::array();
  for (const Rational& v : p) j.push_back(to_string(v));
  return j;
}

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON input");
  return j;
}

}  // namespace lincell

#pragma once

// Cover and LCL report JSON.
//
//   {"word":"torus","n":4,"m":4,
//    "cells":[{"id":"r0c0","vertices":[["0","0"],["1","0"],["1","1"],["0","1"]]},
//             {"id":"r1c3","pieces":[[...],[...]]}]}
//
// Coordinates are "num/den" (or integer) strings. Single-piece cells use
// "vertices"; cells glued from several pieces across a seam use "pieces".

#include <string>
#include <vector>

#include "json.hpp"

#include "digisurf/cover.hpp"
#include "digisurf/errors.hpp"
#include "digisurf/rational.hpp"

namespace digisurf {

namespace detail {

inline nlohmann::ordered_json polygon_to_json(const Polygon& poly) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& p : poly) {
    out.push_back({format_rational(p.x), format_rational(p.y)});
  }
  return out;
}

inline Rational coordinate_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("coordinates must be rational strings or integers");
}

inline Polygon polygon_from_json(const nlohmann::json& j, const std::string& id) {
  if (!j.is_array()) throw ParseError("cell '" + id + "': polygon must be an array");
  Polygon poly;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2) {
      throw ParseError("cell '" + id + "': each vertex must be an [x, y] pair");
    }
    poly.push_back({coordinate_from_json(v[0]), coordinate_from_json(v[1])});
  }
  return poly;
}

}  // namespace detail

inline nlohmann::ordered_json cover_to_json(const Cover& cover) {
  nlohmann::ordered_json j;
  j["word"] = to_string(cover.word);
  j["n"] = cover.n;
  j["m"] = cover.m;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& cell : cover.cells) {
    nlohmann::ordered_json jc;
    jc["id"] = cell.id;
    if (cell.pieces.size() == 1) {
      jc["vertices"] = detail::polygon_to_json(cell.pieces[0]);
    } else {
      auto pieces = nlohmann::ordered_json::array();
      for (const auto& p : cell.pieces) pieces.push_back(detail::polygon_to_json(p));
      jc["pieces"] = std::move(pieces);
    }
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline Cover cover_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("cover JSON must be an object");
  for (const char* key : {"word", "n", "m", "cells"}) {
    if (!j.contains(key)) throw ParseError(std::string("cover JSON lacks '") + key + "'");
  }
  Cover cover;
  if (!j["word"].is_string()) throw ParseError("'word' must be a string");
  try {
    cover.word = parse_word(j["word"].get<std::string>());
  } catch (const CoverError& err) {
    throw ParseError(err.what());
  }
  if (!j["n"].is_number_integer() || !j["m"].is_number_integer()) {
    throw ParseError("'n' and 'm' must be integers");
  }
  cover.n = j["n"].get<std::int64_t>();
  cover.m = j["m"].get<std::int64_t>();
  if (cover.n <= 0 || cover.m <= 0) throw ParseError("'n' and 'm' must be positive");
  if (!j["cells"].is_array()) throw ParseError("'cells' must be an array");
  for (const auto& jc : j["cells"]) {
    if (!jc.is_object() || !jc.contains("id") || !jc["id"].is_string()) {
      throw ParseError("each cell needs a string 'id'");
    }
    CoverCell cell;
    cell.id = jc["id"].get<std::string>();
    if (jc.contains("vertices")) {
      cell.pieces.push_back(detail::polygon_from_json(jc["vertices"], cell.id));
    } else if (jc.contains("pieces") && jc["pieces"].is_array()) {
      for (const auto& p : jc["pieces"]) {
        cell.pieces.push_back(detail::polygon_from_json(p, cell.id));
      }
    } else {
      throw ParseError("cell '" + cell.id + "' needs 'vertices' or 'pieces'");
    }
    cover.cells.push_back(std::move(cell));
  }
  return cover;
}

inline Cover cover_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
  return cover_from_json(j);
}

inline nlohmann::ordered_json feature_to_json(const IntersectionFeature& f) {
  nlohmann::ordered_json j;
  switch (f.kind) {
    case IntersectionFeature::Kind::empty: j["kind"] = "empty"; break;
    case IntersectionFeature::Kind::points: j["kind"] = "points"; break;
    case IntersectionFeature::Kind::segments: j["kind"] = "segments"; break;
  }
  auto points = nlohmann::ordered_json::array();
  for (const auto& p : f.points) points.push_back(p.class_id);
  j["points"] = std::move(points);
  auto segs = nlohmann::ordered_json::array();
  for (const auto& [a, b] : f.segments) segs.push_back({a.class_id, b.class_id});
  j["segments"] = std::move(segs);
  return j;
}

inline nlohmann::ordered_json lcl_report_to_json(const LclReport& report,
                                                 const Cover* cover = nullptr) {
  nlohmann::ordered_json j;
  j["verdict"] = report.pass() ? "pass" : "fail";
  auto list = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json jv;
    jv["axiom"] = to_string(v.axiom);
    jv["cells"] = v.cells;
    if (cover) {
      auto ids = nlohmann::ordered_json::array();
      for (auto c : v.cells) ids.push_back(cover->cells.at(c).id);
      jv["ids"] = std::move(ids);
    }
    jv["feature"] = feature_to_json(v.feature);
    jv["detail"] = v.detail;
    list.push_back(std::move(jv));
  }
  j["violations"] = std::move(list);
  return j;
}

}  // namespace digisurf

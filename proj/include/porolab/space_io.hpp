#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "porolab/spaces/cantor.hpp"
#include "porolab/spaces/comb.hpp"
#include "porolab/spaces/interval.hpp"
#include "porolab/spaces/segment_stack.hpp"
#include "porolab/spaces/snowflake.hpp"
#include "porolab/spaces/spiral.hpp"
#include "porolab/spaces/tree.hpp"

namespace porolab {

/// Declarative space description, serializable to JSON with bit-exact
/// round-trips (ratios are stored as integer numerator/denominator pairs,
/// interval endpoints as IEEE doubles, which JSON round-trips exactly via
/// shortest-representation printing).
struct SpaceSpec {
  std::string kind;
  // interval
  double lo = 0.0, hi = 1.0;
  // cantor
  CantorSpec cantor;
  // tree / snowflake ratio, as a rational
  int64_t ratio_num = 1, ratio_den = 2;
  int depth = 6;
  // comb levels / spiral denominator bound / stack rows
  int count = 4;
  // snowflake base
  std::shared_ptr<SpaceSpec> base;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    if (kind == "interval") {
      j["lo"] = lo;
      j["hi"] = hi;
    } else if (kind == "cantor") {
      j["branches"] = cantor.branches;
      j["ratio"] = {{"num", cantor.ratio_num}, {"den", cantor.ratio_den}};
      j["depth"] = cantor.depth;
    } else if (kind == "tree") {
      j["ratio"] = {{"num", ratio_num}, {"den", ratio_den}};
      j["depth"] = depth;
    } else if (kind == "snowflake") {
      j["exponent"] = {{"num", ratio_num}, {"den", ratio_den}};
      j["base"] = base ? base->to_json() : nlohmann::json();
    } else if (kind == "comb") {
      j["levels"] = count;
    } else if (kind == "spiral") {
      j["max_denominator"] = count;
    } else if (kind == "segment_stack") {
      j["rows"] = count;
    } else {
      throw std::invalid_argument("SpaceSpec: unknown kind " + kind);
    }
    return j;
  }

  static SpaceSpec from_json(const nlohmann::json& j) {
    SpaceSpec s;
    s.kind = j.at("kind").get<std::string>();
    if (s.kind == "interval") {
      s.lo = j.at("lo").get<double>();
      s.hi = j.at("hi").get<double>();
    } else if (s.kind == "cantor") {
      s.cantor.branches = j.at("branches").get<int>();
      s.cantor.ratio_num = j.at("ratio").at("num").get<int64_t>();
      s.cantor.ratio_den = j.at("ratio").at("den").get<int64_t>();
      s.cantor.depth = j.at("depth").get<int>();
    } else if (s.kind == "tree") {
      s.ratio_num = j.at("ratio").at("num").get<int64_t>();
      s.ratio_den = j.at("ratio").at("den").get<int64_t>();
      s.depth = j.at("depth").get<int>();
    } else if (s.kind == "snowflake") {
      s.ratio_num = j.at("exponent").at("num").get<int64_t>();
      s.ratio_den = j.at("exponent").at("den").get<int64_t>();
      s.base = std::make_shared<SpaceSpec>(from_json(j.at("base")));
    } else if (s.kind == "comb" ) {
      s.count = j.at("levels").get<int>();
    } else if (s.kind == "spiral") {
      s.count = j.at("max_denominator").get<int>();
    } else if (s.kind == "segment_stack") {
      s.count = j.at("rows").get<int>();
    } else {
      throw std::invalid_argument("SpaceSpec: unknown kind " + s.kind);
    }
    return s;
  }

  SpaceHandle build() const {
    if (kind == "interval") return std::make_shared<IntervalSpace>(lo, hi);
    if (kind == "cantor") return std::make_shared<CantorSpace>(cantor);
    if (kind == "tree")
      return std::make_shared<TreeSpace>(double(ratio_num) / double(ratio_den),
                                         depth);
    if (kind == "snowflake") {
      if (!base) throw std::invalid_argument("SpaceSpec: snowflake needs base");
      return std::make_shared<SnowflakeSpace>(
          base->build(), double(ratio_num) / double(ratio_den));
    }
    if (kind == "comb") return std::make_shared<CombSpace>(count);
    if (kind == "spiral") return std::make_shared<SpiralSpace>(count);
    if (kind == "segment_stack")
      return std::make_shared<SegmentStackSpace>(count);
    throw std::invalid_argument("SpaceSpec: unknown kind " + kind);
  }
};

}  // namespace porolab

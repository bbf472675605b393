#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blab/blocks.hpp"
#include "blab/cube.hpp"
#include "blab/groups.hpp"
#include "blab/spp.hpp"
#include "blab/walks.hpp"
#include "json.hpp"

namespace blab {

using Json = nlohmann::ordered_json;

constexpr int kConfigVersion = 1;

// How the two-point set is chosen for an experiment.
struct DeltaPairConfig {
  // true: delta1 = s s', delta2 = s' s from the first non-commuting pair of measure
  // atoms, and the walk runs on 1/2 mu + 1/2 mu^{*(|s|+|s'|)}.
  bool semigroup = true;
  std::string delta1, delta2;  // words, used when semigroup is false; "" is the identity
};

struct ExperimentSection {
  // Weighted words; unset means uniform on the generators and their inverses.
  std::optional<std::vector<std::pair<std::string, mpq_class>>> atoms;
  DeltaPairConfig delta_pair;
  HomKind projection = HomKind::Pi;
  // Divisibility pattern on the projection; empty means every entry 1.
  std::vector<std::int64_t> lattice;
};

struct GroupConfig {
  std::string name;
  GroupSpec spec;
  ExperimentSection walk;
  ExperimentSection cube;
};

// "family" is one of lamplighter {rank, lamp_modulus}, gkp {variables, relation?,
// pivot?}, restricted_baumslag and baumslag_tf; "aliases" maps extra names.
GroupSpec parse_group_spec(const Json& group);
GroupConfig parse_group_config(const Json& doc);
GroupConfig load_group_config(const std::string& path);
Json read_json_file(const std::string& path);

Measure build_measure(const GroupSpec& spec, const ExperimentSection& section);
DeltaPair build_delta_pair(const GroupSpec& spec, const ExperimentSection& section);
// The lattice with its length checked against the projection (empty: all 1).
std::vector<std::int64_t> section_lattice(const GroupSpec& spec, const ExperimentSection& section);
WalkExperiment build_walk_experiment(const GroupSpec& spec, const ExperimentSection& section, unsigned threads = 1);

// {"version", "variables", "generators": [{"name", "matrix": rows of strings}],
//  "specialization"?: {"variables", "values": {formal variable: polynomial}}}.
BlocksInput parse_blocks_input(const Json& doc);

Json to_json(const SppVerdict& v, const VarNames& vars);
Json to_json(const CubeReport& r);
Json to_json(const WalkStats& s);
Json to_json(const BlockSpec& b);
Json to_json(const BlocksReport& r, const VarNames& vars);
Json to_json(const NineProduct& p);

// Indentation 2, trailing newline.
std::string dump(const Json& j);

}  // namespace blab

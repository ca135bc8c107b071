#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "garside/structure.hpp"

namespace garside {

/// Minimal description of a finite Garside structure: the simples, which of
/// them are the identity, Delta and the atoms, and right multiplication by
/// atoms. Everything else is derived from this.
struct AtomTable {
  std::string name;
  std::string label;
  int strands = 0;
  std::size_t simple_count = 0;
  std::size_t identity = 0;
  std::size_t delta = 0;
  std::vector<std::size_t> atoms;
  std::vector<int> weights;
  /// times_atom[s * atoms.size() + a] = index of s * atoms[a], or -1.
  std::vector<std::int32_t> times_atom;
  /// Per-simple serialization (permutation image or name).
  std::vector<nlohmann::json> serialized;
  std::vector<std::string> descriptions;
};

/// Dense tables indexed by simple index. Public so tests can corrupt them.
struct TableData {
  std::string name;
  std::string label;
  int strands = 0;
  std::size_t count = 0;
  std::size_t identity = 0;
  std::size_t delta = 0;
  std::vector<std::size_t> atoms;
  std::vector<int> weights;
  std::vector<int> length;
  std::vector<std::int32_t> times_atom;     // [s * A + a]
  std::vector<std::int32_t> atom_quotient;  // [a * count + s]
  std::vector<AtomSet> starting;
  std::vector<AtomSet> finishing;
  std::vector<std::int32_t> complement;
  int central_power = 1;
  std::vector<std::int32_t> tau;  // [p * count + s] for p in [0, central_power)
  std::vector<std::int32_t> parent;        // BFS spanning tree: s = parent * parent_atom
  std::vector<std::int32_t> parent_atom;
  std::vector<nlohmann::json> serialized;
  std::vector<std::string> descriptions;
};

/// Builds all derived tables. Throws ValidationError when the atom table does
/// not describe a structure (unreachable simples, missing complements).
TableData derive_tables(const AtomTable& table);

/// Structure backed by precomputed tables; meet, product and quotient are
/// cached as dense arrays when the simple count is at most kDenseLimit.
class TableStructure final : public GarsideStructure {
 public:
  static constexpr std::size_t kDenseLimit = 1500;

  explicit TableStructure(TableData data);

  int length(Simple s) const override { return data_.length[s.index()]; }
  Simple complement(Simple s) const override { return at(data_.complement[s.index()]); }
  Simple tau(Simple s, int power) const override;
  AtomSet starting_set(Simple s) const override { return data_.starting[s.index()]; }
  AtomSet finishing_set(Simple s) const override { return data_.finishing[s.index()]; }
  std::optional<Simple> times_atom(Simple s, std::size_t atom) const override;
  std::optional<Simple> atom_quotient(std::size_t atom, Simple s) const override;
  std::optional<Simple> multiply(Simple x, Simple y) const override;
  Simple left_quotient(Simple m, Simple y) const override;

  bool table_mode() const noexcept override { return true; }
  std::size_t simple_count() const override { return data_.count; }
  Simple simple_at(std::size_t i) const override { return at(static_cast<std::int64_t>(i)); }

  nlohmann::json serialize(Simple s) const override { return data_.serialized[s.index()]; }
  Simple deserialize(const nlohmann::json& j) const override;
  std::string describe(Simple s) const override { return data_.descriptions[s.index()]; }
  std::uint64_t fingerprint() const override;

  const TableData& data() const noexcept { return data_; }

 protected:
  bool valid_index(std::uint64_t index) const noexcept override { return index < data_.count; }
  Simple do_meet(Simple s, Simple t) const override;

 private:
  Simple at(std::int64_t index) const { return Simple::make(tag(), static_cast<std::uint64_t>(index)); }
  static Info make_info(const TableData& data);

  TableData data_;
  bool dense_ = false;
  std::vector<std::int32_t> meet_;      // [s * count + t]
  std::vector<std::int32_t> product_;   // [s * count + t], -1 if not simple
  std::vector<std::int32_t> quotient_;  // [m * count + y], -1 if m does not divide y
  std::unordered_map<std::string, std::int32_t> by_serialization_;
};

}  // namespace garside

#pragma once

// Concrete Garside structures: the classical braid monoid, the Birman-Ko-Lee
// monoid, the two-generator monoid G1 = <A, B | ABA = BB>, and table imports.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "garside/structure.hpp"
#include "garside/table_structure.hpp"

namespace garside {

using StructurePtr = std::shared_ptr<const GarsideStructure>;

enum class TableMode {
  automatic,    ///< tables when they fit (classical n <= 7), permutations otherwise
  table,        ///< require tables; capacity error beyond n = 9
  permutation,  ///< table-free permutation arithmetic (classical only, n <= 12)
};

inline constexpr int kMaxClassicalTableStrands = 9;
inline constexpr int kMaxAutomaticTableStrands = 7;
inline constexpr int kMaxPermutationStrands = 12;
inline constexpr int kMaxBklStrands = 10;

/// Classical structure on B_n^+: simples are permutations, Delta is the half twist.
StructurePtr build_classical(int n, TableMode mode = TableMode::automatic);
/// Birman-Ko-Lee structure: simples are non-crossing partitions, Delta the n-cycle.
StructurePtr build_bkl(int n);
/// G1 = <A, B | ABA = BB>, derived by exhaustive rewriting. Weights A = 1, B = 2.
StructurePtr build_g1();

/// Table-free classical structure; simples are packed permutations.
class PermutationBraidStructure final : public GarsideStructure {
 public:
  explicit PermutationBraidStructure(int n);

  int length(Simple s) const override;
  Simple complement(Simple s) const override;
  Simple tau(Simple s, int power) const override;
  AtomSet starting_set(Simple s) const override;
  AtomSet finishing_set(Simple s) const override;
  std::optional<Simple> times_atom(Simple s, std::size_t atom) const override;
  std::optional<Simple> atom_quotient(std::size_t atom, Simple s) const override;
  std::optional<Simple> multiply(Simple x, Simple y) const override;
  Simple left_quotient(Simple m, Simple y) const override;

  nlohmann::json serialize(Simple s) const override;
  Simple deserialize(const nlohmann::json& j) const override;
  std::string describe(Simple s) const override;
  std::uint64_t fingerprint() const override;

  Simple from_perm(const std::vector<std::uint8_t>& p) const;
  std::vector<std::uint8_t> to_perm(Simple s) const;

 protected:
  bool valid_index(std::uint64_t index) const noexcept override;

 private:
  static Info make_info(int n);
  int n_;
  std::vector<std::uint8_t> delta_perm_;
};

/// Structure from the table import format:
/// {"name", "simples": [...], "identity", "delta", "atoms": [...],
///  "lengths": {simple: int}, "products": [[s, t, s*t], ...]}.
/// Only products with an atom as right factor are required.
StructurePtr import_structure(const nlohmann::json& j);
/// Writes the import format (right multiplications by atoms).
nlohmann::json export_structure(const GarsideStructure& g);

/// Builds a structure from a family name ("classical", "bkl", "g1").
StructurePtr build_structure(const std::string& family, int n, TableMode mode = TableMode::automatic);

/// The 6x6 matrix with entry (a, b) = 1 iff complement(a) ^ b = 1, rows and
/// columns ordered A, B, AB, BA, BB, BAB.
inline constexpr std::array<const char*, 6> kG1ProperSimples = {"A", "B", "AB", "BA", "BB", "BAB"};
inline constexpr std::array<std::array<int, 6>, 6> kG1TransitionMatrix = {{
    {1, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 0},
    {0, 1, 0, 1, 0, 1},
    {1, 0, 1, 0, 0, 0},
    {1, 0, 1, 0, 0, 0},
    {0, 1, 0, 1, 0, 1},
}};

struct ValidationFailure {
  std::string axiom;
  std::vector<std::string> witnesses;
};

struct ValidationReport {
  std::string structure;
  std::vector<std::string> checks;
  std::vector<ValidationFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// Checks the Garside axioms on the simple tables. Pairs and triples are
/// exhaustive up to 150 simples and sampled (seeded) above that.
ValidationReport validate_structure(const GarsideStructure& g, std::uint64_t seed = 1);

}  // namespace garside

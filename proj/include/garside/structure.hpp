#pragma once

// Finite Garside structures of spherical type and the generic lattice
// operations on their simple elements.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace garside {

/// Handle to a simple element. The high 16 bits carry the tag of the owning
/// structure, the low 48 bits an index that only that structure interprets.
class Simple {
 public:
  static constexpr int kTagShift = 48;
  static constexpr std::uint64_t kIndexMask = (std::uint64_t{1} << kTagShift) - 1;

  constexpr Simple() = default;
  static constexpr Simple make(std::uint16_t tag, std::uint64_t index) {
    Simple s;
    s.bits_ = (std::uint64_t{tag} << kTagShift) | (index & kIndexMask);
    return s;
  }

  constexpr std::uint64_t index() const { return bits_ & kIndexMask; }
  constexpr std::uint16_t tag() const { return static_cast<std::uint16_t>(bits_ >> kTagShift); }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr auto operator<=>(Simple, Simple) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Bit i set iff atoms()[i] belongs to the set.
using AtomSet = std::uint64_t;

inline int atom_set_size(AtomSet s) { return __builtin_popcountll(s); }

class GarsideStructure {
 public:
  virtual ~GarsideStructure() = default;
  GarsideStructure(const GarsideStructure&) = delete;
  GarsideStructure& operator=(const GarsideStructure&) = delete;

  /// Family name: "classical", "bkl", "g1", or the name of an imported table.
  const std::string& name() const noexcept { return name_; }
  /// Short display label such as "B4", "BKL5" or "G1".
  const std::string& label() const noexcept { return label_; }
  /// Number of strands for braid structures, 0 otherwise.
  int strands() const noexcept { return strands_; }
  std::uint16_t tag() const noexcept { return tag_; }

  Simple identity() const noexcept { return identity_; }
  Simple delta() const noexcept { return delta_; }
  std::span<const Simple> atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  AtomSet all_atoms() const noexcept {
    return atoms_.size() == 64 ? ~AtomSet{0} : (AtomSet{1} << atoms_.size()) - 1;
  }
  int atom_weight(std::size_t atom) const { return weights_.at(atom); }
  std::span<const int> atom_weights() const noexcept { return weights_; }
  /// Smallest c > 0 with tau^c the identity on simples.
  int central_power() const noexcept { return central_power_; }
  int delta_length() const noexcept { return delta_length_; }

  bool owns(Simple s) const noexcept { return s.tag() == tag_ && valid_index(s.index()); }
  void require_owned(Simple s) const;

  virtual int length(Simple s) const = 0;
  virtual Simple complement(Simple s) const = 0;
  /// Delta^{-power} s Delta^{power}; power is reduced modulo central_power().
  virtual Simple tau(Simple s, int power) const = 0;
  virtual AtomSet starting_set(Simple s) const = 0;
  virtual AtomSet finishing_set(Simple s) const = 0;
  /// s * atom when that product is simple.
  virtual std::optional<Simple> times_atom(Simple s, std::size_t atom) const = 0;
  /// atom^{-1} s when atom is a left divisor of s.
  virtual std::optional<Simple> atom_quotient(std::size_t atom, Simple s) const = 0;

  /// Greatest common left divisor. Throws UsageError on foreign simples.
  Simple meet(Simple s, Simple t) const;
  /// x * y when the product is simple.
  virtual std::optional<Simple> multiply(Simple x, Simple y) const;
  /// m^{-1} y; requires m to be a left divisor of y.
  virtual Simple left_quotient(Simple m, Simple y) const;
  /// u is a left divisor of s.
  bool divides(Simple u, Simple s) const;
  /// Atom indices whose product is s (leftmost first).
  std::vector<std::size_t> atom_word(Simple s) const;

  /// Full simple tables are available and simples can be enumerated.
  virtual bool table_mode() const noexcept { return false; }
  virtual std::size_t simple_count() const;
  virtual Simple simple_at(std::size_t i) const;

  virtual nlohmann::json serialize(Simple s) const = 0;
  virtual Simple deserialize(const nlohmann::json& j) const = 0;
  virtual std::string describe(Simple s) const = 0;
  /// FNV-1a hash over the simple, complement and length tables.
  virtual std::uint64_t fingerprint() const = 0;

  std::size_t atom_index(Simple a) const;

 protected:
  struct Info {
    std::string name;
    std::string label;
    int strands = 0;
    int central_power = 1;
    int delta_length = 0;
    std::vector<int> weights;
  };
  explicit GarsideStructure(Info info);
  void set_elements(Simple identity, Simple delta, std::vector<Simple> atoms);
  void set_central_power(int c) { central_power_ = c; }
  void set_delta_length(int d) { delta_length_ = d; }

  virtual bool valid_index(std::uint64_t index) const noexcept = 0;
  /// Greedy atom extension; overridden where a cached table exists.
  virtual Simple do_meet(Simple s, Simple t) const;
  Simple greedy_meet(Simple s, Simple t) const;

 private:
  std::string name_;
  std::string label_;
  int strands_ = 0;
  std::uint16_t tag_;
  Simple identity_;
  Simple delta_;
  std::vector<Simple> atoms_;
  std::vector<int> weights_;
  int central_power_ = 1;
  int delta_length_ = 0;
};

// Generic operations on a structure.

/// True iff the pair (x, y) is left-weighted, i.e. complement(x) ^ y = 1.
inline bool is_left_weighted(const GarsideStructure& g, Simple x, Simple y) {
  // A nontrivial common divisor has an atom below it, so the meet is trivial
  // iff the starting sets are disjoint. (S(y) within F(x) is only equivalent
  // for the permutation models; it fails for G1 at x = y = B.)
  return (g.starting_set(g.complement(x)) & g.starting_set(y)) == 0;
}

/// Rewrites x y -> (x m)(m^{-1} y) with m = complement(x) ^ y.
std::pair<Simple, Simple> left_weighted_pair(const GarsideStructure& g, Simple x, Simple y);

inline std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

}  // namespace garside

template <>
struct std::hash<garside::Simple> {
  std::size_t operator()(garside::Simple s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};

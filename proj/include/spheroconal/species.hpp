#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace spheroconal {

/// Elementary singularity factors sn, cn, dn of one elliptic coordinate.
enum class Factor : std::uint8_t { s = 1, c = 2, d = 4 };

/// Which spheroconal angle a Lamé factor lives on (χ₁ with k₁², χ₂ with k₂²).
enum class Side { first, second };

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

char axis_name(Axis axis);

/// Singularity-removing prefactor A(χ) = snᵃ cnᵇ dnᶜ with a, b, c ∈ {0, 1}.
class Species {
 public:
  constexpr Species() = default;
  constexpr explicit Species(std::uint8_t mask) : mask_(mask & 7u) {}

  static constexpr Species one() { return Species(0); }
  static constexpr Species of(Factor f) { return Species(static_cast<std::uint8_t>(f)); }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool has(Factor f) const { return (mask_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr int factor_count() const { return (mask_ & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1); }
  constexpr Species flipped(Factor f) const {
    return Species(static_cast<std::uint8_t>(mask_ ^ static_cast<std::uint8_t>(f)));
  }
  /// Species reached by one χ-derivative: every factor toggles.
  constexpr Species complement() const { return Species(static_cast<std::uint8_t>(~mask_)); }

  /// Canonical tag: "1", "s", "c", "d", "sc", "sd", "cd", "scd".
  std::string name() const;

  friend constexpr bool operator==(Species, Species) = default;

 private:
  std::uint8_t mask_ = 0;
};

/// Fixed node count contributed by the prefactor on the given coordinate.
/// On χ₁ both sn and cn vanish inside the domain; on χ₂ only sn does.
int node_base(Species species, Side side);

/// Cartesian label of a matched species pair AB: one of 1, x, y, z, xy, xz, yz, xyz.
///
/// On χ₁ the letters map x→dn, y→cn, z→sn; on χ₂ they map x→sn, y→cn, z→dn,
/// so that x = dn(χ₁)sn(χ₂), y = cn(χ₁)cn(χ₂), z = sn(χ₁)dn(χ₂).
class HarmonicLabel {
 public:
  constexpr HarmonicLabel() = default;
  constexpr explicit HarmonicLabel(std::uint8_t mask) : mask_(mask & 7u) {}

  static constexpr HarmonicLabel of(Axis axis) {
    return HarmonicLabel(static_cast<std::uint8_t>(1u << static_cast<int>(axis)));
  }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool has(Axis axis) const { return (mask_ >> static_cast<int>(axis)) & 1u; }
  constexpr int degree() const { return (mask_ & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1); }
  constexpr HarmonicLabel flipped(Axis axis) const {
    return HarmonicLabel(static_cast<std::uint8_t>(mask_ ^ (1u << static_cast<int>(axis))));
  }

  /// Reflection parity Πᵢ under xᵢ → −xᵢ.
  constexpr int parity(Axis axis) const { return has(axis) ? -1 : 1; }
  /// Overall parity ΠₓΠᵧΠ_z.
  constexpr int overall_parity() const { return degree() % 2 == 0 ? 1 : -1; }

  Species species(Side side) const;
  /// Species name as written for that coordinate, e.g. "dc" on χ₁ and "sc" on χ₂ for xy.
  std::string species_name(Side side) const;
  /// "1", "x", ..., "xyz".
  std::string name() const;
  /// Position in the tag order 1, x, y, z, xy, xz, yz, xyz.
  int order() const;

  static HarmonicLabel from_species(Species species, Side side);

  friend constexpr bool operator==(HarmonicLabel, HarmonicLabel) = default;

 private:
  std::uint8_t mask_ = 0;
};

/// All eight labels in tag order.
const std::array<HarmonicLabel, 8>& all_labels();

}  // namespace spheroconal

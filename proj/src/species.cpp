#include "spheroconal/species.hpp"

namespace spheroconal {

namespace {

constexpr std::array<Factor, 3> kFirstSideLetters{Factor::d, Factor::c, Factor::s};
constexpr std::array<Factor, 3> kSecondSideLetters{Factor::s, Factor::c, Factor::d};

const std::array<Factor, 3>& letters(Side side) {
  return side == Side::first ? kFirstSideLetters : kSecondSideLetters;
}

char factor_char(Factor f) {
  switch (f) {
    case Factor::s: return 's';
    case Factor::c: return 'c';
    case Factor::d: return 'd';
  }
  return '?';
}

}  // namespace

char axis_name(Axis axis) { return "xyz"[static_cast<int>(axis)]; }

std::string Species::name() const {
  if (mask_ == 0) return "1";
  std::string out;
  for (Factor f : {Factor::s, Factor::c, Factor::d}) {
    if (has(f)) out += factor_char(f);
  }
  return out;
}

int node_base(Species species, Side side) {
  if (side == Side::first) {
    return static_cast<int>(species.has(Factor::s)) + static_cast<int>(species.has(Factor::c));
  }
  return static_cast<int>(species.has(Factor::s));
}

Species HarmonicLabel::species(Side side) const {
  std::uint8_t mask = 0;
  for (Axis axis : kAxes) {
    if (has(axis)) mask |= static_cast<std::uint8_t>(letters(side)[static_cast<int>(axis)]);
  }
  return Species(mask);
}

std::string HarmonicLabel::species_name(Side side) const {
  if (mask_ == 0) return "1";
  std::string out;
  for (Axis axis : kAxes) {
    if (has(axis)) out += factor_char(letters(side)[static_cast<int>(axis)]);
  }
  return out;
}

std::string HarmonicLabel::name() const {
  if (mask_ == 0) return "1";
  std::string out;
  for (Axis axis : kAxes) {
    if (has(axis)) out += axis_name(axis);
  }
  return out;
}

int HarmonicLabel::order() const {
  static constexpr std::array<int, 8> kOrder{0, 1, 2, 4, 3, 5, 6, 7};
  return kOrder[mask_];
}

HarmonicLabel HarmonicLabel::from_species(Species species, Side side) {
  std::uint8_t mask = 0;
  for (Axis axis : kAxes) {
    if (species.has(letters(side)[static_cast<int>(axis)])) {
      mask |= static_cast<std::uint8_t>(1u << static_cast<int>(axis));
    }
  }
  return HarmonicLabel(mask);
}

const std::array<HarmonicLabel, 8>& all_labels() {
  static const std::array<HarmonicLabel, 8> kLabels{
      HarmonicLabel(0), HarmonicLabel(1), HarmonicLabel(2), HarmonicLabel(4),
      HarmonicLabel(3), HarmonicLabel(5), HarmonicLabel(6), HarmonicLabel(7)};
  return kLabels;
}

}  // namespace spheroconal

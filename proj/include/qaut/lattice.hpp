#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qaut/errors.hpp"

namespace qaut {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

char axis_name(Axis axis);
Axis axis_from_name(const std::string& name);

/// Nuclear species of a lattice site. Rows along every active axis read
/// A,B,C,A,B,C,... so axis lengths are kept at multiples of 3.
enum class Species : int { A = 0, B = 1, C = 2 };

/// Adjacent species pair driven by one global swap stage.
enum class SpeciesPair : int { AB = 0, BC = 1, CA = 2 };

std::string species_pair_name(SpeciesPair pair);
SpeciesPair species_pair_from_name(const std::string& name);

/// Site coordinates within the lattice (no donor).
using Coord3 = std::array<int, 3>;

/// Storage-cell coordinates, one unit = one ABC period (3 sites).
using Cell = std::array<int, 3>;

/// A lattice site or the donor spin D. D sits off-lattice next to the
/// home site (0,0,0); it is the machine's only I/O and gate port.
struct SiteId {
    bool is_donor = false;
    Coord3 coords{0, 0, 0};

    static SiteId donor() { return SiteId{true, {0, 0, 0}}; }
    static SiteId at(Coord3 c) { return SiteId{false, c}; }

    std::string to_string() const;
    friend bool operator==(const SiteId&, const SiteId&) = default;
};

/// Geometry of the spin lattice: ABC-unit counts per axis, plus the radius
/// of the region around the donor whose resonances are detuned.
///
/// An axis with N >= 2 units is active (3N sites, shiftable); an axis with
/// N == 1 is degenerate and contributes a single site layer that cannot be
/// shifted. Total spin count includes the donor D.
struct LatticeSpec {
    std::array<int, 3> units{1, 1, 1};
    int detune_radius = 1;

    void validate() const;

    bool axis_active(Axis axis) const { return units[static_cast<int>(axis)] >= 2; }
    int units_on(Axis axis) const { return units[static_cast<int>(axis)]; }
    int axis_length(Axis axis) const {
        int n = units[static_cast<int>(axis)];
        return n >= 2 ? 3 * n : 1;
    }

    std::int64_t site_count() const;
    std::int64_t total_spins() const { return site_count() + 1; }
    std::int64_t cell_count() const;
    std::int64_t logical_capacity() const { return cell_count() - 1; }

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

std::int64_t logical_capacity(const LatticeSpec& spec);
std::int64_t total_spins(const LatticeSpec& spec);

Species species_at(const Coord3& site);

bool is_valid_site(const LatticeSpec& spec, const Coord3& site);
bool is_valid_cell(const LatticeSpec& spec, const Cell& cell);

/// Linear site index in lexicographic (i,j,k) order, k fastest.
std::int64_t site_index(const LatticeSpec& spec, const Coord3& site);
Coord3 site_at_index(const LatticeSpec& spec, std::int64_t index);

/// The A site of a storage cell: site coordinates are 3x the unit coords.
Coord3 cell_site(const Cell& cell);
bool is_cell_site(const Coord3& site);

/// All cells in lexicographic order; (0,0,0) is the reserved home cell.
std::vector<Cell> all_cells(const LatticeSpec& spec);

/// Net cyclic offset (in cells, per axis) between logical cells and the
/// physical cells their content currently occupies. After global shifts
/// the content of logical cell u sits at physical cell (u + offset) mod N.
struct Frame {
    std::array<int, 3> offset{0, 0, 0};

    bool is_identity() const { return offset == std::array<int, 3>{0, 0, 0}; }
    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Physical cell currently holding the content of logical cell u.
Cell physical_cell(const Frame& frame, const Cell& u, const LatticeSpec& spec);

/// Frame after one unit shift (+1 or -1 cell) along an axis.
/// Degenerate axes are rejected.
Frame shift_frame(const Frame& frame, Axis axis, int direction, const LatticeSpec& spec);

/// Per-axis signed cyclic displacement of target_cell's content from the
/// home cell: the minimal-magnitude residue of (u + offset) mod N, with a
/// distance-N/2 tie broken toward +. Shifting the lattice by the negation
/// of each component brings the content home.
std::array<int, 3> route_steps(const Cell& target_cell, const Frame& frame, const LatticeSpec& spec);

/// Lattice sites within cyclic Chebyshev distance detune_radius of the
/// home site; these need the second (detuned) pulse set. Sorted
/// lexicographically.
std::vector<Coord3> detuned_sites(const LatticeSpec& spec);

}  // namespace qaut

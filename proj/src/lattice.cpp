#include "qaut/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace qaut {

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    throw std::invalid_argument("bad axis");
}

Axis axis_from_name(const std::string& name) {
    if (name == "x") return Axis::X;
    if (name == "y") return Axis::Y;
    if (name == "z") return Axis::Z;
    throw std::invalid_argument("unknown axis '" + name + "'");
}

std::string species_pair_name(SpeciesPair pair) {
    switch (pair) {
        case SpeciesPair::AB: return "AB";
        case SpeciesPair::BC: return "BC";
        case SpeciesPair::CA: return "CA";
    }
    throw std::invalid_argument("bad species pair");
}

SpeciesPair species_pair_from_name(const std::string& name) {
    if (name == "AB") return SpeciesPair::AB;
    if (name == "BC") return SpeciesPair::BC;
    if (name == "CA") return SpeciesPair::CA;
    throw std::invalid_argument("unknown species pair '" + name + "'");
}

std::string SiteId::to_string() const {
    if (is_donor) return "D";
    return "(" + std::to_string(coords[0]) + "," + std::to_string(coords[1]) + "," +
           std::to_string(coords[2]) + ")";
}

void LatticeSpec::validate() const {
    for (Axis a : kAxes) {
        if (units_on(a) < 1) {
            throw std::invalid_argument("lattice units must be positive on every axis");
        }
    }
    if (detune_radius < 0) {
        throw std::invalid_argument("detune radius must be non-negative");
    }
}

std::int64_t LatticeSpec::site_count() const {
    std::int64_t n = 1;
    for (Axis a : kAxes) n *= axis_length(a);
    return n;
}

std::int64_t LatticeSpec::cell_count() const {
    std::int64_t n = 1;
    for (Axis a : kAxes) n *= units_on(a);
    return n;
}

std::int64_t logical_capacity(const LatticeSpec& spec) {
    spec.validate();
    return spec.logical_capacity();
}

std::int64_t total_spins(const LatticeSpec& spec) {
    spec.validate();
    return spec.total_spins();
}

Species species_at(const Coord3& site) {
    int s = (site[0] + site[1] + site[2]) % 3;
    return static_cast<Species>(s);
}

bool is_valid_site(const LatticeSpec& spec, const Coord3& site) {
    for (Axis a : kAxes) {
        int c = site[static_cast<int>(a)];
        if (c < 0 || c >= spec.axis_length(a)) return false;
    }
    return true;
}

bool is_valid_cell(const LatticeSpec& spec, const Cell& cell) {
    for (Axis a : kAxes) {
        int u = cell[static_cast<int>(a)];
        if (u < 0 || u >= spec.units_on(a)) return false;
    }
    return true;
}

std::int64_t site_index(const LatticeSpec& spec, const Coord3& site) {
    std::int64_t idx = 0;
    for (Axis a : kAxes) {
        idx = idx * spec.axis_length(a) + site[static_cast<int>(a)];
    }
    return idx;
}

Coord3 site_at_index(const LatticeSpec& spec, std::int64_t index) {
    Coord3 site{0, 0, 0};
    for (int a = 2; a >= 0; --a) {
        int len = spec.axis_length(static_cast<Axis>(a));
        site[a] = static_cast<int>(index % len);
        index /= len;
    }
    return site;
}

Coord3 cell_site(const Cell& cell) {
    return Coord3{3 * cell[0], 3 * cell[1], 3 * cell[2]};
}

bool is_cell_site(const Coord3& site) {
    return site[0] % 3 == 0 && site[1] % 3 == 0 && site[2] % 3 == 0;
}

std::vector<Cell> all_cells(const LatticeSpec& spec) {
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(spec.cell_count()));
    for (int i = 0; i < spec.units_on(Axis::X); ++i) {
        for (int j = 0; j < spec.units_on(Axis::Y); ++j) {
            for (int k = 0; k < spec.units_on(Axis::Z); ++k) {
                cells.push_back(Cell{i, j, k});
            }
        }
    }
    return cells;
}

namespace {

int mod_positive(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

Cell physical_cell(const Frame& frame, const Cell& u, const LatticeSpec& spec) {
    Cell p{};
    for (Axis a : kAxes) {
        int i = static_cast<int>(a);
        p[i] = mod_positive(u[i] + frame.offset[i], spec.units_on(a));
    }
    return p;
}

Frame shift_frame(const Frame& frame, Axis axis, int direction, const LatticeSpec& spec) {
    spec.validate();
    if (!spec.axis_active(axis)) {
        throw std::invalid_argument(std::string("axis ") + axis_name(axis) +
                                    " is degenerate and cannot be shifted");
    }
    if (direction != 1 && direction != -1) {
        throw std::invalid_argument("shift direction must be +1 or -1");
    }
    Frame next = frame;
    int i = static_cast<int>(axis);
    next.offset[i] = mod_positive(frame.offset[i] + direction, spec.units_on(axis));
    return next;
}

std::array<int, 3> route_steps(const Cell& target_cell, const Frame& frame, const LatticeSpec& spec) {
    spec.validate();
    if (!is_valid_cell(spec, target_cell)) {
        throw std::invalid_argument("target cell out of range");
    }
    std::array<int, 3> steps{0, 0, 0};
    for (Axis a : kAxes) {
        int i = static_cast<int>(a);
        int n = spec.units_on(a);
        int r = mod_positive(target_cell[i] + frame.offset[i], n);
        // minimal signed residue; the exact-half tie stays positive
        if (2 * r > n) r -= n;
        steps[i] = r;
    }
    return steps;
}

std::vector<Coord3> detuned_sites(const LatticeSpec& spec) {
    spec.validate();
    std::vector<Coord3> out;
    for (int i = 0; i < spec.axis_length(Axis::X); ++i) {
        for (int j = 0; j < spec.axis_length(Axis::Y); ++j) {
            for (int k = 0; k < spec.axis_length(Axis::Z); ++k) {
                Coord3 site{i, j, k};
                int dist = 0;
                for (Axis a : kAxes) {
                    int len = spec.axis_length(a);
                    int c = site[static_cast<int>(a)];
                    int d = std::min(c, len - c);  // cyclic distance to coordinate 0
                    dist = std::max(dist, d);
                }
                if (dist <= spec.detune_radius) out.push_back(site);
            }
        }
    }
    return out;
}

}  // namespace qaut

#pragma once

#include <array>
#include <string>
#include <vector>

#include "tanglekit/diagram.hpp"

namespace tanglekit {

// ---- faces and planarity ----

/// Next slot counterclockwise around the vertex owning `slot` (crossing or boundary circle,
/// boundaries treated as contracted vertices, the outer one seen from outside).
int rotate_slot(const Diagram& d, int slot);

/// Faces as cycles of sides. A side is a slot s read as the arc leaving s; the face lies
/// on its right. Free loops are not represented.
std::vector<std::vector<int>> faces(const Diagram& d);

/// Euler characteristic test on the 4-valent graph: V - E + F == 2 * (connected pieces).
bool is_planar(const Diagram& d);

// ---- strands, writhe, linking ----

struct StrandInfo {
    int count = 0;                 // open + closed strands, free loops excluded
    std::vector<int> component;    // per slot
    std::vector<bool> entering;    // per crossing slot: strand enters the crossing here
    std::vector<bool> closed;      // per component
};

/// Orients each strand from its lowest slot (open strands leave their lowest boundary slot).
StrandInfo strands(const Diagram& d);

/// +1 or -1 for crossing c under the orientation in `info`.
int crossing_sign(const Diagram& d, const StrandInfo& info, int c);
int writhe(const Diagram& d);
/// Open and closed strands plus free loops.
int component_count(const Diagram& d);

struct LinkingMatrix {
    int n = 0;
    std::vector<int> twice;  // row-major, 2 * lk
    double lk(int i, int j) const { return twice[i * n + j] / 2.0; }
};

/// Components of a link diagram in strand order, then free loops; reverse[i] flips component i.
LinkingMatrix linking_matrix(const Diagram& l, const std::vector<bool>& reverse = {});

// ---- local moves ----

enum class MoveKind { R1Insert, R1Delete, R2Insert, R2Delete, R3, R4, Delta };

const char* move_name(MoveKind k);

/// A move location. Meaning of a..d per kind:
///   R1Insert: a = side, b = variant 0..3
///   R1Delete: a = crossing
///   R2Insert: a, b = sides in one face, c = 1 if the strand of a goes over
///   R2Delete: a, b = crossings of the bigon
///   R3, Delta: a, b, c = crossings of a triangular face
///   R4: a = side, b = hole, c = corner label, d = 1 if the strand goes over
struct MoveSite {
    MoveKind kind = MoveKind::R1Insert;
    int a = 0, b = 0, c = 0, d = 0;
    std::string to_string() const;
};

/// A triangular face X.(kx+1)-Y.ky, Y.(ky+1)-Z.kz, Z.(kz+1)-X.kx.
struct TriangleSite {
    std::array<int, 3> crossing{};
    std::array<int, 3> port{};
    /// Each strand alternates over/under around the triangle (Delta site); otherwise R-III.
    bool cyclic = false;
};

std::vector<TriangleSite> triangle_sites(const Diagram& d);
/// Replaces the triangle by the other side; applying it twice restores the diagram.
Diagram triangle_move(const Diagram& d, const TriangleSite& site);
/// Throws PatternMismatch unless the three crossings bound a cyclic triangle.
Diagram delta_move(const Diagram& l, const std::array<int, 3>& crossings);
Diagram r3_move(const Diagram& d, const std::array<int, 3>& crossings);

Diagram r1_insert(const Diagram& d, int side, int variant);
Diagram r1_delete(const Diagram& d, int crossing);
Diagram r2_insert(const Diagram& d, int side1, int side2, bool first_over);
Diagram r2_delete(const Diagram& d, int x, int y);
/// Pushes the arc of `side` around hole `hole`, entering at the face corner between labels
/// `corner` and the next label counterclockwise; the strand crosses all four hole arcs.
Diagram r4_move(const Diagram& d, int side, int hole, int corner, bool over);

/// All sites of one kind (R2Insert and R4 sites come with both over choices).
std::vector<MoveSite> move_sites(const Diagram& d, MoveKind kind);
/// Throws PatternMismatch when the site does not fit.
Diagram reidemeister_apply(const Diagram& d, const MoveSite& site);

}  // namespace tanglekit

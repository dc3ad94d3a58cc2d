#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tanglekit/errors.hpp"

namespace tanglekit {

/// Endpoint labels on a boundary circle, as drawn in the projection plane.
enum Label : int { NW = 0, NE = 1, SE = 2, SW = 3 };

const char* label_name(int label);
int label_from_name(const std::string& name);  // throws SchemaError

/// One end of an arc: a crossing port (0..3, counterclockwise, over-strand through 0 and 2)
/// or a labeled endpoint on a boundary circle.
struct Attachment {
    bool on_boundary = false;
    int id = 0;
    int port = 0;
    bool operator==(const Attachment&) const = default;
    auto operator<=>(const Attachment&) const = default;
};

/// Combinatorial 4-valent diagram. Boundary 0 is the outer circle, boundaries 1..n are holes.
///
/// Slots index every attachment: boundary endpoints first (4*b + label), then crossing ports
/// (4*num_boundaries + 4*c + port). `mate` is a fixed-point-free involution on slots.
struct Diagram {
    int num_crossings = 0;
    int num_boundaries = 0;
    int free_loops = 0;
    std::vector<int> mate;
    bool planarity_verified = true;

    int num_slots() const { return 4 * (num_crossings + num_boundaries); }
    int bslot(int b, int label) const { return 4 * b + label; }
    int xslot(int c, int port) const { return 4 * num_boundaries + 4 * c + port; }
    bool is_crossing_slot(int s) const { return s >= 4 * num_boundaries; }
    Attachment attachment(int slot) const;
    int slot_of(const Attachment& a) const;

    int num_holes() const { return num_boundaries > 0 ? num_boundaries - 1 : 0; }
    bool is_link() const { return num_boundaries == 0; }
    bool is_ball() const { return num_boundaries == 1; }
    bool is_spherical() const { return num_boundaries == 2; }

    /// Throws MatchingError when `mate` is not a perfect matching.
    void validate() const;

    bool operator==(const Diagram& o) const {
        return num_crossings == o.num_crossings && num_boundaries == o.num_boundaries &&
               free_loops == o.free_loops && mate == o.mate;
    }
};

/// Arc list form, one pair per arc, in increasing order of the smaller slot.
std::vector<std::pair<Attachment, Attachment>> arcs_of(const Diagram& d);
Diagram from_arcs(int crossings, int boundaries, int free_loops,
                  const std::vector<std::pair<Attachment, Attachment>>& arcs);

/// Equality allowing each crossing's ports to be turned by 180 degrees (same crossing).
bool structurally_equal(const Diagram& a, const Diagram& b);

// ---- gluing ----

struct EndRef {
    int part;
    int boundary;
    int label;
};

/// Disjoint union of `parts`, with boundary endpoints in `joins` spliced together, and the
/// output boundaries assembled endpoint-by-endpoint from `keep`. Every boundary endpoint of
/// every part must appear in exactly one join or keep entry. Closed circles formed purely from
/// spliced arcs become free loops.
Diagram glue(const std::vector<const Diagram*>& parts,
             const std::vector<std::pair<EndRef, EndRef>>& joins,
             const std::vector<std::array<EndRef, 4>>& keep);

/// Relabels boundaries and ports: boundary b becomes bmap[b] with its labels sent through
/// lmaps[b]; every crossing port p becomes pmap[p].
Diagram relabel(const Diagram& d, const std::vector<int>& bmap,
                const std::vector<std::array<int, 4>>& lmaps, const std::array<int, 4>& pmap);

// ---- constructors ----

Diagram unknot();
Diagram unlink(int components);
Diagram single_crossing();
Diagram fundamental_tangle(int j);
Diagram htwist(long long p);
Diagram vtwist(long long q);
Diagram identity_spherical();
/// Four twist balls on an annulus; see build_J in diagram.cpp.
Diagram build_J(long long p1, long long p2, long long p3, long long p4);

// ---- closures and hole filling ----

Diagram numerator_closure(const Diagram& b);
Diagram denominator_closure(const Diagram& b);
/// Fills every hole; fills may themselves have holes, which are appended in order.
Diagram fill_holes(const Diagram& t, const std::vector<Diagram>& fills);
/// Fills only the listed holes (1-based); remaining holes keep their order, a filled hole is
/// replaced in place by the holes of its fill.
Diagram fill_some(const Diagram& t, const std::map<int, Diagram>& fills);

// ---- sums and symmetries ----

Diagram connect_h(const Diagram& a, const Diagram& b);
Diagram connect_v(const Diagram& a, const Diagram& b);
Diagram connect_h_all(const std::vector<Diagram>& parts);
Diagram connect_v_all(const std::vector<Diagram>& parts);

Diagram mirror(const Diagram& d);
/// 90 degree counterclockwise rotation of the whole picture (B^R, S^R).
Diagram rotate(const Diagram& d);
Diagram rotate_boundary(const Diagram& d, int boundary);
/// 180 degree rotations about the vertical / horizontal axis of the plane.
Diagram flip_h(const Diagram& d);
Diagram flip_v(const Diagram& d);

Diagram sph_star(const Diagram& s);
Diagram sph_swap(const Diagram& s);
Diagram sph_r1(const Diagram& s);
Diagram sph_r2(const Diagram& s);
Diagram sph_R(const Diagram& s);
/// s2 o s1: s1 goes into the hole of s2.
Diagram compose_spherical(const Diagram& s2, const Diagram& s1);

enum class SumKind { H, V, InnerH, InnerV };
/// ball_first selects B (op) S versus S (op) B.
Diagram sum_with_spherical(const Diagram& b, const Diagram& s, SumKind kind, bool ball_first);

// ---- structure ----

/// Closed components that do not touch any boundary, including free loops.
int closed_components(const Diagram& d);
/// Inserts a small circle clasped around the arc ending at `slot`.
Diagram hook_ring(const Diagram& d, int slot);
/// I with a ring clasped around its NW strand.
Diagram hooked_identity();

void require_boundaries(const Diagram& d, int n, const char* what);

}  // namespace tanglekit

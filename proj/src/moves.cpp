#include "tanglekit/moves.hpp"

#include <algorithm>
#include <numeric>

namespace tanglekit {

namespace {

int port_of(const Diagram& d, int slot) { return (slot - 4 * d.num_boundaries) % 4; }
int crossing_of(const Diagram& d, int slot) { return (slot - 4 * d.num_boundaries) / 4; }

void link(std::vector<int>& mate, int u, int v) {
    mate[u] = v;
    mate[v] = u;
}

int vertex_of(const Diagram& d, int slot) {
    return d.is_crossing_slot(slot) ? d.num_boundaries + crossing_of(d, slot) : slot / 4;
}

int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

/// Removes crossings, letting both strands pass straight through each removed crossing.
Diagram remove_straight(const Diagram& d, const std::vector<int>& gone) {
    std::vector<bool> dead(d.num_crossings, false);
    for (int c : gone) dead[c] = true;
    std::vector<int> newid(d.num_crossings, -1);
    int kept = 0;
    for (int c = 0; c < d.num_crossings; ++c)
        if (!dead[c]) newid[c] = kept++;
    Diagram out;
    out.num_boundaries = d.num_boundaries;
    out.num_crossings = kept;
    out.free_loops = d.free_loops;
    out.planarity_verified = d.planarity_verified;
    out.mate.assign(out.num_slots(), -1);
    auto is_dead = [&](int s) { return d.is_crossing_slot(s) && dead[crossing_of(d, s)]; };
    auto map_slot = [&](int s) {
        if (!d.is_crossing_slot(s)) return s;
        return out.xslot(newid[crossing_of(d, s)], port_of(d, s));
    };
    auto through = [&](int s) { return d.xslot(crossing_of(d, s), (port_of(d, s) + 2) % 4); };
    std::vector<bool> seen(d.num_slots(), false);
    for (int s = 0; s < d.num_slots(); ++s) {
        if (is_dead(s) || seen[s]) continue;
        int t = d.mate[s];
        while (is_dead(t)) {
            seen[t] = true;
            int u = through(t);
            seen[u] = true;
            t = d.mate[u];
        }
        seen[s] = seen[t] = true;
        link(out.mate, map_slot(s), map_slot(t));
    }
    for (int s = 0; s < d.num_slots(); ++s) {
        if (!is_dead(s) || seen[s]) continue;
        int t = s;
        do {
            seen[t] = true;
            int u = through(t);
            seen[u] = true;
            t = d.mate[u];
        } while (t != s);
        ++out.free_loops;
    }
    return out;
}

Diagram with_new_crossings(const Diagram& d, int k) {
    Diagram out = d;
    out.num_crossings += k;
    out.mate.resize(out.num_slots(), -1);
    return out;
}

}  // namespace

// ---- faces and planarity ----

int rotate_slot(const Diagram& d, int slot) {
    if (d.is_crossing_slot(slot)) return d.xslot(crossing_of(d, slot), (port_of(d, slot) + 1) % 4);
    int b = slot / 4, l = slot % 4;
    return d.bslot(b, b == 0 ? (l + 1) % 4 : (l + 3) % 4);
}

std::vector<std::vector<int>> faces(const Diagram& d) {
    std::vector<std::vector<int>> out;
    std::vector<bool> used(d.num_slots(), false);
    for (int s = 0; s < d.num_slots(); ++s) {
        if (used[s]) continue;
        std::vector<int> face;
        int t = s;
        do {
            used[t] = true;
            face.push_back(t);
            t = rotate_slot(d, d.mate[t]);
        } while (t != s);
        out.push_back(std::move(face));
    }
    return out;
}

bool is_planar(const Diagram& d) {
    const int v = d.num_boundaries + d.num_crossings;
    if (v == 0) return true;
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    int pieces = v;
    for (int s = 0; s < d.num_slots(); ++s) {
        int a = find(parent, vertex_of(d, s)), b = find(parent, vertex_of(d, d.mate[s]));
        if (a != b) {
            parent[a] = b;
            --pieces;
        }
    }
    const int e = d.num_slots() / 2;
    const int f = static_cast<int>(faces(d).size());
    return v - e + f == 2 * pieces;
}

// ---- strands ----

StrandInfo strands(const Diagram& d) {
    StrandInfo info;
    const int n = d.num_slots();
    info.component.assign(n, -1);
    info.entering.assign(n, false);
    auto opposite = [&](int t) { return d.xslot(crossing_of(d, t), (port_of(d, t) + 2) % 4); };
    auto walk = [&](int leave, int id, int stop) {
        int s = leave;
        while (true) {
            info.component[s] = id;
            const int t = d.mate[s];
            info.component[t] = id;
            if (!d.is_crossing_slot(t) || t == stop) return;
            info.entering[t] = true;
            s = opposite(t);
        }
    };
    for (int s = 0; s < 4 * d.num_boundaries; ++s) {
        if (info.component[s] >= 0) continue;
        walk(s, info.count++, -1);
        info.closed.push_back(false);
    }
    for (int s = 4 * d.num_boundaries; s < n; ++s) {
        if (info.component[s] >= 0) continue;
        // enter at s, leave through the opposite port
        const int id = info.count++;
        info.closed.push_back(true);
        info.entering[s] = true;
        info.component[s] = id;
        walk(opposite(s), id, s);
    }
    return info;
}

int crossing_sign(const Diagram& d, const StrandInfo& info, int c) {
    const int over_exit = info.entering[d.xslot(c, 0)] ? 2 : 0;
    const int under_exit = info.entering[d.xslot(c, 1)] ? 3 : 1;
    return (over_exit == 2 && under_exit == 3) || (over_exit == 0 && under_exit == 1) ? 1 : -1;
}

int writhe(const Diagram& d) {
    StrandInfo info = strands(d);
    int w = 0;
    for (int c = 0; c < d.num_crossings; ++c) w += crossing_sign(d, info, c);
    return w;
}

int component_count(const Diagram& d) { return strands(d).count + d.free_loops; }

LinkingMatrix linking_matrix(const Diagram& l, const std::vector<bool>& reverse) {
    require_boundaries(l, 0, "linking_matrix");
    StrandInfo info = strands(l);
    LinkingMatrix m;
    m.n = info.count + l.free_loops;
    m.twice.assign(m.n * m.n, 0);
    if (!reverse.empty() && static_cast<int>(reverse.size()) != m.n)
        throw PreconditionError("orientation list does not match the component count");
    for (int c = 0; c < l.num_crossings; ++c) {
        const int i = info.component[l.xslot(c, 0)], j = info.component[l.xslot(c, 1)];
        if (i == j) continue;
        int s = crossing_sign(l, info, c);
        if (!reverse.empty() && reverse[i] != reverse[j]) s = -s;
        m.twice[i * m.n + j] += s;
        m.twice[j * m.n + i] += s;
    }
    return m;
}

// ---- moves ----

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::R1Insert: return "R1+";
        case MoveKind::R1Delete: return "R1-";
        case MoveKind::R2Insert: return "R2+";
        case MoveKind::R2Delete: return "R2-";
        case MoveKind::R3: return "R3";
        case MoveKind::R4: return "R4";
        case MoveKind::Delta: return "Delta";
    }
    return "?";
}

std::string MoveSite::to_string() const {
    return std::string(move_name(kind)) + "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + "," + std::to_string(d) + ")";
}

std::vector<TriangleSite> triangle_sites(const Diagram& d) {
    std::vector<TriangleSite> out;
    for (const auto& f : faces(d)) {
        if (f.size() != 3) continue;
        TriangleSite t;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            if (!d.is_crossing_slot(f[i])) ok = false;
            else {
                t.crossing[i] = crossing_of(d, f[i]);
                t.port[i] = (port_of(d, f[i]) + 3) % 4;
            }
        }
        if (!ok || t.crossing[0] == t.crossing[1] || t.crossing[1] == t.crossing[2] ||
            t.crossing[0] == t.crossing[2])
            continue;
        const bool o0 = (t.port[0] + 1) % 2 == 0, o1 = (t.port[1] + 1) % 2 == 0,
                   o2 = (t.port[2] + 1) % 2 == 0;
        t.cyclic = o0 == o1 && o1 == o2;
        out.push_back(t);
    }
    return out;
}

Diagram triangle_move(const Diagram& d, const TriangleSite& site) {
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        if (d.mate[d.xslot(site.crossing[i], (site.port[i] + 1) % 4)] !=
            d.xslot(site.crossing[j], site.port[j]))
            throw PatternMismatch("not a triangular face");
    }
    Diagram out = d;
    std::vector<int> phi(d.num_slots(), -1);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int p = site.crossing[i], kp = site.port[i], q = site.crossing[j], kq = site.port[j];
        phi[d.xslot(p, (kp + 3) % 4)] = d.xslot(q, kq);
        phi[d.xslot(q, (kq + 2) % 4)] = d.xslot(p, (kp + 1) % 4);
    }
    for (int s = 0; s < d.num_slots(); ++s) {
        if (phi[s] < 0) continue;
        const int m = d.mate[s];
        if (phi[m] >= 0) {
            if (s < m) link(out.mate, phi[s], phi[m]);
        } else {
            link(out.mate, phi[s], m);
        }
    }
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        link(out.mate, d.xslot(site.crossing[i], (site.port[i] + 3) % 4),
             d.xslot(site.crossing[j], (site.port[j] + 2) % 4));
    }
    return out;
}

namespace {

Diagram triangle_at(const Diagram& d, const std::array<int, 3>& crossings, bool cyclic) {
    std::array<int, 3> want = crossings;
    std::sort(want.begin(), want.end());
    for (const auto& t : triangle_sites(d)) {
        std::array<int, 3> have = t.crossing;
        std::sort(have.begin(), have.end());
        if (have == want && t.cyclic == cyclic) return triangle_move(d, t);
    }
    throw PatternMismatch(cyclic ? "no Delta triangle on these crossings"
                                 : "no Reidemeister III triangle on these crossings");
}

}  // namespace

Diagram delta_move(const Diagram& l, const std::array<int, 3>& crossings) {
    return triangle_at(l, crossings, true);
}

Diagram r3_move(const Diagram& d, const std::array<int, 3>& crossings) {
    return triangle_at(d, crossings, false);
}

Diagram r1_insert(const Diagram& d, int side, int variant) {
    if (side < 0 || side >= d.num_slots()) throw PatternMismatch("side out of range");
    if (variant < 0 || variant > 3) throw PatternMismatch("R-I variant must be 0..3");
    const int a = side, b = d.mate[side];
    Diagram out = with_new_crossings(d, 1);
    const int x = d.num_crossings, i = variant / 2;
    auto X = [&](int p) { return out.xslot(x, (i + p) % 4); };
    link(out.mate, a, X(0));
    if (variant % 2 == 0) {
        link(out.mate, X(2), X(3));
        link(out.mate, X(1), b);
    } else {
        link(out.mate, X(2), X(1));
        link(out.mate, X(3), b);
    }
    return out;
}

Diagram r1_delete(const Diagram& d, int crossing) {
    if (crossing < 0 || crossing >= d.num_crossings) throw PatternMismatch("crossing out of range");
    for (int p = 0; p < 4; ++p)
        if (d.mate[d.xslot(crossing, p)] == d.xslot(crossing, (p + 1) % 4))
            return remove_straight(d, {crossing});
    throw PatternMismatch("crossing has no kink");
}

namespace {

int face_id_of(const std::vector<std::vector<int>>& fs, int side) {
    for (size_t i = 0; i < fs.size(); ++i)
        if (std::find(fs[i].begin(), fs[i].end(), side) != fs[i].end()) return static_cast<int>(i);
    return -1;
}

}  // namespace

Diagram r2_insert(const Diagram& d, int side1, int side2, bool first_over) {
    const int n = d.num_slots();
    if (side1 < 0 || side1 >= n || side2 < 0 || side2 >= n) throw PatternMismatch("side out of range");
    if (side1 == side2 || d.mate[side1] == side2) throw PatternMismatch("R-II needs two different arcs");
    auto fs = faces(d);
    if (face_id_of(fs, side1) != face_id_of(fs, side2))
        throw PatternMismatch("sides do not share a face");
    const int a = side1, b = d.mate[side1], c = side2, dd = d.mate[side2];
    Diagram out = with_new_crossings(d, 2);
    const int x = d.num_crossings, y = x + 1;
    auto X = [&](int p) { return out.xslot(x, p); };
    auto Y = [&](int p) { return out.xslot(y, p); };
    if (first_over) {
        link(out.mate, a, X(0));
        link(out.mate, dd, X(1));
        link(out.mate, X(2), Y(2));
        link(out.mate, X(3), Y(1));
        link(out.mate, b, Y(0));
        link(out.mate, c, Y(3));
    } else {
        link(out.mate, X(0), Y(2));
        link(out.mate, X(3), Y(3));
        link(out.mate, a, X(1));
        link(out.mate, dd, X(2));
        link(out.mate, b, Y(1));
        link(out.mate, c, Y(0));
    }
    return out;
}

namespace {

bool is_r2_bigon(const Diagram& d, int x, int y) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a % 2 == b % 2 && d.mate[d.xslot(x, a)] == d.xslot(y, b) &&
                d.mate[d.xslot(x, (a + 3) % 4)] == d.xslot(y, (b + 1) % 4))
                return true;
    return false;
}

}  // namespace

Diagram r2_delete(const Diagram& d, int x, int y) {
    if (x < 0 || y < 0 || x >= d.num_crossings || y >= d.num_crossings || x == y)
        throw PatternMismatch("R-II needs two distinct crossings");
    if (!is_r2_bigon(d, x, y) && !is_r2_bigon(d, y, x))
        throw PatternMismatch("crossings do not bound a removable bigon");
    return remove_straight(d, {x, y});
}

Diagram r4_move(const Diagram& d, int side, int hole, int corner, bool over) {
    if (hole < 1 || hole >= d.num_boundaries) throw PatternMismatch("R-IV needs a hole");
    if (corner < 0 || corner > 3) throw PatternMismatch("bad corner label");
    const int n = d.num_slots();
    if (side < 0 || side >= n) throw PatternMismatch("side out of range");
    std::array<int, 4> h{};
    int t = d.bslot(hole, corner);
    for (int i = 0; i < 4; ++i) {
        t = rotate_slot(d, t);
        h[i] = t;
    }
    for (int i = 0; i < 4; ++i)
        if (side == h[i] || d.mate[side] == h[i]) throw PatternMismatch("side lies on a hole arc");
    auto fs = faces(d);
    if (face_id_of(fs, side) != face_id_of(fs, h[0]))
        throw PatternMismatch("side does not face the hole corner");
    Diagram out = with_new_crossings(d, 4);
    const int first = d.num_crossings;
    // forward, inward, backward, outward
    const std::array<int, 4> role = over ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{1, 2, 3, 0};
    auto C = [&](int i, int r) { return out.xslot(first + i, role[r]); };
    const int u = side, v = d.mate[side];
    link(out.mate, u, C(0, 2));
    for (int i = 0; i + 1 < 4; ++i) link(out.mate, C(i, 0), C(i + 1, 2));
    link(out.mate, C(3, 0), v);
    for (int i = 0; i < 4; ++i) {
        const int m = d.mate[h[i]];
        link(out.mate, h[i], C(i, 1));
        const auto j = std::find(h.begin(), h.end(), m) - h.begin();
        if (j < 4) {
            if (i < j) link(out.mate, C(i, 3), C(static_cast<int>(j), 3));
        } else {
            link(out.mate, C(i, 3), m);
        }
    }
    return out;
}

std::vector<MoveSite> move_sites(const Diagram& d, MoveKind kind) {
    std::vector<MoveSite> out;
    switch (kind) {
        case MoveKind::R1Insert:
            for (int s = 0; s < d.num_slots(); ++s)
                for (int v = 0; v < 4; ++v) out.push_back({kind, s, v, 0, 0});
            break;
        case MoveKind::R1Delete:
            for (int c = 0; c < d.num_crossings; ++c)
                for (int p = 0; p < 4; ++p)
                    if (d.mate[d.xslot(c, p)] == d.xslot(c, (p + 1) % 4)) {
                        out.push_back({kind, c, 0, 0, 0});
                        break;
                    }
            break;
        case MoveKind::R2Insert:
            for (const auto& f : faces(d))
                for (size_t i = 0; i < f.size(); ++i)
                    for (size_t j = 0; j < f.size(); ++j)
                        if (i != j && d.mate[f[i]] != f[j])
                            for (int o = 0; o < 2; ++o) out.push_back({kind, f[i], f[j], o, 0});
            break;
        case MoveKind::R2Delete:
            for (int x = 0; x < d.num_crossings; ++x)
                for (int y = x + 1; y < d.num_crossings; ++y)
                    if (is_r2_bigon(d, x, y) || is_r2_bigon(d, y, x)) out.push_back({kind, x, y, 0, 0});
            break;
        case MoveKind::R3:
        case MoveKind::Delta:
            for (const auto& t : triangle_sites(d))
                if (t.cyclic == (kind == MoveKind::Delta))
                    out.push_back({kind, t.crossing[0], t.crossing[1], t.crossing[2], 0});
            break;
        case MoveKind::R4: {
            auto fs = faces(d);
            for (int hole = 1; hole < d.num_boundaries; ++hole)
                for (int corner = 0; corner < 4; ++corner) {
                    std::array<int, 4> h{};
                    int t = d.bslot(hole, corner);
                    for (int i = 0; i < 4; ++i) h[i] = t = rotate_slot(d, t);
                    const int f = face_id_of(fs, h[0]);
                    for (int s : fs[f]) {
                        bool on_hole = false;
                        for (int x : h) on_hole = on_hole || s == x || d.mate[s] == x;
                        if (on_hole) continue;
                        for (int o = 0; o < 2; ++o) out.push_back({kind, s, hole, corner, o});
                    }
                }
            break;
        }
    }
    return out;
}

Diagram reidemeister_apply(const Diagram& d, const MoveSite& m) {
    switch (m.kind) {
        case MoveKind::R1Insert: return r1_insert(d, m.a, m.b);
        case MoveKind::R1Delete: return r1_delete(d, m.a);
        case MoveKind::R2Insert: return r2_insert(d, m.a, m.b, m.c != 0);
        case MoveKind::R2Delete: return r2_delete(d, m.a, m.b);
        case MoveKind::R3: return r3_move(d, {m.a, m.b, m.c});
        case MoveKind::Delta: return delta_move(d, {m.a, m.b, m.c});
        case MoveKind::R4: return r4_move(d, m.a, m.b, m.c, m.d != 0);
    }
    throw PatternMismatch("unknown move");
}

}  // namespace tanglekit

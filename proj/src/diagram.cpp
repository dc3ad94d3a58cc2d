#include "tanglekit/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace tanglekit {

namespace {

constexpr std::array<int, 4> kIdPorts{0, 1, 2, 3};
// NW->SW, NE->NW, SE->NE, SW->SE
constexpr std::array<int, 4> kRot{SW, NW, NE, SE};
constexpr std::array<int, 4> kIdLabels{NW, NE, SE, SW};
constexpr std::array<int, 4> kFlipH{NE, NW, SW, SE};
constexpr std::array<int, 4> kFlipV{SW, SE, NE, NW};
constexpr std::array<int, 4> kMirrorPorts{3, 0, 1, 2};
constexpr std::array<int, 4> kFlipPorts{1, 0, 3, 2};

std::vector<int> identity_bmap(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

const char* label_name(int label) {
    static const char* names[] = {"NW", "NE", "SE", "SW"};
    if (label < 0 || label > 3) throw SchemaError("bad endpoint label");
    return names[label];
}

int label_from_name(const std::string& name) {
    if (name == "NW") return NW;
    if (name == "NE") return NE;
    if (name == "SE") return SE;
    if (name == "SW") return SW;
    throw SchemaError("unknown endpoint label '" + name + "'");
}

Attachment Diagram::attachment(int slot) const {
    if (slot < 4 * num_boundaries) return {true, slot / 4, slot % 4};
    int s = slot - 4 * num_boundaries;
    return {false, s / 4, s % 4};
}

int Diagram::slot_of(const Attachment& a) const {
    if (a.port < 0 || a.port > 3) throw MatchingError("port out of range");
    if (a.on_boundary) {
        if (a.id < 0 || a.id >= num_boundaries) throw MatchingError("boundary id out of range");
        return bslot(a.id, a.port);
    }
    if (a.id < 0 || a.id >= num_crossings) throw MatchingError("crossing id out of range");
    return xslot(a.id, a.port);
}

void Diagram::validate() const {
    if (num_crossings < 0 || num_boundaries < 0 || free_loops < 0)
        throw MatchingError("negative counts");
    if (static_cast<int>(mate.size()) != num_slots()) throw MatchingError("slot table size mismatch");
    for (int s = 0; s < num_slots(); ++s) {
        int t = mate[s];
        if (t < 0 || t >= num_slots() || t == s || mate[t] != s)
            throw MatchingError("attachments do not form a perfect matching");
    }
}

void require_boundaries(const Diagram& d, int n, const char* what) {
    if (d.num_boundaries != n)
        throw ShapeError(std::string(what) + " expects " + std::to_string(n) +
                         " boundary circle(s), got " + std::to_string(d.num_boundaries));
}

std::vector<std::pair<Attachment, Attachment>> arcs_of(const Diagram& d) {
    std::vector<std::pair<Attachment, Attachment>> out;
    for (int s = 0; s < d.num_slots(); ++s)
        if (s < d.mate[s]) out.emplace_back(d.attachment(s), d.attachment(d.mate[s]));
    return out;
}

Diagram from_arcs(int crossings, int boundaries, int free_loops,
                  const std::vector<std::pair<Attachment, Attachment>>& arcs) {
    Diagram d;
    d.num_crossings = crossings;
    d.num_boundaries = boundaries;
    d.free_loops = free_loops;
    d.mate.assign(d.num_slots(), -1);
    for (const auto& [a, b] : arcs) {
        int sa = d.slot_of(a), sb = d.slot_of(b);
        if (sa == sb || d.mate[sa] != -1 || d.mate[sb] != -1)
            throw MatchingError("attachment used by more than one arc");
        d.mate[sa] = sb;
        d.mate[sb] = sa;
    }
    d.validate();
    return d;
}

bool structurally_equal(const Diagram& a, const Diagram& b) {
    if (a.num_crossings != b.num_crossings || a.num_boundaries != b.num_boundaries ||
        a.free_loops != b.free_loops || a.mate.size() != b.mate.size())
        return false;
    const int nc = a.num_crossings;
    std::vector<int> turn(nc, -1);
    // maps a-slot to b-slot given the chosen turns
    auto image = [&](int s) {
        if (!a.is_crossing_slot(s)) return s;
        Attachment at = a.attachment(s);
        return a.xslot(at.id, (at.port + turn[at.id]) % 4);
    };
    auto propagate = [&](int start) {
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int p = 0; p < 4; ++p) {
                int s = a.xslot(c, p);
                int t = a.mate[s];
                int bt = b.mate[image(s)];
                if (!a.is_crossing_slot(t)) {
                    if (bt != t) return false;
                    continue;
                }
                if (!b.is_crossing_slot(bt)) return false;
                Attachment at = a.attachment(t), bb = b.attachment(bt);
                if (at.id != bb.id) return false;
                int need = ((bb.port - at.port) % 4 + 4) % 4;
                if (need != 0 && need != 2) return false;
                if (turn[at.id] == -1) {
                    turn[at.id] = need;
                    stack.push_back(at.id);
                } else if (turn[at.id] != need) {
                    return false;
                }
            }
        }
        return true;
    };
    for (int s = 0; s < 4 * a.num_boundaries; ++s) {
        int t = a.mate[s];
        if (!a.is_crossing_slot(t)) {
            if (b.mate[s] != t) return false;
            continue;
        }
        int bt = b.mate[s];
        if (!b.is_crossing_slot(bt)) return false;
        Attachment at = a.attachment(t), bb = b.attachment(bt);
        if (at.id != bb.id) return false;
        int need = ((bb.port - at.port) % 4 + 4) % 4;
        if (need != 0 && need != 2) return false;
        if (turn[at.id] == -1) {
            turn[at.id] = need;
            if (!propagate(at.id)) return false;
        } else if (turn[at.id] != need) {
            return false;
        }
    }
    for (int c = 0; c < nc; ++c) {
        if (turn[c] != -1) continue;
        bool ok = false;
        std::vector<int> saved = turn;
        for (int t0 : {0, 2}) {
            turn = saved;
            turn[c] = t0;
            if (propagate(c)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

Diagram glue(const std::vector<const Diagram*>& parts,
             const std::vector<std::pair<EndRef, EndRef>>& joins,
             const std::vector<std::array<EndRef, 4>>& keep) {
    const int np = static_cast<int>(parts.size());
    std::vector<int> gbase(np + 1, 0), xoff(np + 1, 0);
    for (int i = 0; i < np; ++i) {
        gbase[i + 1] = gbase[i] + parts[i]->num_slots();
        xoff[i + 1] = xoff[i] + parts[i]->num_crossings;
    }
    const int G = gbase[np];
    const int K = static_cast<int>(keep.size());
    auto gslot = [&](const EndRef& e) {
        const Diagram& d = *parts.at(e.part);
        if (e.boundary < 0 || e.boundary >= d.num_boundaries || e.label < 0 || e.label > 3)
            throw ShapeError("glue reference to a missing boundary endpoint");
        return gbase[e.part] + d.bslot(e.boundary, e.label);
    };

    Diagram out;
    out.num_boundaries = K;
    out.num_crossings = xoff[np];
    out.mate.assign(out.num_slots(), -1);
    for (const Diagram* p : parts) {
        out.free_loops += p->free_loops;
        if (!p->planarity_verified) out.planarity_verified = false;
    }

    std::vector<int> gm(G), link(G, -1), outslot(G, -1);
    for (int i = 0; i < np; ++i) {
        const Diagram& d = *parts[i];
        for (int s = 0; s < d.num_slots(); ++s) {
            gm[gbase[i] + s] = gbase[i] + d.mate[s];
            if (d.is_crossing_slot(s)) {
                Attachment a = d.attachment(s);
                outslot[gbase[i] + s] = out.xslot(xoff[i] + a.id, a.port);
            }
        }
    }
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < 4; ++l) {
            int g = gslot(keep[k][l]);
            if (outslot[g] != -1) throw ShapeError("boundary endpoint kept twice");
            outslot[g] = out.bslot(k, l);
        }
    for (const auto& [x, y] : joins) {
        int gx = gslot(x), gy = gslot(y);
        if (gx == gy || link[gx] != -1 || link[gy] != -1 || outslot[gx] != -1 || outslot[gy] != -1)
            throw ShapeError("boundary endpoint glued inconsistently");
        link[gx] = gy;
        link[gy] = gx;
    }
    for (int g = 0; g < G; ++g)
        if (outslot[g] == -1 && link[g] == -1) throw ShapeError("boundary endpoint left dangling");

    std::vector<char> seen(G, 0);
    for (int g = 0; g < G; ++g) {
        if (outslot[g] == -1 || seen[g]) continue;
        seen[g] = 1;
        int t = gm[g];
        while (outslot[t] == -1) {
            seen[t] = 1;
            int u = link[t];
            seen[u] = 1;
            t = gm[u];
        }
        seen[t] = 1;
        out.mate[outslot[g]] = outslot[t];
        out.mate[outslot[t]] = outslot[g];
    }
    for (int g = 0; g < G; ++g) {
        if (seen[g]) continue;
        int t = g;
        do {
            seen[t] = 1;
            int u = gm[t];
            seen[u] = 1;
            t = link[u];
        } while (t != g);
        ++out.free_loops;
    }
    return out;
}

Diagram relabel(const Diagram& d, const std::vector<int>& bmap,
                const std::vector<std::array<int, 4>>& lmaps, const std::array<int, 4>& pmap) {
    Diagram out = d;
    auto img = [&](int s) {
        if (d.is_crossing_slot(s)) {
            Attachment a = d.attachment(s);
            return d.xslot(a.id, pmap[a.port]);
        }
        int b = s / 4;
        return d.bslot(bmap[b], lmaps[b][s % 4]);
    };
    for (int s = 0; s < d.num_slots(); ++s) out.mate[img(s)] = img(d.mate[s]);
    return out;
}

// ---- constructors ----

Diagram unknot() {
    Diagram d;
    d.free_loops = 1;
    return d;
}

Diagram unlink(int components) {
    Diagram d;
    d.free_loops = components;
    return d;
}

Diagram single_crossing() {
    // ports 0..3 at NW, SW, SE, NE; over-strand NW-SE
    return from_arcs(1, 1, 0,
                     {{{true, 0, NW}, {false, 0, 0}},
                      {{true, 0, SW}, {false, 0, 1}},
                      {{true, 0, SE}, {false, 0, 2}},
                      {{true, 0, NE}, {false, 0, 3}}});
}

Diagram fundamental_tangle(int j) {
    if (j == 1) return from_arcs(0, 1, 0, {{{true, 0, NW}, {true, 0, SW}}, {{true, 0, NE}, {true, 0, SE}}});
    if (j == 2) return from_arcs(0, 1, 0, {{{true, 0, NW}, {true, 0, NE}}, {{true, 0, SW}, {true, 0, SE}}});
    throw PreconditionError("fundamental tangle index must be 1 or 2");
}

Diagram htwist(long long p) {
    if (p == 0) return fundamental_tangle(2);
    Diagram x = p > 0 ? single_crossing() : mirror(single_crossing());
    return connect_h_all(std::vector<Diagram>(static_cast<size_t>(std::llabs(p)), x));
}

Diagram vtwist(long long q) {
    if (q == 0) return fundamental_tangle(1);
    Diagram x = q > 0 ? single_crossing() : mirror(single_crossing());
    return connect_v_all(std::vector<Diagram>(static_cast<size_t>(std::llabs(q)), x));
}

Diagram identity_spherical() {
    std::vector<std::pair<Attachment, Attachment>> arcs;
    for (int l = 0; l < 4; ++l) arcs.push_back({{true, 0, l}, {true, 1, l}});
    return from_arcs(0, 2, 0, arcs);
}

namespace {

// Annulus with four ball sites: the two outer strands run down the left and right sides, the
// two hole strands loop over the top and under the bottom, and each ball clasps one outer
// strand with one hole strand. Boundaries: 0 outer, 1 hole, 2..5 balls (UL, UR, LL, LR).
Diagram j_template() {
    auto b = [](int id, int l) { return Attachment{true, id, l}; };
    constexpr int O = 0, H = 1, B1 = 2, B2 = 3, B3 = 4, B4 = 5;
    return from_arcs(0, 6, 0,
                     {{b(O, NW), b(B1, NW)}, {b(B1, SW), b(B3, NW)}, {b(B3, SW), b(O, SW)},
                      {b(O, NE), b(B2, NE)}, {b(B2, SE), b(B4, NE)}, {b(B4, SE), b(O, SE)},
                      {b(H, NW), b(B1, SE)}, {b(B1, NE), b(B2, NW)}, {b(B2, SW), b(H, NE)},
                      {b(H, SW), b(B3, NE)}, {b(B3, SE), b(B4, SW)}, {b(B4, NW), b(H, SE)}});
}

}  // namespace

Diagram build_J(long long p1, long long p2, long long p3, long long p4) {
    static const Diagram tmpl = j_template();
    return fill_some(tmpl, {{2, htwist(p1)}, {3, htwist(p2)}, {4, htwist(p3)}, {5, htwist(p4)}});
}

// ---- closures and fills ----

Diagram numerator_closure(const Diagram& b) {
    require_boundaries(b, 1, "numerator closure");
    return glue({&b}, {{{0, 0, NW}, {0, 0, NE}}, {{0, 0, SW}, {0, 0, SE}}}, {});
}

Diagram denominator_closure(const Diagram& b) {
    require_boundaries(b, 1, "denominator closure");
    return glue({&b}, {{{0, 0, NW}, {0, 0, SW}}, {{0, 0, NE}, {0, 0, SE}}}, {});
}

Diagram fill_some(const Diagram& t, const std::map<int, Diagram>& fills) {
    if (t.num_boundaries < 1) throw ShapeError("hole filling needs an outer boundary");
    std::vector<const Diagram*> parts{&t};
    std::vector<std::pair<EndRef, EndRef>> joins;
    std::vector<std::array<EndRef, 4>> keep;
    keep.push_back({EndRef{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}});
    for (const auto& [hole, f] : fills) {
        if (hole < 1 || hole >= t.num_boundaries) throw ShapeError("no such hole: " + std::to_string(hole));
        if (f.num_boundaries < 1) throw ShapeError("a hole can only be filled by a tangle with an outer boundary");
    }
    for (int h = 1; h < t.num_boundaries; ++h) {
        auto it = fills.find(h);
        if (it == fills.end()) {
            keep.push_back({EndRef{0, h, 0}, {0, h, 1}, {0, h, 2}, {0, h, 3}});
            continue;
        }
        int part = static_cast<int>(parts.size());
        parts.push_back(&it->second);
        for (int l = 0; l < 4; ++l) joins.push_back({{0, h, l}, {part, 0, l}});
        for (int k = 1; k < it->second.num_boundaries; ++k)
            keep.push_back({EndRef{part, k, 0}, {part, k, 1}, {part, k, 2}, {part, k, 3}});
    }
    return glue(parts, joins, keep);
}

Diagram fill_holes(const Diagram& t, const std::vector<Diagram>& fills) {
    if (static_cast<int>(fills.size()) != t.num_holes())
        throw ShapeError("hole count " + std::to_string(t.num_holes()) + " does not match " +
                         std::to_string(fills.size()) + " fill(s)");
    std::map<int, Diagram> m;
    for (size_t i = 0; i < fills.size(); ++i) m.emplace(static_cast<int>(i) + 1, fills[i]);
    return fill_some(t, m);
}

// ---- sums ----

namespace {

void require_outer(const Diagram& d, const char* what) {
    if (d.num_boundaries < 1) throw ShapeError(std::string(what) + " needs tangles with an outer boundary");
}

std::vector<std::array<EndRef, 4>> holes_in_order(const std::vector<const Diagram*>& parts) {
    std::vector<std::array<EndRef, 4>> keep;
    for (int i = 0; i < static_cast<int>(parts.size()); ++i)
        for (int h = 1; h < parts[i]->num_boundaries; ++h)
            keep.push_back({EndRef{i, h, 0}, {i, h, 1}, {i, h, 2}, {i, h, 3}});
    return keep;
}

}  // namespace

Diagram connect_h_all(const std::vector<Diagram>& parts) {
    if (parts.empty()) throw PreconditionError("empty connect sum");
    std::vector<const Diagram*> ps;
    for (const auto& p : parts) {
        require_outer(p, "horizontal sum");
        ps.push_back(&p);
    }
    const int last = static_cast<int>(ps.size()) - 1;
    std::vector<std::pair<EndRef, EndRef>> joins;
    for (int i = 0; i < last; ++i) {
        joins.push_back({{i, 0, NE}, {i + 1, 0, NW}});
        joins.push_back({{i, 0, SE}, {i + 1, 0, SW}});
    }
    std::vector<std::array<EndRef, 4>> keep{{EndRef{0, 0, NW}, {last, 0, NE}, {last, 0, SE}, {0, 0, SW}}};
    auto holes = holes_in_order(ps);
    keep.insert(keep.end(), holes.begin(), holes.end());
    return glue(ps, joins, keep);
}

Diagram connect_v_all(const std::vector<Diagram>& parts) {
    if (parts.empty()) throw PreconditionError("empty connect sum");
    std::vector<const Diagram*> ps;
    for (const auto& p : parts) {
        require_outer(p, "vertical sum");
        ps.push_back(&p);
    }
    const int last = static_cast<int>(ps.size()) - 1;
    std::vector<std::pair<EndRef, EndRef>> joins;
    for (int i = 0; i < last; ++i) {
        joins.push_back({{i, 0, SW}, {i + 1, 0, NW}});
        joins.push_back({{i, 0, SE}, {i + 1, 0, NE}});
    }
    std::vector<std::array<EndRef, 4>> keep{{EndRef{0, 0, NW}, {0, 0, NE}, {last, 0, SE}, {last, 0, SW}}};
    auto holes = holes_in_order(ps);
    keep.insert(keep.end(), holes.begin(), holes.end());
    return glue(ps, joins, keep);
}

Diagram connect_h(const Diagram& a, const Diagram& b) { return connect_h_all({a, b}); }
Diagram connect_v(const Diagram& a, const Diagram& b) { return connect_v_all({a, b}); }

// ---- symmetries ----

Diagram mirror(const Diagram& d) {
    std::vector<std::array<int, 4>> lm(d.num_boundaries, kIdLabels);
    return relabel(d, identity_bmap(d.num_boundaries), lm, kMirrorPorts);
}

Diagram rotate(const Diagram& d) {
    std::vector<std::array<int, 4>> lm(d.num_boundaries, kRot);
    return relabel(d, identity_bmap(d.num_boundaries), lm, kIdPorts);
}

Diagram rotate_boundary(const Diagram& d, int boundary) {
    if (boundary < 0 || boundary >= d.num_boundaries) throw ShapeError("no such boundary");
    std::vector<std::array<int, 4>> lm(d.num_boundaries, kIdLabels);
    lm[boundary] = kRot;
    return relabel(d, identity_bmap(d.num_boundaries), lm, kIdPorts);
}

Diagram flip_h(const Diagram& d) {
    std::vector<std::array<int, 4>> lm(d.num_boundaries, kFlipH);
    return relabel(d, identity_bmap(d.num_boundaries), lm, kFlipPorts);
}

Diagram flip_v(const Diagram& d) {
    std::vector<std::array<int, 4>> lm(d.num_boundaries, kFlipV);
    return relabel(d, identity_bmap(d.num_boundaries), lm, kFlipPorts);
}

Diagram sph_star(const Diagram& s) {
    require_boundaries(s, 2, "S*");
    return mirror(s);
}

Diagram sph_swap(const Diagram& s) {
    require_boundaries(s, 2, "S^-");
    // inversion of the sphere through the annulus: the hole becomes the outside
    return relabel(s, {1, 0}, {kFlipV, kFlipV}, kIdPorts);
}

Diagram sph_r1(const Diagram& s) {
    require_boundaries(s, 2, "S^r1");
    return rotate_boundary(s, 1);
}

Diagram sph_r2(const Diagram& s) {
    require_boundaries(s, 2, "S^r2");
    return rotate_boundary(s, 0);
}

Diagram sph_R(const Diagram& s) {
    require_boundaries(s, 2, "S^R");
    return rotate(s);
}

Diagram compose_spherical(const Diagram& s2, const Diagram& s1) {
    require_boundaries(s2, 2, "composition");
    require_boundaries(s1, 2, "composition");
    return fill_some(s2, {{1, s1}});
}

Diagram sum_with_spherical(const Diagram& b, const Diagram& s, SumKind kind, bool ball_first) {
    require_boundaries(b, 1, "ball/spherical sum");
    require_boundaries(s, 2, "ball/spherical sum");
    switch (kind) {
        case SumKind::H:
            return ball_first ? connect_h(b, s) : connect_h(s, b);
        case SumKind::V:
            return ball_first ? connect_v(b, s) : connect_v(s, b);
        case SumKind::InnerH:
            return ball_first ? sph_swap(connect_h(sph_swap(s), flip_h(b)))
                              : sph_swap(connect_h(flip_h(b), sph_swap(s)));
        case SumKind::InnerV:
            return ball_first ? sph_swap(connect_v(sph_swap(s), flip_v(b)))
                              : sph_swap(connect_v(flip_v(b), sph_swap(s)));
    }
    throw PreconditionError("unknown sum kind");
}

// ---- structure ----

int closed_components(const Diagram& d) {
    const int n = d.num_slots();
    std::vector<char> seen(n, 0);
    int closed = d.free_loops;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        bool touches = false;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            std::array<int, 2> nb{d.mate[u], -1};
            if (d.is_crossing_slot(u)) {
                Attachment a = d.attachment(u);
                nb[1] = d.xslot(a.id, (a.port + 2) % 4);
            } else {
                touches = true;
            }
            for (int v : nb)
                if (v >= 0 && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        if (!touches) ++closed;
    }
    return closed;
}

Diagram hook_ring(const Diagram& d, int slot) {
    if (slot < 0 || slot >= d.num_slots()) throw PreconditionError("slot out of range");
    Diagram out = d;
    const int a = slot, b = d.mate[slot];
    const int X = d.num_crossings, Y = d.num_crossings + 1;
    out.num_crossings += 2;
    out.mate.resize(out.num_slots());
    auto link = [&](int u, int v) {
        out.mate[u] = v;
        out.mate[v] = u;
    };
    // strand a -> X (over) -> Y (under) -> b; the ring passes X and Y on both sides
    link(a, out.xslot(X, 2));
    link(out.xslot(X, 0), out.xslot(Y, 1));
    link(out.xslot(Y, 3), b);
    link(out.xslot(X, 1), out.xslot(Y, 0));
    link(out.xslot(X, 3), out.xslot(Y, 2));
    return out;
}

Diagram hooked_identity() {
    Diagram i = identity_spherical();
    return hook_ring(i, i.bslot(0, NW));
}

}  // namespace tanglekit

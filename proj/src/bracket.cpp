#include "tanglekit/bracket.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>
#include <unordered_map>

namespace tanglekit {

// ---- Z[A]/(A^4+1) ----

Cyclo Cyclo::unit(int e) {
    e = ((e % 8) + 8) % 8;
    Cyclo r;
    r.c[e % 4] = e < 4 ? 1 : -1;
    return r;
}

Cyclo Cyclo::from_phi(const PhiScalar& x) {
    Cyclo r;
    r.c[x.exp()] = x.mag();
    return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    Cyclo r;
    for (int i = 0; i < 4; ++i) r.c[i] = checked_add(c[i], o.c[i]);
    return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    Cyclo r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (c[i] == 0 || o.c[j] == 0) continue;
            Int p = checked_mul(c[i], o.c[j]);
            int k = i + j;
            if (k >= 4) {
                k -= 4;
                p = checked_neg(p);
            }
            r.c[k] = checked_add(r.c[k], p);
        }
    return r;
}

PhiScalar Cyclo::to_phi() const {
    int nz = -1;
    for (int i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        if (nz != -1) throw ResultNotInPhi("bracket value is not a multiple of a single root of unity");
        nz = i;
    }
    return nz < 0 ? PhiScalar::zero() : PhiScalar(c[nz], nz);
}

// ---- cap ----

namespace {

int initial_cap() {
    if (const char* env = std::getenv("TANGLEKIT_MAX_CROSSINGS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return 24;
}

std::atomic<int>& cap_ref() {
    static std::atomic<int> cap{initial_cap()};
    return cap;
}

void check_link(const Diagram& l) {
    if (!l.is_link()) throw ShapeError("bracket needs a link diagram (no boundary circles)");
    if (l.num_crossings == 0 && l.free_loops == 0) throw EmptyDiagram("bracket of the empty diagram");
}

void check_cap(const Diagram& l) {
    if (l.num_crossings > crossing_cap())
        throw CrossingCapExceeded("diagram has " + std::to_string(l.num_crossings) +
                                  " crossings, cap is " + std::to_string(crossing_cap()));
}

// crossing-free link: k circles
PhiScalar trivial_bracket(const Diagram& l) {
    return l.free_loops == 1 ? PhiScalar::one() : PhiScalar::zero();
}

int smooth_partner(int port, bool b_smoothing) {
    static constexpr int a_part[4] = {1, 0, 3, 2};
    static constexpr int b_part[4] = {3, 2, 1, 0};
    return b_smoothing ? b_part[port] : a_part[port];
}

}  // namespace

int crossing_cap() { return cap_ref().load(); }
void set_crossing_cap(int cap) {
    if (cap <= 0) throw PreconditionError("crossing cap must be positive");
    cap_ref().store(cap);
}

std::vector<int> traversal_order(const Diagram& d) {
    const int n = d.num_crossings;
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    for (int s0 = 0; s0 < n; ++s0) {
        if (seen[s0]) continue;
        seen[s0] = 1;
        size_t head = order.size();
        order.push_back(s0);
        while (head < order.size()) {
            int c = order[head++];
            for (int p = 0; p < 4; ++p) {
                int t = d.mate[d.xslot(c, p)];
                if (!d.is_crossing_slot(t)) continue;
                int c2 = d.attachment(t).id;
                if (!seen[c2]) {
                    seen[c2] = 1;
                    order.push_back(c2);
                }
            }
        }
    }
    return order;
}

// ---- state loops ----

int loop_count(const Diagram& l, const State& s) {
    if (static_cast<int>(s.size()) != l.num_crossings) throw PreconditionError("state size mismatch");
    const int n = l.num_slots();
    std::vector<char> seen(n, 0);
    int loops = l.free_loops;
    for (int s0 = 0; s0 < n; ++s0) {
        if (seen[s0]) continue;
        ++loops;
        int u = s0;
        do {
            seen[u] = 1;
            int v = l.mate[u];
            seen[v] = 1;
            if (!l.is_crossing_slot(v)) break;  // tangle endpoint; not expected for links
            Attachment a = l.attachment(v);
            u = l.xslot(a.id, smooth_partner(a.port, s[a.id] != 0));
        } while (u != s0);
    }
    return loops;
}

bool state_parity(const Diagram& l, const State& s1, const State& s2) {
    return (loop_count(l, s1) - loop_count(l, s2)) % 2 == 0;
}

// ---- full oracle ----

PhiScalar bracket_full(const Diagram& l) {
    check_link(l);
    if (l.num_crossings == 0) {
        // one empty state with d = free_loops
        Cyclo delta = Cyclo{{0, 0, -1, 0}} + Cyclo{{-1, 0, 0, 0}} * Cyclo::unit(-2);
        Cyclo v = Cyclo::unit(0);
        for (int k = 1; k < l.free_loops; ++k) v = v * delta;
        return v.to_phi();
    }
    check_cap(l);
    const int c = l.num_crossings;
    const int maxd = 2 * c + l.free_loops + 1;
    // counts[(alpha - beta) + c][d]
    std::vector<std::vector<Int>> counts(2 * c + 1, std::vector<Int>(maxd + 1, 0));
    // links have no boundary slots, so slot = 4 * crossing + port
    const int n = l.num_slots();
    const int* mate = l.mate.data();
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t gen = 0;
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t i = 0; i < total; ++i) {
        const std::uint64_t g = i ^ (i >> 1);
        const int betas = std::popcount(g);
        ++gen;
        int d = l.free_loops;
        for (int s0 = 0; s0 < n; ++s0) {
            if (stamp[s0] == gen) continue;
            ++d;
            int u = s0;
            do {
                stamp[u] = gen;
                const int v = mate[u];
                stamp[v] = gen;
                const int port = v & 3;
                u = (v & ~3) | (((g >> (v >> 2)) & 1) ? 3 - port : port ^ 1);
            } while (u != s0);
        }
        counts[(c - betas) - betas + c][d] += 1;
    }
    // delta = -A^2 - A^-2
    Cyclo delta = Cyclo{{0, 0, -1, 0}} + Cyclo{{-1, 0, 0, 0}} * Cyclo::unit(-2);
    Cyclo sum;
    for (int e = 0; e <= 2 * c; ++e)
        for (int d = 1; d <= maxd; ++d) {
            if (counts[e][d] == 0) continue;
            Cyclo term = Cyclo::unit(e - c);
            for (int k = 1; k < d; ++k) term = term * delta;
            sum = sum + term * Cyclo{{counts[e][d], 0, 0, 0}};
        }
    return sum.to_phi();
}

// ---- monocyclic kernel ----

namespace {

struct MonoKernel {
    int c = 0;
    int narcs = 0;
    std::vector<int> order;                 // crossing processing order
    std::vector<std::array<int, 4>> arc_of;  // arc id at each port of order[k]

    explicit MonoKernel(const Diagram& l) {
        c = l.num_crossings;
        order = traversal_order(l);
        std::vector<int> arc_id(l.num_slots(), -1);
        for (int s = 0; s < l.num_slots(); ++s)
            if (s < l.mate[s]) {
                arc_id[s] = narcs;
                arc_id[l.mate[s]] = narcs;
                ++narcs;
            }
        arc_of.resize(c);
        for (int k = 0; k < c; ++k)
            for (int p = 0; p < 4; ++p) arc_of[k][p] = arc_id[l.xslot(order[k], p)];
    }
};

struct RollbackUF {
    std::vector<int> parent, size;
    std::vector<int> history;  // merged child roots, -1 for no-op

    explicit RollbackUF(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    // returns the size of the closed component when the union closes a cycle, else 0
    int unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            history.push_back(-1);
            return size[a];
        }
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        history.push_back(b);
        return 0;
    }
    void undo() {
        int b = history.back();
        history.pop_back();
        if (b < 0) return;
        int a = parent[b];
        size[a] -= size[b];
        parent[b] = b;
    }
};

// Applies the smoothing of crossing k; returns false when a loop closes early (d >= 2).
// Always pushes exactly two history entries.
inline int apply(const MonoKernel& K, RollbackUF& uf, int k, bool b) {
    const auto& a = K.arc_of[k];
    int c1 = b ? uf.unite(a[0], a[3]) : uf.unite(a[0], a[1]);
    int c2 = b ? uf.unite(a[1], a[2]) : uf.unite(a[2], a[3]);
    if (c1 || c2) {
        // a closed loop: only acceptable as the very last union, covering every arc
        if (c1 || k != K.c - 1 || c2 != K.narcs) return -1;
        return 1;
    }
    return 0;
}

void dfs(const MonoKernel& K, RollbackUF& uf, int k, int expo, std::array<Int, 8>& cnt) {
    for (int b = 0; b < 2; ++b) {
        int r = apply(K, uf, k, b != 0);
        int e = expo + (b ? -1 : 1);
        if (r == 1) {
            cnt[((e % 8) + 8) % 8] += 1;
        } else if (r == 0 && k + 1 < K.c) {
            dfs(K, uf, k + 1, e, cnt);
        }
        uf.undo();
        uf.undo();
    }
}

PhiScalar finish(const std::array<Int, 8>& cnt) {
    Cyclo v;
    for (int e = 0; e < 8; ++e) {
        if (cnt[e] == 0) continue;
        v = v + Cyclo::unit(e) * Cyclo{{cnt[e], 0, 0, 0}};
    }
    try {
        return v.to_phi();
    } catch (const ResultNotInPhi&) {
        // monocyclic exponents agree mod 4 on every genuine diagram
        throw NonCoherentPhases("monocyclic state exponents disagree mod 4; diagram is not planar");
    }
}

PhiScalar monocyclic(const Diagram& l, bool parallel) {
    check_link(l);
    if (l.num_crossings == 0) return trivial_bracket(l);
    check_cap(l);
    if (l.free_loops > 0) return PhiScalar::zero();
    MonoKernel K(l);
    std::array<Int, 8> cnt{};
    if (!parallel) {
        RollbackUF uf(K.narcs);
        dfs(K, uf, 0, 0, cnt);
        return finish(cnt);
    }
    const int depth = std::min(K.c, 8);
    const long long blocks = 1LL << depth;
    Int acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
#pragma omp parallel for schedule(dynamic) reduction(+ : acc[:8])
    for (long long blk = 0; blk < blocks; ++blk) {
        RollbackUF uf(K.narcs);
        std::array<Int, 8> local{};
        int expo = 0;
        bool alive = true;
        for (int k = 0; k < depth; ++k) {
            bool b = (blk >> (depth - 1 - k)) & 1;
            int r = apply(K, uf, k, b);
            expo += b ? -1 : 1;
            if (r == -1) {
                alive = false;
                break;
            }
            if (r == 1) {
                local[((expo % 8) + 8) % 8] += 1;
                alive = false;
                break;
            }
        }
        if (alive) {
            if (depth < K.c) dfs(K, uf, depth, expo, local);
        }
        for (int e = 0; e < 8; ++e) acc[e] += local[e];
    }
    for (int e = 0; e < 8; ++e) cnt[e] = acc[e];
    return finish(cnt);
}

}  // namespace

PhiScalar bracket_monocyclic(const Diagram& l) { return monocyclic(l, true); }
PhiScalar bracket_monocyclic_serial(const Diagram& l) { return monocyclic(l, false); }

// ---- skein ----

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

constexpr size_t kMaxSkeinStates = size_t{1} << 22;

}  // namespace

PhiScalar bracket_skein(const Diagram& l) {
    check_link(l);
    if (l.num_crossings == 0) return trivial_bracket(l);
    if (l.free_loops > 0) return PhiScalar::zero();
    const int c = l.num_crossings;
    const std::vector<int> order = traversal_order(l);
    std::vector<int> pos(c);
    for (int k = 0; k < c; ++k) pos[order[k]] = k;
    auto done_before = [&](int slot, int k) { return pos[l.attachment(slot).id] < k; };

    // A residual diagram after smoothing order[0..k) is the original one with some arcs
    // rerouted; the key lists (slot, mate) for every live slot whose original mate is gone.
    using Key = std::vector<int>;
    std::unordered_map<Key, Cyclo, VecHash> cur, next;
    cur.emplace(Key{}, Cyclo::unit(0));
    Cyclo result;
    for (int k = 0; k < c; ++k) {
        const int x = order[k];
        next.clear();
        for (const auto& [key, coef] : cur) {
            std::unordered_map<int, int> over;
            for (size_t i = 0; i < key.size(); i += 2) over[key[i]] = key[i + 1];
            for (int b = 0; b < 2; ++b) {
                std::unordered_map<int, int> m = over;
                auto mate_of = [&](int s) {
                    auto it = m.find(s);
                    return it != m.end() ? it->second : l.mate[s];
                };
                int loops = 0;
                const int p1[2] = {0, 2};
                const int q1[2] = {b ? 3 : 1, b ? 1 : 3};
                for (int j = 0; j < 2; ++j) {
                    int sp = l.xslot(x, p1[j]), sq = l.xslot(x, q1[j]);
                    int u = mate_of(sp), v = mate_of(sq);
                    if (u == sq) {
                        ++loops;
                    } else {
                        m[u] = v;
                        m[v] = u;
                    }
                    m.erase(sp);
                    m.erase(sq);
                }
                Cyclo term = coef * Cyclo::unit(b ? -1 : 1);
                if (k == c - 1) {
                    // every remaining arc has closed up
                    if (loops == 1) result = result + term;
                    continue;
                }
                if (loops > 0) continue;  // split circle: factor -A^2-A^-2 = 0
                Key nk;
                nk.reserve(m.size() * 2);
                std::vector<std::pair<int, int>> items;
                for (const auto& [s, t] : m)
                    if (!done_before(s, k + 1) && l.is_crossing_slot(s)) items.emplace_back(s, t);
                std::sort(items.begin(), items.end());
                for (const auto& [s, t] : items) {
                    nk.push_back(s);
                    nk.push_back(t);
                }
                auto [it, fresh] = next.try_emplace(std::move(nk), term);
                if (!fresh) it->second = it->second + term;
            }
        }
        if (next.size() > kMaxSkeinStates)
            throw CrossingCapExceeded("skein evaluation exceeded its residual-diagram budget");
        std::swap(cur, next);
    }
    return result.to_phi();
}

PhiScalar bracket(const Diagram& l, Evaluator ev) {
    switch (ev) {
        case Evaluator::Full:
            return bracket_full(l);
        case Evaluator::Monocyclic:
            return bracket_monocyclic(l);
        case Evaluator::MonocyclicSerial:
            return bracket_monocyclic_serial(l);
        case Evaluator::Skein:
            return bracket_skein(l);
        case Evaluator::Auto:
            break;
    }
    check_link(l);
    if (l.num_crossings <= crossing_cap()) return bracket_monocyclic(l);
    return bracket_skein(l);
}

}  // namespace tanglekit

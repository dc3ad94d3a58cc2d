#pragma once

// Oracles shared by the unit tests. None of them call the library evaluators.

#include <bit>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tanglekit/diagram.hpp"
#include "tanglekit/expr.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/phi.hpp"

namespace oracle {

using tanglekit::Diagram;
using tanglekit::Int;

inline Diagram D(const std::string& src) { return tanglekit::elaborate(*tanglekit::parse_expr(src)); }

/// Laurent polynomial in A, exponent -> coefficient.
using Laurent = std::map<int, Int>;

inline Laurent mul(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [e1, c1] : a)
        for (auto [e2, c2] : b) r[e1 + e2] += c1 * c2;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

inline Laurent add(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (auto [e, c] : b) r[e] += c;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

inline std::complex<double> at_eighth_root(const Laurent& p) {
    const double pi = 3.14159265358979323846;
    std::complex<double> s = 0;
    for (auto [e, c] : p) s += static_cast<double>(c) * std::polar(1.0, pi / 4 * e);
    return s;
}

inline std::complex<double> to_complex(const tanglekit::PhiScalar& x) {
    const double pi = 3.14159265358979323846;
    return static_cast<double>(x.mag()) * std::polar(1.0, pi / 4 * x.exp());
}

inline bool same_value(const tanglekit::PhiScalar& x, const Laurent& p) {
    return std::abs(to_complex(x) - at_eighth_root(p)) < 1e-6;
}

/// Circles after smoothing every crossing of a link diagram: bit x of `state` set means B at
/// crossing x. A joins port p with p^1, B joins p with 3-p.
inline int loops_of_state(const Diagram& l, std::uint64_t state) {
    std::vector<char> seen(l.num_slots(), 0);
    int loops = l.free_loops;
    for (int s0 = 0; s0 < l.num_slots(); ++s0) {
        if (seen[s0]) continue;
        ++loops;
        int s = s0;
        do {
            seen[s] = 1;
            const int t = l.mate[s];
            seen[t] = 1;
            const int x = t / 4, p = t % 4;
            const int q = ((state >> x) & 1) ? 3 - p : (p ^ 1);
            s = 4 * x + q;
        } while (s != s0);
    }
    return loops;
}

/// Bracket polynomial with generic A by brute-force state sum; each extra loop multiplies by
/// -A^2 - A^-2.
inline Laurent bracket_polynomial(const Diagram& l) {
    const int c = l.num_crossings;
    const Laurent delta{{2, -1}, {-2, -1}};
    Laurent total;
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << c); ++state) {
        const int loops = loops_of_state(l, state);
        const int b = std::popcount(state), a = c - b;
        Laurent term{{a - b, 1}};
        for (int k = 1; k < loops; ++k) term = mul(term, delta);
        total = add(total, term);
    }
    return total;
}

inline Laurent mirror_poly(const Laurent& p) {
    Laurent r;
    for (auto [e, c] : p) r[-e] = c;
    return r;
}

/// p equals q up to a factor of the form +-A^k.
inline bool equal_up_to_unit(const Laurent& p, const Laurent& q) {
    if (p.empty() || q.empty()) return p.empty() && q.empty();
    const int shift = p.begin()->first - q.begin()->first;
    for (Int sign : {1, -1}) {
        Laurent r;
        for (auto [e, c] : q) r[e + shift] = sign * c;
        if (r == p) return true;
    }
    return false;
}

// Textbook bracket polynomials, each up to +-A^k and mirror.
inline const Laurent kHopf{{4, -1}, {-4, -1}};
inline const Laurent kTrefoil{{-7, 1}, {-3, -1}, {5, -1}};
inline const Laurent kFigureEight{{8, 1}, {4, -1}, {0, 1}, {-4, -1}, {-8, 1}};

/// Isomorphism of diagrams that fixes boundary endpoints, relabels crossings and may turn
/// any crossing by a half turn.
class Iso {
public:
    Iso(const Diagram& a, const Diagram& b) : a_(a), b_(b) {}

    bool run() {
        if (a_.num_crossings != b_.num_crossings || a_.num_boundaries != b_.num_boundaries ||
            a_.free_loops != b_.free_loops)
            return false;
        map_.assign(a_.num_crossings, {-1, 0});
        used_.assign(b_.num_crossings, 0);
        for (int s = 0; s < 4 * a_.num_boundaries; ++s)
            if (!follow(s, s)) return false;
        return complete();
    }

private:
    struct Img {
        int c;
        int rot;
    };
    const Diagram& a_;
    const Diagram& b_;
    std::vector<Img> map_;
    std::vector<char> used_;

    int nb() const { return 4 * a_.num_boundaries; }

    // a-slot sa corresponds to b-slot sb; check their mates correspond and extend the map.
    bool follow(int sa, int sb) {
        const int ta = a_.mate[sa], tb = b_.mate[sb];
        if (ta < nb() || tb < nb()) return ta == tb;
        return bind((ta - nb()) / 4, (ta - nb()) % 4, (tb - nb()) / 4, (tb - nb()) % 4);
    }

    bool bind(int ca, int pa, int cb, int pb) {
        const int rot = ((pb - pa) % 4 + 4) % 4;
        if (rot % 2) return false;
        if (map_[ca].c != -1) return map_[ca].c == cb && map_[ca].rot == rot;
        if (used_[cb]) return false;
        map_[ca] = {cb, rot};
        used_[cb] = 1;
        for (int p = 0; p < 4; ++p)
            if (!follow(nb() + 4 * ca + p, nb() + 4 * cb + (p + rot) % 4)) return false;
        return true;
    }

    bool complete() {
        int ca = -1;
        for (int c = 0; c < a_.num_crossings; ++c)
            if (map_[c].c == -1) {
                ca = c;
                break;
            }
        if (ca == -1) return true;
        for (int cb = 0; cb < b_.num_crossings; ++cb) {
            if (used_[cb]) continue;
            for (int rot : {0, 2}) {
                auto saved_map = map_;
                auto saved_used = used_;
                if (bind(ca, 0, cb, rot) && complete()) return true;
                map_ = saved_map;
                used_ = saved_used;
            }
        }
        return false;
    }
};

inline bool isomorphic(const Diagram& a, const Diagram& b) { return Iso(a, b).run(); }

// ---- closed-form matrix operations on [[alpha, gamma], [beta, delta]], written out here ----

struct M2 {
    Int al, ga, be, de;
};

inline M2 m2(const tanglekit::ProjMatrix& m) { return {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)}; }
inline tanglekit::ProjMatrix pm(const M2& m) { return tanglekit::ProjMatrix::from_rows({{m.al, m.ga}, {m.be, m.de}}); }

}  // namespace oracle

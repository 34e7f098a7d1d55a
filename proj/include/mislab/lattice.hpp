#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mislab/bignum.hpp"
#include "mislab/errors.hpp"

namespace mislab {

struct MultiplierVector {
    std::vector<long> p; // each >= 2

    static MultiplierVector of(std::vector<long> ps) {
        if (ps.empty()) fail(errc::invalid_spec, "dimension must be >= 1");
        for (long v : ps)
            if (v < 2) fail(errc::invalid_spec, "p_j >= 2 required");
        return MultiplierVector{std::move(ps)};
    }

    int dim() const { return static_cast<int>(p.size()); }

    Nat product() const {
        Nat out = 1;
        for (long v : p) out *= v;
        return out;
    }
};

struct Box {
    std::vector<Nat> sides; // one per axis; a zero side means the empty box

    static Box of(std::vector<Nat> n) { return Box{std::move(n)}; }

    static Box uniform(int d, const Nat& n) { return Box{std::vector<Nat>(d, n)}; }

    int dim() const { return static_cast<int>(sides.size()); }

    bool empty() const {
        for (const auto& n : sides)
            if (n <= 0) return true;
        return sides.empty();
    }

    Nat volume() const {
        if (sides.empty()) return 0;
        Nat v = 1;
        for (const auto& n : sides) v *= n;
        return v;
    }

    bool contains(const std::vector<Nat>& pt) const {
        for (std::size_t j = 0; j < sides.size(); ++j)
            if (pt[j] < 1 || pt[j] > sides[j]) return false;
        return true;
    }

    // componentwise floor(N_j / p_j^e)
    Box scaled_down(const MultiplierVector& p, long e) const {
        Box out = *this;
        for (std::size_t j = 0; j < sides.size(); ++j)
            out.sides[j] = floor_div(sides[j], pow_nat(p.p[j], static_cast<unsigned long>(e)));
        return out;
    }
};

// Histogram over chain lengths: J counts lattice points, K counts chain heads.
struct ChainHistogram {
    enum class Flavor { J, K };

    Flavor flavor = Flavor::J;
    std::map<long, Nat> counts; // only nonzero entries

    Nat total() const {
        Nat s = 0;
        for (const auto& [l, c] : counts) s += c;
        return s;
    }

    Nat weighted_total() const {
        Nat s = 0;
        for (const auto& [l, c] : counts) s += l * c;
        return s;
    }
};

// A head has some coordinate not divisible by its multiplier.
inline bool is_index_head(const std::vector<Nat>& pt, const MultiplierVector& p) {
    if (pt.size() != p.p.size()) fail(errc::invalid_spec, "point/multiplier dimension mismatch");
    for (std::size_t j = 0; j < pt.size(); ++j) {
        if (pt[j] < 1) fail(errc::invalid_spec, "lattice coordinates start at 1");
        if (pt[j] % p.p[j] != 0) return true;
    }
    return false;
}

// Geometric progression from `pt` while it stays inside the box, ordered by step.
inline std::vector<std::vector<Nat>> chain_in_box(const std::vector<Nat>& pt,
                                                  const MultiplierVector& p, const Box& box) {
    if (!box.contains(pt)) fail(errc::out_of_box, "chain start outside the box");
    std::vector<std::vector<Nat>> out;
    std::vector<Nat> cur = pt;
    while (box.contains(cur)) {
        out.push_back(cur);
        for (std::size_t j = 0; j < cur.size(); ++j) cur[j] *= p.p[j];
    }
    return out;
}

namespace detail {
inline Nat prod_floor(const Box& box, const MultiplierVector& p, long e) {
    Nat v = 1;
    for (std::size_t j = 0; j < box.sides.size(); ++j) {
        v *= floor_div(box.sides[j], pow_nat(p.p[j], static_cast<unsigned long>(e)));
        if (v == 0) return 0;
    }
    return v;
}
} // namespace detail

// |{x in box : chain of x meets the box in exactly l points}|
//   = prod floor(N/p^{l-1}) - prod floor(N/p^l)
inline ChainHistogram hist_J(const Box& box, const MultiplierVector& p) {
    if (box.dim() != p.dim()) fail(errc::invalid_spec, "box/multiplier dimension mismatch");
    ChainHistogram h;
    h.flavor = ChainHistogram::Flavor::J;
    if (box.empty()) return h;
    for (long l = 1;; ++l) {
        Nat a = detail::prod_floor(box, p, l - 1);
        if (a == 0) break;
        Nat c = a - detail::prod_floor(box, p, l);
        if (c != 0) h.counts[l] = c;
    }
    return h;
}

// Head histogram by J-difference: K_N[l] = J_N[l] - J_{floor(N/p)}[l].
// Every non-head x factors as p*y with y in the floor(N/p) box and the same
// in-box chain length, so the difference counts exactly the heads.
inline ChainHistogram hist_K(const Box& box, const MultiplierVector& p) {
    ChainHistogram outer = hist_J(box, p);
    ChainHistogram inner = hist_J(box.scaled_down(p, 1), p);
    ChainHistogram h;
    h.flavor = ChainHistogram::Flavor::K;
    for (const auto& [l, c] : outer.counts) {
        Nat v = c;
        auto it = inner.counts.find(l);
        if (it != inner.counts.end()) v -= it->second;
        if (v != 0) h.counts[l] = v;
    }
    return h;
}

// Independent enumeration oracle: walks every lattice point / head.
inline std::pair<ChainHistogram, ChainHistogram>
enumerate_hist_oracle(const Box& box, const MultiplierVector& p, const Nat& budget = Nat(10000000)) {
    if (box.dim() != p.dim()) fail(errc::invalid_spec, "box/multiplier dimension mismatch");
    if (box.volume() > budget) fail(errc::box_too_large, "enumeration oracle budget exceeded");
    ChainHistogram j, k;
    j.flavor = ChainHistogram::Flavor::J;
    k.flavor = ChainHistogram::Flavor::K;
    if (box.empty()) return {j, k};
    int d = box.dim();
    std::vector<Nat> pt(d, 1);
    while (true) {
        long len = 0;
        std::vector<Nat> cur = pt;
        while (box.contains(cur)) {
            ++len;
            for (int a = 0; a < d; ++a) cur[a] *= p.p[a];
        }
        j.counts[len] += 1;
        if (is_index_head(pt, p)) k.counts[len] += 1;
        int axis = 0;
        while (axis < d) {
            pt[axis] += 1;
            if (pt[axis] <= box.sides[axis]) break;
            pt[axis] = 1;
            ++axis;
        }
        if (axis == d) break;
    }
    return {j, k};
}

// #heads inside a box: volume minus the all-divisible points.
inline Nat heads_in_box(const Box& box, const MultiplierVector& p) {
    if (box.empty()) return 0;
    return box.volume() - box.scaled_down(p, 1).volume();
}

// Joint histogram over heads of (chain length in outer box, chain length in
// inner box), computed by inclusion-exclusion on nested boxes. Used for
// boundary-region counting; runs in O(log^2) box reductions.
inline std::map<std::pair<long, long>, Nat>
head_joint_hist(const Box& outer, const Box& inner, const MultiplierVector& p) {
    if (outer.dim() != p.dim() || inner.dim() != p.dim())
        fail(errc::invalid_spec, "dimension mismatch");
    for (int j = 0; j < outer.dim(); ++j)
        if (inner.sides[j] > outer.sides[j])
            fail(errc::invalid_spec, "inner box exceeds outer box");

    // G(a, b) = #heads with outer chain length >= a and inner length >= b
    auto min_box = [&](long a, long b) {
        Box ba = outer.scaled_down(p, a - 1);
        if (b >= 1) {
            Box bb = inner.scaled_down(p, b - 1);
            for (int j = 0; j < ba.dim(); ++j)
                if (bb.sides[j] < ba.sides[j]) ba.sides[j] = bb.sides[j];
        }
        return ba;
    };
    auto G = [&](long a, long b) { return heads_in_box(min_box(a, b), p); };

    long amax = 1;
    while (!outer.scaled_down(p, amax).empty()) ++amax;
    long bmax = 0;
    while (!inner.scaled_down(p, bmax).empty()) ++bmax;

    std::map<std::pair<long, long>, Nat> out;
    for (long a = 1; a <= amax; ++a) {
        for (long b = 0; b <= std::min(a, bmax); ++b) {
            Nat c = G(a, b) - G(a + 1, b) - G(a, b + 1) + G(a + 1, b + 1);
            if (c != 0) out[{a, b}] = c;
        }
    }
    return out;
}

} // namespace mislab

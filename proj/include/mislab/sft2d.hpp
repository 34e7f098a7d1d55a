#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mislab/ball.hpp"
#include "mislab/subshift.hpp"

namespace mislab {

// Planar SFT given by its allowed 2x2 patterns [a,b;c,d] (a top-left, b
// top-right, c bottom-left, d bottom-right). Lattice coordinates are
// (column x, row y) with y growing upward, so the pattern anchored at (x,y)
// places c at (x,y), d at (x+1,y), a at (x,y+1), b at (x+1,y+1).
//
// Thin shapes (width or height 1) carry no 2x2 window; admissibility there
// falls back to the domino and symbol projections of the allowed set, which
// is what makes thickness-1 strips meaningful.
class Sft2dSpec {
public:
    static Sft2dSpec of(int r, const std::vector<std::array<int, 4>>& allowed) {
        Sft2dSpec s;
        if (r < 2) fail(errc::invalid_spec, "alphabet_size must be >= 2");
        if (r > 6) fail(errc::too_large, "alphabet too large for planar machinery");
        s.r_ = r;
        s.allowed_.assign(static_cast<std::size_t>(r * r * r * r), false);
        for (const auto& p : allowed) {
            for (int v : p)
                if (v < 0 || v >= r) fail(errc::invalid_spec, "pattern symbol out of range");
            s.allowed_[s.pat_index(p[0], p[1], p[2], p[3])] = true;
        }
        s.h_pair_.assign(static_cast<std::size_t>(r * r), false);
        s.v_pair_.assign(static_cast<std::size_t>(r * r), false);
        s.symbol_.assign(static_cast<std::size_t>(r), false);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    for (int d = 0; d < r; ++d) {
                        if (!s.allowed_[s.pat_index(a, b, c, d)]) continue;
                        s.h_pair_[a * r + b] = true;  // (left, right) in the top row
                        s.h_pair_[c * r + d] = true;  // and the bottom row
                        s.v_pair_[c * r + a] = true;  // (bottom, top) left column
                        s.v_pair_[d * r + b] = true;  // right column
                        s.symbol_[a] = s.symbol_[b] = s.symbol_[c] = s.symbol_[d] = true;
                    }
        if (!s.has_admissible_3x3())
            fail(errc::invalid_spec, "language is empty: no admissible 3x3 pattern");
        return s;
    }

    static Sft2dSpec from_strings(int r, const std::vector<std::string>& pats) {
        std::vector<std::array<int, 4>> allowed;
        for (const auto& p : pats) {
            if (p.size() != 4) fail(errc::parse_error, "pattern string must have 4 symbols");
            std::array<int, 4> q{};
            for (int i = 0; i < 4; ++i) {
                if (p[i] < '0' || p[i] > '9') fail(errc::parse_error, "pattern symbols are digits");
                q[i] = p[i] - '0';
            }
            allowed.push_back(q);
        }
        return of(r, allowed);
    }

    static Sft2dSpec full_shift(int r) {
        std::vector<std::array<int, 4>> all;
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    for (int d = 0; d < r; ++d) all.push_back({a, b, c, d});
        return of(r, all);
    }

    int alphabet_size() const { return r_; }

    bool pattern_allowed(int a, int b, int c, int d) const {
        return allowed_[pat_index(a, b, c, d)];
    }
    bool h_domino(int left, int right) const { return h_pair_[left * r_ + right]; }
    bool v_domino(int bottom, int top) const { return v_pair_[bottom * r_ + top]; }
    bool symbol_used(int s) const { return symbol_[s]; }

    bool all_patterns_allowed() const {
        for (bool b : allowed_)
            if (!b) return false;
        return true;
    }

    std::vector<std::array<int, 4>> allowed_list() const {
        std::vector<std::array<int, 4>> out;
        for (int a = 0; a < r_; ++a)
            for (int b = 0; b < r_; ++b)
                for (int c = 0; c < r_; ++c)
                    for (int d = 0; d < r_; ++d)
                        if (pattern_allowed(a, b, c, d)) out.push_back({a, b, c, d});
        return out;
    }

    // reflect across the main diagonal: (a,b,c,d) -> (d,b,c,a); horizontal and
    // vertical domino roles swap
    Sft2dSpec transposed() const {
        std::vector<std::array<int, 4>> t;
        for (const auto& p : allowed_list()) t.push_back({p[3], p[1], p[2], p[0]});
        return of(r_, t);
    }

private:
    std::size_t pat_index(int a, int b, int c, int d) const {
        return static_cast<std::size_t>(((a * r_ + b) * r_ + c) * r_ + d);
    }

    bool has_admissible_3x3() const;

    int r_ = 2;
    std::vector<bool> allowed_;
    std::vector<bool> h_pair_;
    std::vector<bool> v_pair_;
    std::vector<bool> symbol_;
};

namespace sft_detail {

// grid[x][y], shape w x h, partial values -1; checks constraints whose cells
// are all assigned
inline bool cell_consistent(const Sft2dSpec& spec, const std::vector<std::vector<int>>& g,
                            int w, int h, int x, int y) {
    int s = g[x][y];
    if (!spec.symbol_used(s)) return false;
    auto at = [&](int i, int j) { return (i >= 0 && i < w && j >= 0 && j < h) ? g[i][j] : -1; };
    if (at(x - 1, y) >= 0 && !spec.h_domino(g[x - 1][y], s)) return false;
    if (at(x + 1, y) >= 0 && !spec.h_domino(s, g[x + 1][y])) return false;
    if (at(x, y - 1) >= 0 && !spec.v_domino(g[x][y - 1], s)) return false;
    if (at(x, y + 1) >= 0 && !spec.v_domino(s, g[x][y + 1])) return false;
    for (int cx = x - 1; cx <= x; ++cx)
        for (int cy = y - 1; cy <= y; ++cy) {
            if (cx < 0 || cy < 0 || cx + 1 >= w || cy + 1 >= h) continue;
            int c = at(cx, cy), d = at(cx + 1, cy), a = at(cx, cy + 1), b = at(cx + 1, cy + 1);
            if (c < 0 || d < 0 || a < 0 || b < 0) continue;
            if (!spec.pattern_allowed(a, b, c, d)) return false;
        }
    return true;
}

// existence of a completion of the partial grid, filling `order`
inline bool complete_exists(const Sft2dSpec& spec, std::vector<std::vector<int>>& g, int w, int h,
                            const std::vector<std::pair<int, int>>& order, std::size_t pos) {
    if (pos == order.size()) return true;
    auto [x, y] = order[pos];
    if (g[x][y] >= 0) {
        if (!cell_consistent(spec, g, w, h, x, y)) return false;
        return complete_exists(spec, g, w, h, order, pos + 1);
    }
    for (int s = 0; s < spec.alphabet_size(); ++s) {
        g[x][y] = s;
        if (cell_consistent(spec, g, w, h, x, y) &&
            complete_exists(spec, g, w, h, order, pos + 1))
            return true;
    }
    g[x][y] = -1;
    return false;
}

} // namespace sft_detail

inline bool Sft2dSpec::has_admissible_3x3() const {
    std::vector<std::vector<int>> g(3, std::vector<int>(3, -1));
    std::vector<std::pair<int, int>> order;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) order.push_back({x, y});
    return sft_detail::complete_exists(*this, g, 3, 3, order, 0);
}

// Strip of thickness i: direction 1 runs along the vertical axis (width-i
// vertical strip, states are i-wide rows), direction 2 along the horizontal
// axis (height-i horizontal strip, states are i-tall columns).
struct StripSystem {
    int direction = 1;
    int thickness = 1;
    std::vector<std::vector<int>> states;     // cross-section words
    std::vector<std::vector<int>> transition; // 0/1 over states
};

inline StripSystem build_strip(const Sft2dSpec& spec, int direction, int thickness) {
    if (direction != 1 && direction != 2) fail(errc::invalid_spec, "direction must be 1 or 2");
    if (thickness < 1) fail(errc::invalid_spec, "thickness must be >= 1");
    if (thickness > 12) fail(errc::too_large, "strip thickness beyond state budget");
    const int r = spec.alphabet_size();
    const int i = thickness;

    // cross-section words: perpendicular dominoes must be extendable
    auto perp_ok = [&](int u, int v) {
        return direction == 1 ? spec.h_domino(u, v) : spec.v_domino(u, v);
    };
    std::vector<std::vector<int>> states;
    std::vector<int> w(i, 0);
    while (true) {
        bool ok = true;
        for (int t = 0; t < i && ok; ++t) {
            if (!spec.symbol_used(w[t])) ok = false;
            if (t + 1 < i && !perp_ok(w[t], w[t + 1])) ok = false;
        }
        if (ok) states.push_back(w);
        int pos = 0;
        while (pos < i) {
            if (++w[pos] < r) break;
            w[pos] = 0;
            ++pos;
        }
        if (pos == i) break;
    }
    if (states.empty()) fail(errc::empty_states, "strip has no admissible cross-section");

    auto step_ok = [&](const std::vector<int>& u, const std::vector<int>& v) {
        // u then v along the transfer axis
        for (int t = 0; t < i; ++t) {
            bool ok = direction == 1 ? spec.v_domino(u[t], v[t]) : spec.h_domino(u[t], v[t]);
            if (!ok) return false;
        }
        for (int t = 0; t + 1 < i; ++t) {
            bool ok = direction == 1
                          ? spec.pattern_allowed(v[t], v[t + 1], u[t], u[t + 1])
                          : spec.pattern_allowed(u[t + 1], v[t + 1], u[t], v[t]);
            if (!ok) return false;
        }
        return true;
    };

    StripSystem sys;
    sys.direction = direction;
    sys.thickness = thickness;
    sys.states = states;
    sys.transition.assign(states.size(), std::vector<int>(states.size(), 0));
    for (std::size_t p = 0; p < states.size(); ++p)
        for (std::size_t q = 0; q < states.size(); ++q)
            sys.transition[p][q] = step_ok(states[p], states[q]) ? 1 : 0;
    return sys;
}

namespace sft_detail {

// strongly connected components, Kosaraju on small graphs
inline std::vector<std::vector<int>> scc_components(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, int>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            bool advanced = false;
            for (int v = next; v < n; ++v) {
                if (adj[u][v] && !seen[v]) {
                    stack.back().second = v + 1;
                    seen[v] = true;
                    stack.push_back({v, 0});
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        std::vector<int> members;
        std::vector<int> stack{*it};
        comp[*it] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v = 0; v < n; ++v)
                if (adj[v][u] && comp[v] < 0) {
                    comp[v] = comp[u];
                    stack.push_back(v);
                }
        }
        comps.push_back(members);
    }
    return comps;
}

} // namespace sft_detail

struct StripEntropy {
    BallReal value;      // log of the spectral radius of the strip transition
    bool irreducible;    // false = computed from the dominant component
};

inline StripEntropy strip_entropy(const Sft2dSpec& spec, int direction, int thickness,
                                  mpfr_prec_t prec) {
    StripSystem sys = build_strip(spec, direction, thickness);
    auto comps = sft_detail::scc_components(sys.transition);
    bool irreducible = comps.size() == 1;
    BallReal best = BallReal::zero(prec);
    bool have = false;
    for (const auto& members : comps) {
        // skip trivial components without a cycle
        if (members.size() == 1 && !sys.transition[members[0]][members[0]]) continue;
        std::vector<std::vector<int>> sub(members.size(), std::vector<int>(members.size(), 0));
        for (std::size_t p = 0; p < members.size(); ++p)
            for (std::size_t q = 0; q < members.size(); ++q)
                sub[p][q] = sys.transition[members[p]][members[q]] + (p == q ? 1 : 0);
        PerronSandwich s = perron_sandwich(sub, prec + 16, std::max<long>(4096, 48L * (prec + 16)));
        if (!s.converged) fail(errc::non_convergence, "strip eigenvalue did not converge");
        BallReal lam = BallReal::hull(BallReal::from_rat(s.lambda_lo - 1, prec),
                                      BallReal::from_rat(s.lambda_hi - 1, prec));
        if (!have || best.certified_lt(lam)) {
            best = lam;
            have = true;
        }
    }
    if (!have) fail(errc::empty_states, "strip transition has no cycle");
    return StripEntropy{best.log(), irreducible};
}

// h = sum_k (1/i) * (prod_{l != k} w_l / sum_k prod_{l != k} w_l) * rate_k,
// rates are the thickness-i strip entropies per direction.
inline BallReal sft_boundary_complexity(const std::vector<BallReal>& rates, int thickness,
                                        const std::vector<Rat>& weights, mpfr_prec_t prec) {
    const std::size_t d = rates.size();
    if (weights.size() != d || d < 1) fail(errc::bad_weights, "weight/rate dimension mismatch");
    Rat sum = 0;
    int nonzero = 0;
    for (const auto& w : weights) {
        if (w < 0 || w > 1) fail(errc::bad_weights, "weights must lie in [0,1]");
        sum += w;
        if (w != 0) ++nonzero;
    }
    if (sum != 1) fail(errc::bad_weights, "weights must sum to 1");
    if (nonzero == 1) {
        // degenerate: mass on one axis means that axis's strip rate
        for (std::size_t k = 0; k < d; ++k)
            if (weights[k] != 0) return rates[k].div_nat(Nat(thickness));
    }
    std::vector<Rat> cof(d, Rat(1));
    Rat denom = 0;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l)
            if (l != k) cof[k] *= weights[l];
        denom += cof[k];
    }
    if (denom == 0) fail(errc::bad_weights, "at least two weights must be nonzero");
    BallReal h = BallReal::zero(prec);
    for (std::size_t k = 0; k < d; ++k) h = h.add(rates[k].mul_rat(cof[k] / denom));
    return h.div_nat(Nat(thickness));
}

// d=2 form: (1-t)/i log lambda_V + t/i log lambda_H
inline BallReal sft_mix_2d(const Sft2dSpec& spec, int thickness, const Rat& t, mpfr_prec_t prec) {
    if (t < 0 || t > 1) fail(errc::bad_weights, "t must lie in [0,1]");
    BallReal v = strip_entropy(spec, 1, thickness, prec).value;
    BallReal h = strip_entropy(spec, 2, thickness, prec).value;
    Nat i(thickness);
    return v.mul_rat(Rat(1) - t).add(h.mul_rat(t)).div_nat(i);
}

// t = (target - rate_V) / (rate_H - rate_V); accepts either rate ordering.
inline BallReal sft_realize_t(const Sft2dSpec& spec, int thickness, const BallReal& target,
                              mpfr_prec_t prec) {
    BallReal a = strip_entropy(spec, 1, thickness, prec).value.div_nat(Nat(thickness));
    BallReal b = strip_entropy(spec, 2, thickness, prec).value.div_nat(Nat(thickness));
    BallReal lo = BallReal::hull(a, a), hi = b;
    if (b.certified_lt(a)) {
        lo = b;
        hi = a;
    }
    if (target.certified_lt(lo) || target.certified_gt(hi))
        fail(errc::target_out_of_range, "target outside the strip-rate interval");
    BallReal denom = b.sub(a);
    if (denom.certified_sign() == 0) {
        if (target.sub(a).certified_sign() == 0) return BallReal::zero(prec);
        fail(errc::degenerate_interval, "equal strip rates cannot realize a different target");
    }
    return target.sub(a).div(denom);
}

// Count of admissible patterns on an m x n box (windows, dominoes and symbol
// projections; thin boxes are domino walks).
inline Nat admissible_count_box(const Sft2dSpec& spec, long m, long n) {
    if (m < 1 || n < 1) fail(errc::invalid_spec, "box sides must be >= 1");
    const int r = spec.alphabet_size();
    if (n > m) return admissible_count_box(spec.transposed(), n, m);
    // now n <= m; build column states of height n
    if (static_cast<double>(n) * std::log2(static_cast<double>(r)) > 24)
        fail(errc::too_large, "transfer state space too large");
    std::vector<std::vector<int>> cols;
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    while (true) {
        bool ok = true;
        for (long t = 0; t < n && ok; ++t) {
            if (!spec.symbol_used(w[static_cast<std::size_t>(t)])) ok = false;
            if (t + 1 < n &&
                !spec.v_domino(w[static_cast<std::size_t>(t)], w[static_cast<std::size_t>(t + 1)]))
                ok = false;
        }
        if (ok) cols.push_back(w);
        long pos = 0;
        while (pos < n) {
            if (++w[static_cast<std::size_t>(pos)] < r) break;
            w[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    if (cols.empty()) return 0;
    auto col_step = [&](const std::vector<int>& u, const std::vector<int>& v) {
        for (long t = 0; t < n; ++t)
            if (!spec.h_domino(u[static_cast<std::size_t>(t)], v[static_cast<std::size_t>(t)]))
                return false;
        for (long t = 0; t + 1 < n; ++t)
            if (!spec.pattern_allowed(u[static_cast<std::size_t>(t + 1)],
                                      v[static_cast<std::size_t>(t + 1)],
                                      u[static_cast<std::size_t>(t)],
                                      v[static_cast<std::size_t>(t)]))
                return false;
        return true;
    };
    std::vector<Nat> vec(cols.size(), 1);
    for (long step = 1; step < m; ++step) {
        std::vector<Nat> nxt(cols.size(), 0);
        for (std::size_t q = 0; q < cols.size(); ++q)
            for (std::size_t p = 0; p < cols.size(); ++p)
                if (col_step(cols[p], cols[q])) nxt[q] += vec[p];
        vec.swap(nxt);
    }
    Nat total = 0;
    for (const auto& v : vec) total += v;
    return total;
}

// Certificate for the determinism fast path: whenever (a,b) is a horizontal
// domino and (d,b) a vertical one, exactly one c completes [a,b;c,d].
inline bool frame_determinism_certificate(const Sft2dSpec& spec) {
    const int r = spec.alphabet_size();
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int d = 0; d < r; ++d) {
                if (!spec.h_domino(a, b) || !spec.v_domino(d, b)) continue;
                int count = 0;
                for (int c = 0; c < r; ++c)
                    if (spec.pattern_allowed(a, b, c, d)) ++count;
                if (count != 1) return false;
            }
    return true;
}

// Distinct restrictions to the width-i top/right frame (box minus the
// bottom-left (m-i) x (n-i) sub-box) of admissible patterns on the box.
inline Nat frame_count_empirical(const Sft2dSpec& spec, long m, long n, long i,
                                 long exhaustive_cell_budget = 36) {
    if (m < 1 || n < 1 || i < 1) fail(errc::invalid_spec, "frame parameters must be >= 1");
    if (m <= i || n <= i) return admissible_count_box(spec, m, n); // frame is the whole box

    if (m * n > exhaustive_cell_budget) {
        if (i == 1 && frame_determinism_certificate(spec)) {
            // the frame determines the box: count domino walks along the
            // L-path (right column bottom-to-top, then top row right-to-left)
            const int r = spec.alphabet_size();
            std::vector<Nat> vec(static_cast<std::size_t>(r), 0);
            for (int s = 0; s < r; ++s) vec[static_cast<std::size_t>(s)] = spec.symbol_used(s);
            for (long step = 1; step < n; ++step) {
                std::vector<Nat> nxt(static_cast<std::size_t>(r), 0);
                for (int t = 0; t < r; ++t)
                    for (int s = 0; s < r; ++s)
                        if (spec.v_domino(s, t)) nxt[static_cast<std::size_t>(t)] += vec[static_cast<std::size_t>(s)];
                vec.swap(nxt);
            }
            for (long step = 1; step < m; ++step) {
                std::vector<Nat> nxt(static_cast<std::size_t>(r), 0);
                for (int t = 0; t < r; ++t)
                    for (int s = 0; s < r; ++s)
                        if (spec.h_domino(t, s)) nxt[static_cast<std::size_t>(t)] += vec[static_cast<std::size_t>(s)];
                vec.swap(nxt);
            }
            Nat total = 0;
            for (const auto& v : vec) total += v;
            return total;
        }
        fail(errc::too_large, "exhaustive frame counting budget exceeded");
    }

    const int w = static_cast<int>(m), h = static_cast<int>(n);
    std::vector<std::pair<int, int>> frame_cells, interior_cells;
    // L-path order: right strip bottom-to-top, then top strip right-to-left
    for (int x = w - static_cast<int>(i); x < w; ++x)
        for (int y = 0; y < h; ++y) frame_cells.push_back({x, y});
    for (int y = h - static_cast<int>(i); y < h; ++y)
        for (int x = w - static_cast<int>(i) - 1; x >= 0; --x) frame_cells.push_back({x, y});
    for (int y = h - static_cast<int>(i) - 1; y >= 0; --y)
        for (int x = w - static_cast<int>(i) - 1; x >= 0; --x) interior_cells.push_back({x, y});

    std::vector<std::vector<int>> g(static_cast<std::size_t>(w),
                                    std::vector<int>(static_cast<std::size_t>(h), -1));
    Nat count = 0;
    const int r = spec.alphabet_size();
    // depth-first over frame assignments with local pruning, then an
    // interior-existence check per completed frame
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == frame_cells.size()) {
            auto g2 = g;
            if (sft_detail::complete_exists(spec, g2, w, h, interior_cells, 0)) count += 1;
            return;
        }
        auto [x, y] = frame_cells[pos];
        for (int s = 0; s < r; ++s) {
            g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = s;
            if (sft_detail::cell_consistent(spec, g, w, h, x, y)) rec(pos + 1);
        }
        g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = -1;
    };
    rec(0);
    return count;
}

// Bounded necessary check for block gluing: all pairs of admissible
// window-sized blocks at separation exactly `candidate` must co-extend.
struct GlueProbeReport {
    bool verified = false;
    std::string detail;
};

inline GlueProbeReport block_gluing_probe(const Sft2dSpec& spec, long candidate, long window) {
    if (window < 1 || window > 6) fail(errc::invalid_spec, "window must lie in [1, 6]");
    if (candidate < 0) fail(errc::invalid_spec, "gluing constant must be >= 0");
    if (spec.all_patterns_allowed()) return {true, "full shift: any placement extends"};

    const int w = static_cast<int>(window);
    // enumerate admissible w x w blocks
    std::vector<std::vector<std::vector<int>>> blocks;
    {
        std::vector<std::vector<int>> g(static_cast<std::size_t>(w),
                                        std::vector<int>(static_cast<std::size_t>(w), -1));
        std::vector<std::pair<int, int>> order;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < w; ++y) order.push_back({x, y});
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (blocks.size() > 2048) return;
            if (pos == order.size()) {
                blocks.push_back(g);
                return;
            }
            auto [x, y] = order[pos];
            for (int s = 0; s < spec.alphabet_size(); ++s) {
                g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = s;
                if (sft_detail::cell_consistent(spec, g, w, w, x, y)) rec(pos + 1);
            }
            g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = -1;
        };
        rec(0);
        if (blocks.size() > 2048) fail(errc::too_large, "too many admissible blocks to probe");
    }

    const long sep = candidate;
    const std::vector<std::pair<long, long>> offsets = {
        {window + sep, 0}, {0, window + sep}, {window + sep, window + sep}};
    for (const auto& [dx, dy] : offsets) {
        const int bw = w + static_cast<int>(dx), bh = w + static_cast<int>(dy);
        std::vector<std::pair<int, int>> order;
        for (int x = 0; x < bw; ++x)
            for (int y = 0; y < bh; ++y) order.push_back({x, y});
        for (std::size_t ui = 0; ui < blocks.size(); ++ui)
            for (std::size_t vi = 0; vi < blocks.size(); ++vi) {
                std::vector<std::vector<int>> g(static_cast<std::size_t>(bw),
                                                std::vector<int>(static_cast<std::size_t>(bh), -1));
                for (int x = 0; x < w; ++x)
                    for (int y = 0; y < w; ++y) {
                        g[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                            blocks[ui][static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                        g[static_cast<std::size_t>(x + dx)][static_cast<std::size_t>(y + dy)] =
                            blocks[vi][static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                    }
                if (!sft_detail::complete_exists(spec, g, bw, bh, order, 0)) {
                    GlueProbeReport rep;
                    rep.verified = false;
                    rep.detail = "blocks " + std::to_string(ui) + " and " + std::to_string(vi) +
                                 " cannot be glued at offset (" + std::to_string(dx) + "," +
                                 std::to_string(dy) + ")";
                    return rep;
                }
            }
    }
    return {true, "all pairs glued up to the probed window"};
}

} // namespace mislab

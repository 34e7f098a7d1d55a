#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "mislab/ball.hpp"
#include "mislab/lattice.hpp"
#include "mislab/parallel.hpp"
#include "mislab/subshift.hpp"

namespace mislab {

// Configurations on N^d whose restriction to every geometric progression
// (i * p^m)_{m>=0} is an admissible point of omega.
struct MisSpec {
    MultiplierVector p;
    SubshiftSpec omega;

    static MisSpec of(MultiplierVector mv, SubshiftSpec om) {
        if (om.kind == SubshiftSpec::Kind::VertexSft && !om.is_irreducible())
            fail(errc::not_irreducible, "omega must be irreducible for MIS counting");
        return MisSpec{std::move(mv), std::move(om)};
    }

    int dim() const { return p.dim(); }
};

// outer \ inner, both boxes anchored at the origin corner (inner side 0 = empty)
struct BoundaryRegion {
    Box outer;
    Box inner;

    static BoundaryRegion of(Box out, Box in) {
        if (out.dim() != in.dim()) fail(errc::invalid_spec, "region dimension mismatch");
        for (int j = 0; j < out.dim(); ++j) {
            if (in.sides[j] < 0 || in.sides[j] > out.sides[j])
                fail(errc::invalid_spec, "inner side must lie in [0, outer side]");
        }
        return BoundaryRegion{std::move(out), std::move(in)};
    }

    Nat size() const { return outer.volume() - inner.volume(); }
};

namespace detail {

// bits needed for prod over l of |Omega_l|^{K_l}; cheap overestimate
inline double count_bits_estimate(const MisSpec& mis, const ChainHistogram& k) {
    double bits = 0;
    double log2r = std::log2(static_cast<double>(mis.omega.alphabet_size));
    for (const auto& [l, c] : k.counts) bits += mpz_get_d(c.get_mpz_t()) * log2r * static_cast<double>(l);
    return bits;
}

} // namespace detail

// Exact number of distinct projections onto the box: prod_l |Omega_l|^{K_l}.
inline Nat pattern_count_exact(const MisSpec& mis, const Box& box,
                               double bit_budget = 1e7) {
    ChainHistogram k = hist_K(box, mis.p);
    if (detail::count_bits_estimate(mis, k) > bit_budget)
        fail(errc::result_too_large, "pattern count would exceed the bit budget");
    Nat out = 1;
    for (const auto& [l, c] : k.counts) {
        if (!c.fits_ulong_p()) fail(errc::result_too_large, "exponent does not fit");
        Nat w = word_count(mis.omega, l);
        Nat pw;
        mpz_pow_ui(pw.get_mpz_t(), w.get_mpz_t(), c.get_ui());
        out *= pw;
    }
    return out;
}

namespace detail {

struct CellGrid {
    std::vector<Nat> sides;
    std::vector<std::uint32_t> dims; // small copies for fast iteration
    std::uint64_t cells = 1;

    explicit CellGrid(const Box& box) {
        for (const auto& n : box.sides) {
            sides.push_back(n);
            dims.push_back(static_cast<std::uint32_t>(n.get_ui()));
            cells *= dims.back();
        }
    }

    std::uint64_t index(const std::vector<std::uint32_t>& pt) const {
        std::uint64_t idx = 0, stride = 1;
        for (std::size_t j = 0; j < dims.size(); ++j) {
            idx += (pt[j] - 1) * stride;
            stride *= dims[j];
        }
        return idx;
    }
};

// chains as flat cell-index words, in chain order
inline std::vector<std::vector<std::uint32_t>> chains_as_indices(const MisSpec& mis,
                                                                 const Box& box) {
    CellGrid grid(box);
    std::vector<std::vector<std::uint32_t>> chains;
    int d = box.dim();
    std::vector<std::uint32_t> pt(d, 1);
    if (box.empty()) return chains;
    while (true) {
        bool head = false;
        for (int j = 0; j < d; ++j)
            if (pt[j] % mis.p.p[j] != 0) { head = true; break; }
        if (head) {
            std::vector<std::uint32_t> word;
            std::vector<std::uint32_t> cur = pt;
            bool inside = true;
            while (inside) {
                word.push_back(static_cast<std::uint32_t>(grid.index(cur)));
                for (int j = 0; j < d; ++j) {
                    std::uint64_t next = static_cast<std::uint64_t>(cur[j]) *
                                         static_cast<std::uint64_t>(mis.p.p[j]);
                    if (next > grid.dims[j]) inside = false;
                    cur[j] = static_cast<std::uint32_t>(next);
                }
            }
            chains.push_back(std::move(word));
        }
        int axis = 0;
        while (axis < d) {
            pt[axis] += 1;
            if (pt[axis] <= grid.dims[axis]) break;
            pt[axis] = 1;
            ++axis;
        }
        if (axis == d) break;
    }
    return chains;
}

inline bool word_admissible(const SubshiftSpec& omega, const std::vector<int>& word) {
    if (omega.kind == SubshiftSpec::Kind::FullShift) return true;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (!omega.transition[word[i]][word[i + 1]]) return false;
    return true;
}

} // namespace detail

// Exhaustive oracle: enumerate all symbol assignments, keep those whose every
// chain word is admissible.
inline Nat pattern_count_bruteforce(const MisSpec& mis, const Box& box,
                                    double config_budget_log2 = 24.0) {
    const int r = mis.omega.alphabet_size;
    Nat vol = box.volume();
    if (!vol.fits_ulong_p() ||
        vol.get_ui() * std::log2(static_cast<double>(r)) > config_budget_log2)
        fail(errc::box_too_large, "brute-force configuration space too large");
    auto chains = detail::chains_as_indices(mis, box);
    const std::uint64_t cells = vol.get_ui();
    std::uint64_t configs = 1;
    for (std::uint64_t i = 0; i < cells; ++i) configs *= r;

    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::vector<int> symbols(cells);
        std::vector<int> word;
        std::uint64_t ok = 0;
        for (std::uint64_t code = lo; code < hi; ++code) {
            std::uint64_t c = code;
            for (std::uint64_t i = 0; i < cells; ++i) {
                symbols[i] = static_cast<int>(c % r);
                c /= r;
            }
            bool good = true;
            for (const auto& ch : chains) {
                word.clear();
                for (auto idx : ch) word.push_back(symbols[idx]);
                if (!detail::word_admissible(mis.omega, word)) { good = false; break; }
            }
            if (good) ++ok;
        }
        return ok;
    };
    Nat total = 0;
    parallel_chunks<std::uint64_t>(
        0, configs, count_range,
        [&](std::size_t, std::uint64_t& v) { total += static_cast<unsigned long>(v); });
    return total;
}

// log of the exact pattern count, certified; usable far beyond the exact guard.
inline BallReal log_pattern_count(const MisSpec& mis, const Box& box, mpfr_prec_t prec) {
    ChainHistogram k = hist_K(box, mis.p);
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    BallReal total = BallReal::zero(prec);
    for (const auto& [l, c] : k.counts) total = total.add(ev.log_omega(l).mul_nat(c));
    return total;
}

namespace detail {

// sum_{l > L} (a + b*l) x^{l+1} for exact rational 0 < x < 1:
//   sum_{l>L} x^{l+1} = x^{L+2}/(1-x)
//   sum_{l>L} l x^{l+1} = x^{L+2} ((L+1) - L x)/(1-x)^2
inline BallReal linear_geom_tail(const BallReal& a, const BallReal& b, const Rat& x, long L,
                                 mpfr_prec_t /*prec*/) {
    // x^{L+2}
    Nat num, den;
    mpz_pow_ui(num.get_mpz_t(), Nat(x.get_num()).get_mpz_t(), static_cast<unsigned long>(L + 2));
    mpz_pow_ui(den.get_mpz_t(), Nat(x.get_den()).get_mpz_t(), static_cast<unsigned long>(L + 2));
    Rat xL2 = Rat(num) / Rat(den);
    Rat one_minus = Rat(1) - x;
    Rat s0 = xL2 / one_minus;                                   // sum of x^{l+1}
    Rat s1 = xL2 * (Rat(L + 1) - Rat(L) * x) / (one_minus * one_minus); // sum of l x^{l+1}
    return a.mul_rat(s0).add(b.mul_rat(s1));
}

// certified sum_{l > L} x^{l+1} * ln|Omega_l| via explicit terms then the
// evaluator's linear sandwich
inline BallReal log_omega_tail(const WordLogEvaluator& ev, const Rat& x, long L,
                               mpfr_prec_t prec) {
    const auto& lin = ev.linear();
    long explicit_to = std::max(L, lin.from - 1);
    // a few explicit terms help when the sandwich starts late
    BallReal total = BallReal::zero(prec);
    Rat xpow;
    {
        Nat num, den;
        mpz_pow_ui(num.get_mpz_t(), Nat(x.get_num()).get_mpz_t(),
                   static_cast<unsigned long>(L + 2));
        mpz_pow_ui(den.get_mpz_t(), Nat(x.get_den()).get_mpz_t(),
                   static_cast<unsigned long>(L + 2));
        xpow = Rat(num) / Rat(den);
    }
    for (long l = L + 1; l <= explicit_to; ++l) {
        total = total.add(ev.log_omega(l).mul_rat(xpow));
        xpow *= x;
    }
    BallReal lo = linear_geom_tail(lin.a_lo, lin.b_lo, x, explicit_to, prec);
    BallReal up = linear_geom_tail(lin.a_up, lin.b_up, x, explicit_to, prec);
    return total.add(BallReal::hull(lo, up));
}

} // namespace detail

// h = sum_{l>=1} (P-1)^2 / P^{l+1} * ln|Omega_l|, with certified truncation.
inline BallReal mis_entropy(const MisSpec& mis, double tol) {
    if (tol <= 0) fail(errc::invalid_spec, "tolerance must be positive");
    long tol_bits = static_cast<long>(std::ceil(-std::log2(tol))) + 8;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(128, tol_bits + 64));
    if (mis.omega.kind == SubshiftSpec::Kind::FullShift)
        return BallReal::log_nat(Nat(mis.omega.alphabet_size), prec); // series telescopes
    Nat P = mis.p.product();
    Rat x = Rat(1) / Rat(P);
    Nat Pm1 = P - 1;
    WordLogEvaluator ev(mis.omega, prec, tol_bits + 32);

    // truncation level from the crude bound ln|Omega_l| <= l ln r
    double logr = std::log(static_cast<double>(mis.omega.alphabet_size));
    double Pd = mpz_get_d(P.get_mpz_t());
    double c = mpz_get_d(Pm1.get_mpz_t());
    long L = 4;
    while (true) {
        double tail = c * c * logr * (static_cast<double>(L + 2)) /
                      (std::pow(Pd, L) * (Pd - 1));
        if (tail < tol / 4 || L > 100000) break;
        ++L;
    }

    BallReal sum = BallReal::zero(prec);
    Rat xpow = x * x; // x^{l+1} at l = 1
    for (long l = 1; l <= L; ++l) {
        sum = sum.add(ev.log_omega(l).mul_rat(xpow));
        xpow *= x;
    }
    sum = sum.add(detail::log_omega_tail(ev, x, L, prec));
    BallReal h = sum.mul_nat(Pm1 * Pm1);
    return h;
}

// Region count: each chain meets outer\inner in a contiguous segment of
// length (outer prefix) - (inner prefix); independent chains multiply, so
// log count = sum over segment lengths s of (#heads with that s) * ln|Omega_s|.
inline BallReal log_pattern_count_region(const MisSpec& mis, const BoundaryRegion& region,
                                         mpfr_prec_t prec) {
    if (mis.omega.kind == SubshiftSpec::Kind::VertexSft && !mis.omega.is_irreducible())
        fail(errc::not_irreducible, "region counting requires irreducible omega");
    auto joint = head_joint_hist(region.outer, region.inner, mis.p);
    std::map<long, Nat> seg;
    for (const auto& [ab, c] : joint) {
        long s = ab.first - ab.second;
        if (s > 0) seg[s] += c;
    }
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    BallReal total = BallReal::zero(prec);
    for (const auto& [s, c] : seg) total = total.add(ev.log_omega(s).mul_nat(c));
    return total;
}

// Oracle: distinct restrictions to the region of admissible configurations on
// the outer box.
inline Nat region_projection_bruteforce(const MisSpec& mis, const BoundaryRegion& region,
                                        double config_budget_log2 = 24.0) {
    const int r = mis.omega.alphabet_size;
    Nat vol = region.outer.volume();
    if (!vol.fits_ulong_p() ||
        vol.get_ui() * std::log2(static_cast<double>(r)) > config_budget_log2)
        fail(errc::box_too_large, "brute-force configuration space too large");
    auto chains = detail::chains_as_indices(mis, region.outer);
    const std::uint64_t cells = vol.get_ui();
    std::uint64_t configs = 1;
    for (std::uint64_t i = 0; i < cells; ++i) configs *= r;

    // mask of cells inside the region
    detail::CellGrid grid(region.outer);
    std::vector<bool> in_region(cells, false);
    {
        int d = region.outer.dim();
        std::vector<std::uint32_t> pt(d, 1);
        while (true) {
            bool inside_inner = true;
            for (int j = 0; j < d; ++j)
                if (region.inner.sides[j] < pt[j]) { inside_inner = false; break; }
            if (!inside_inner) in_region[grid.index(pt)] = true;
            int axis = 0;
            while (axis < d) {
                pt[axis] += 1;
                if (pt[axis] <= grid.dims[axis]) break;
                pt[axis] = 1;
                ++axis;
            }
            if (axis == d) break;
        }
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<int> symbols(cells);
    std::vector<int> word;
    for (std::uint64_t code = 0; code < configs; ++code) {
        std::uint64_t c = code;
        for (std::uint64_t i = 0; i < cells; ++i) {
            symbols[i] = static_cast<int>(c % r);
            c /= r;
        }
        bool good = true;
        for (const auto& ch : chains) {
            word.clear();
            for (auto idx : ch) word.push_back(symbols[idx]);
            if (!detail::word_admissible(mis.omega, word)) { good = false; break; }
        }
        if (!good) continue;
        std::uint64_t key = 0;
        for (std::uint64_t i = 0; i < cells; ++i)
            if (in_region[i]) key = key * r + static_cast<std::uint64_t>(symbols[i]);
        seen.insert(key);
    }
    return Nat(static_cast<unsigned long>(seen.size()));
}

} // namespace mislab

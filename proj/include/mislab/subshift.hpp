#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "mislab/ball.hpp"
#include "mislab/bignum.hpp"
#include "mislab/errors.hpp"

namespace mislab {

// One-dimensional symbolic system over {0,...,r-1}: either the full shift or
// a vertex SFT given by a 0/1 transition matrix (entry (a,b)=1 means the word
// "ab" is admissible).
struct SubshiftSpec {
    enum class Kind { FullShift, VertexSft };

    int alphabet_size = 2;
    Kind kind = Kind::FullShift;
    std::vector<std::vector<int>> transition; // r x r of {0,1}, VertexSft only

    static SubshiftSpec full(int r) {
        if (r < 1) fail(errc::invalid_spec, "alphabet_size must be >= 1");
        SubshiftSpec s;
        s.alphabet_size = r;
        s.kind = Kind::FullShift;
        return s;
    }

    static SubshiftSpec sft(std::vector<std::vector<int>> m) {
        SubshiftSpec s;
        s.kind = Kind::VertexSft;
        s.alphabet_size = static_cast<int>(m.size());
        if (s.alphabet_size < 1) fail(errc::invalid_spec, "empty transition matrix");
        for (const auto& row : m) {
            if (row.size() != m.size()) fail(errc::invalid_spec, "transition matrix not square");
            for (int v : row)
                if (v != 0 && v != 1) fail(errc::invalid_spec, "transition entries must be 0/1");
        }
        s.transition = std::move(m);
        return s;
    }

    static SubshiftSpec golden_mean() { return sft({{1, 1}, {1, 0}}); }

    // effective transition matrix (all-ones for the full shift)
    std::vector<std::vector<int>> matrix() const {
        if (kind == Kind::VertexSft) return transition;
        return std::vector<std::vector<int>>(alphabet_size,
                                             std::vector<int>(alphabet_size, 1));
    }

    bool is_irreducible() const {
        if (kind == Kind::FullShift) return true;
        int n = alphabet_size;
        // reachability closure must be complete
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) reach[i][j] = transition[i][j] != 0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (reach[i][k])
                    for (int j = 0; j < n; ++j)
                        if (reach[k][j]) reach[i][j] = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!reach[i][j]) return false;
        return true;
    }

    // primitive (mixing) = irreducible with cycle-length gcd 1
    bool is_primitive() const {
        if (kind == Kind::FullShift) return true;
        if (!is_irreducible()) return false;
        int n = alphabet_size;
        std::vector<int> level(n, -1);
        std::vector<int> queue{0};
        level[0] = 0;
        long g = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int v = 0; v < n; ++v) {
                if (!transition[u][v]) continue;
                if (level[v] < 0) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    g = std::gcd(g, static_cast<long>(level[u] + 1 - level[v]));
                }
            }
        }
        return g == 1;
    }
};

// Exact number of admissible words of the given length.
inline Nat word_count(const SubshiftSpec& omega, long len) {
    if (len < 1) fail(errc::invalid_spec, "word length must be >= 1");
    if (omega.kind == SubshiftSpec::Kind::FullShift)
        return pow_nat(omega.alphabet_size, static_cast<unsigned long>(len));
    IMatrix a(omega.alphabet_size, std::vector<Nat>(omega.alphabet_size, 0));
    for (int i = 0; i < omega.alphabet_size; ++i)
        for (int j = 0; j < omega.alphabet_size; ++j) a[i][j] = omega.transition[i][j];
    return imat_entry_sum(imat_pow(a, static_cast<unsigned long>(len - 1)));
}

// Certified two-sided Perron sandwich from exact integer power iteration.
// Iterating u <- A u keeps the Collatz-Wielandt ratio interval
// [min_i (Au)_i/u_i, max_i (Au)_i/u_i] nested around the Perron value; the
// final iterate additionally brackets all later word counts:
//   lo^(m-n0) * sum(u) <= sum(A^m 1) <= hi^(m-n0) * sum(u)  for m >= n0.
struct PerronSandwich {
    bool converged = false; // ratio gap met the target
    long n0 = 0;
    Rat lambda_lo, lambda_hi;
    std::vector<Nat> u;      // A^{n0} * 1
    std::vector<Nat> sums;   // sums[m] = sum of entries of A^m, m = 0..n0
    Nat S0;                  // = sums[n0]
};

inline PerronSandwich perron_sandwich(const std::vector<std::vector<int>>& a,
                                      long gap_bits, long max_iter) {
    const std::size_t n = a.size();
    PerronSandwich s;
    std::vector<Nat> u(n, 1), v(n);
    s.sums.push_back(Nat(static_cast<long>(n)));
    Rat lo_prev(0), hi_prev(0);
    for (long it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (a[i][j] == 1) v[i] += u[j];
                else if (a[i][j] > 1) v[i] += a[i][j] * u[j];
            }
            if (v[i] == 0) fail(errc::reducible_matrix, "row with no admissible successor");
        }
        Rat lo = Rat(v[0]) / Rat(u[0]);
        Rat hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            Rat q = Rat(v[i]) / Rat(u[i]);
            if (q < lo) lo = q;
            if (q > hi) hi = q;
        }
        if (it > 1 && (lo < lo_prev || hi > hi_prev))
            fail(errc::non_convergence, "ratio interval not nested"); // cannot happen for valid input
        lo_prev = lo;
        hi_prev = hi;
        u.swap(v);
        s.sums.push_back(std::accumulate(u.begin(), u.end(), Nat(0)));
        s.n0 = it;
        // stop once the relative gap is below 2^-gap_bits
        if ((hi - lo) * pow_nat(2, static_cast<unsigned long>(gap_bits)) <= lo) {
            s.converged = true;
            s.lambda_lo = lo;
            s.lambda_hi = hi;
            s.u = u;
            s.S0 = s.sums.back();
            return s;
        }
    }
    s.converged = false;
    s.lambda_lo = lo_prev;
    s.lambda_hi = hi_prev;
    s.u = u;
    s.S0 = s.sums.back();
    return s;
}

// Perron value with normalized left/right eigenvectors, l . r = 1 exactly at
// the rational level before rounding.
struct PerronData {
    BallReal lambda;
    std::vector<BallReal> left;
    std::vector<BallReal> right;
};

inline PerronData perron_data(const SubshiftSpec& omega, mpfr_prec_t prec) {
    auto a = omega.matrix();
    if (!omega.is_irreducible()) fail(errc::reducible_matrix, "transition matrix not irreducible");
    const std::size_t n = a.size();
    // iterate on A + I: primitive whenever A is irreducible, spectrum shifted by 1
    auto b = a;
    for (std::size_t i = 0; i < n; ++i) b[i][i] += 1;

    long gap_bits = prec + 16;
    long budget = std::max<long>(4096, 48L * gap_bits);
    PerronSandwich fwd = perron_sandwich(b, gap_bits, budget);
    if (!fwd.converged) fail(errc::non_convergence, "power iteration did not reach tolerance");
    auto bt = b;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bt[i][j] = b[j][i];
    PerronSandwich bwd = perron_sandwich(bt, gap_bits, budget);
    if (!bwd.converged) fail(errc::non_convergence, "transpose iteration did not reach tolerance");

    PerronData out{BallReal(prec), {}, {}};
    BallReal lo = BallReal::from_rat(fwd.lambda_lo - 1, prec);
    BallReal hi = BallReal::from_rat(fwd.lambda_hi - 1, prec);
    out.lambda = BallReal::hull(lo, hi);

    // r_i = u_i / sum(u); l_j = w_j * sum(u) / (w . u)  =>  l . r = 1 exactly
    Nat usum = std::accumulate(fwd.u.begin(), fwd.u.end(), Nat(0));
    Nat dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot += bwd.u[i] * fwd.u[i];
    for (std::size_t i = 0; i < n; ++i) {
        out.right.push_back(BallReal::from_rat(Rat(fwd.u[i]) / Rat(usum), prec));
        out.left.push_back(BallReal::from_rat(Rat(bwd.u[i]) * Rat(usum) / Rat(dot), prec));
    }
    return out;
}

// h(Omega) = log of the Perron value (log r for the full shift).
inline BallReal entropy_rate_1d(const SubshiftSpec& omega, mpfr_prec_t prec) {
    if (omega.kind == SubshiftSpec::Kind::FullShift)
        return BallReal::log_nat(Nat(omega.alphabet_size), prec);
    if (omega.alphabet_size == 1) {
        // single admissible loop
        if (omega.transition[0][0] != 1) fail(errc::reducible_matrix, "empty system");
        return BallReal::zero(prec);
    }
    return perron_data(omega, prec).lambda.log();
}

// Certified evaluator for ln|Omega_l| at any level, with two-sided linear
// bounds for series tails. Exact counts are kept for every level visited by
// the sandwich iteration; beyond that the sandwich brackets apply.
class WordLogEvaluator {
public:
    struct LinearBounds {
        BallReal a_lo, b_lo, a_up, b_up; // ln|Omega_l| in [a_lo+b_lo*l, a_up+b_up*l]
        long from = 1;                   // valid for l >= from
        bool tight = true;               // false = crude 0..l*log r fallback
    };

    WordLogEvaluator(const SubshiftSpec& omega, mpfr_prec_t prec, long gap_bits)
        : omega_(omega), prec_(prec) {
        if (omega_.kind == SubshiftSpec::Kind::FullShift) {
            log_r_ = BallReal::log_nat(Nat(omega_.alphabet_size), prec_);
            lin_ = LinearBounds{BallReal::zero(prec_), log_r_, BallReal::zero(prec_), log_r_, 1, true};
            return;
        }
        log_r_ = BallReal::log_nat(Nat(omega_.alphabet_size), prec_);
        if (!omega_.is_irreducible())
            fail(errc::reducible_matrix, "word-count evaluator needs an irreducible matrix");
        long budget = std::max<long>(4096, 48L * gap_bits);
        sand_ = perron_sandwich(omega_.matrix(), gap_bits, budget);
        if (sand_->converged) {
            BallReal lS0 = BallReal::log_nat(sand_->S0, prec_);
            BallReal llo = BallReal::log_rat(sand_->lambda_lo, prec_);
            BallReal lup = BallReal::log_rat(sand_->lambda_hi, prec_);
            // ln sum(A^{l-1}) in [lnS0 + (l-1-n0) ln lo, lnS0 + (l-1-n0) ln hi]
            long shift = sand_->n0 + 1;
            lin_ = LinearBounds{lS0.sub(llo.mul_si(shift)), llo,
                                lS0.sub(lup.mul_si(shift)), lup,
                                sand_->n0 + 1, true};
        } else {
            // crude but valid: 1 <= |Omega_l| <= r^l
            lin_ = LinearBounds{BallReal::zero(prec_), BallReal::zero(prec_),
                                BallReal::zero(prec_), log_r_, 1, false};
        }
    }

    mpfr_prec_t prec() const { return prec_; }

    const LinearBounds& linear() const { return lin_; }

    BallReal log_omega(long l) const {
        if (l <= 0) return BallReal::zero(prec_);
        if (omega_.kind == SubshiftSpec::Kind::FullShift) return log_r_.mul_si(l);
        if (l - 1 < static_cast<long>(sand_->sums.size()))
            return BallReal::log_nat(sand_->sums[static_cast<std::size_t>(l - 1)], prec_);
        if (lin_.tight && l >= lin_.from)
            return BallReal::hull(lin_.a_lo.add(lin_.b_lo.mul_si(l)),
                                  lin_.a_up.add(lin_.b_up.mul_si(l)));
        // exact fallback for moderate levels when the sandwich is loose
        if (l <= 16384) return BallReal::log_nat(word_count(omega_, l), prec_);
        return BallReal::hull(BallReal::zero(prec_), log_r_.mul_si(l));
    }

    BallReal log_lambda() const {
        if (omega_.kind == SubshiftSpec::Kind::FullShift) return log_r_;
        if (!sand_->converged) fail(errc::non_convergence, "no certified Perron enclosure");
        return BallReal::hull(BallReal::log_rat(sand_->lambda_lo, prec_),
                              BallReal::log_rat(sand_->lambda_hi, prec_));
    }

private:
    SubshiftSpec omega_;
    mpfr_prec_t prec_;
    BallReal log_r_{64};
    std::optional<PerronSandwich> sand_;
    LinearBounds lin_{BallReal(64), BallReal(64), BallReal(64), BallReal(64), 1, false};
};

} // namespace mislab

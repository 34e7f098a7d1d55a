#pragma once

#include <cmath>
#include <vector>

#include "mislab/mis.hpp"

namespace mislab {

// Per-axis rational slopes; f_k(m) = floor(slope_k * m). The product slope
// drives the level classification.
struct SpeedSpec {
    std::vector<Rat> slopes;

    static SpeedSpec of(std::vector<Rat> s) {
        if (s.empty()) fail(errc::invalid_spec, "empty speed");
        for (const auto& q : s)
            if (q < 0 || q > 1) fail(errc::invalid_spec, "slopes must lie in [0,1]");
        return SpeedSpec{std::move(s)};
    }

    Rat tau() const {
        Rat t = 1;
        for (const auto& q : slopes) t *= q;
        return t;
    }
};

struct RealizationResult {
    long level_k = 1;    // meaningful when !tau_zero
    bool tau_zero = false;
    Rat tau_exact;       // set when the slope is an exact rational choice
    bool tau_is_exact = false;
    BallReal tau;
    BallReal achieved_h;
};

// unique l >= 1 with 1/P^l < tau <= 1/P^(l-1); upper endpoints included
inline long classify_level(const Rat& tau, const Nat& P) {
    if (tau == 0) fail(errc::zero_tau, "tau = 0 classifies as the entropy itself");
    if (tau < 0 || tau > 1) fail(errc::invalid_spec, "tau must lie in (0, 1]");
    long l = 1;
    Rat hi(1);
    Rat lo = Rat(1) / Rat(P);
    while (!(lo < tau && tau <= hi)) {
        hi = lo;
        lo /= Rat(P);
        ++l;
        if (l > 1000000) fail(errc::invalid_spec, "tau too small to classify");
    }
    return l;
}

namespace detail {

// (1/(1-tau)) [ (1-1/P) zeta_l + eta_l ] with
//   zeta_l = (P-1) sum_{i<=l-2} ln|Omega_i|/P^i + (1/P^{l-2} - P tau) ln|Omega_{l-1}|
//   eta_l  = (P tau - 1/P^{l-1}) ln|Omega_{l-1}| + (1/P^{l-1} - tau) ln|Omega_l|
inline BallReal h_boundary_at_level(const WordLogEvaluator& ev, const Nat& P,
                                    const BallReal& tau, long level, mpfr_prec_t prec) {
    Rat invP = Rat(1) / Rat(P);
    BallReal zeta = BallReal::zero(prec);
    Rat xpow = invP;
    for (long i = 1; i <= level - 2; ++i) {
        zeta = zeta.add(ev.log_omega(i).mul_rat(xpow));
        xpow *= invP;
    }
    zeta = zeta.mul_nat(P - 1);
    BallReal eta = BallReal::zero(prec);
    if (level >= 2) {
        Rat p_lm2 = Rat(1);
        for (long i = 0; i < level - 2; ++i) p_lm2 *= invP;
        Rat p_lm1 = p_lm2 * invP;
        BallReal lw = ev.log_omega(level - 1);
        zeta = zeta.add(BallReal::from_rat(p_lm2, prec).sub(tau.mul_nat(P)).mul(lw));
        eta = eta.add(tau.mul_nat(P).sub(BallReal::from_rat(p_lm1, prec)).mul(lw));
    }
    Rat p_lm1 = Rat(1);
    for (long i = 0; i < level - 1; ++i) p_lm1 *= invP;
    eta = eta.add(BallReal::from_rat(p_lm1, prec).sub(tau).mul(ev.log_omega(level)));
    BallReal num = zeta.mul_rat(Rat(P - 1) / Rat(P)).add(eta);
    BallReal denom = BallReal::exact_si(1, prec).sub(tau);
    return num.div(denom);
}

} // namespace detail

// Closed-form boundary complexity for product slope tau in [0, 1).
inline BallReal h_boundary(const MisSpec& mis, const Rat& tau, mpfr_prec_t prec) {
    if (tau < 0 || tau > 1) fail(errc::invalid_spec, "tau must lie in [0, 1]");
    if (tau == 1) fail(errc::degenerate_region, "tau = 1 leaves an empty region");
    Nat P = mis.p.product();
    if (tau == 0) return mis_entropy(mis, std::ldexp(1.0, -static_cast<int>(prec) / 2));
    long level = classify_level(tau, P);
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    return detail::h_boundary_at_level(ev, P, BallReal::from_rat(tau, prec), level, prec);
}

// A_k = h_boundary at the top of level k (tau = 1/P^{k-1}), k >= 2
inline BallReal thresholds_A(const MisSpec& mis, long k, mpfr_prec_t prec) {
    if (k < 2) fail(errc::invalid_spec, "thresholds are defined for k >= 2");
    Nat P = mis.p.product();
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    Rat invP = Rat(1) / Rat(P);
    BallReal sum = BallReal::zero(prec);
    Rat xpow = invP;
    for (long i = 1; i <= k - 2; ++i) {
        sum = sum.add(ev.log_omega(i).mul_rat(xpow));
        xpow *= invP;
    }
    sum = sum.mul_nat(P - 1).mul_rat(Rat(P - 1) / Rat(P));
    Rat p_km2 = Rat(1);
    for (long i = 0; i < k - 2; ++i) p_km2 *= invP;
    Rat p_km1 = p_km2 * invP;
    sum = sum.add(ev.log_omega(k - 1).mul_rat(p_km2 - p_km1));
    return sum.div(BallReal::from_rat(Rat(1) - p_km1, prec));
}

// Solve h_boundary(tau) = target for tau. Plateau targets return level 1;
// target equal to the entropy returns the tau = 0 sentinel.
inline RealizationResult realize(const MisSpec& mis, const BallReal& target, mpfr_prec_t prec) {
    Nat P = mis.p.product();
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    BallReal top = ev.log_omega(1); // log|Omega_1| = log r
    BallReal h_inf = mis_entropy(mis, std::ldexp(1.0, -static_cast<int>(prec) - 8));
    if (target.certified_gt(top) || target.certified_lt(h_inf))
        fail(errc::target_out_of_range, "target must lie in [h(X), log|Omega_1|]");

    RealizationResult out;
    if (!target.certified_lt(top)) { // target == log r up to resolution
        out.level_k = 1;
        out.tau_exact = (Rat(1) + Rat(1) / Rat(P)) / Rat(2);
        out.tau_is_exact = true;
        out.tau = BallReal::from_rat(out.tau_exact, prec);
        out.achieved_h = top;
        return out;
    }
    if (!target.certified_gt(h_inf)) { // target == h(X) up to resolution
        out.tau_zero = true;
        out.level_k = 0;
        out.tau = BallReal::zero(prec);
        out.achieved_h = h_inf;
        return out;
    }

    long k = 2;
    while (true) {
        BallReal a_next = thresholds_A(mis, k + 1, prec);
        if (target.certified_gt(a_next)) break;
        ++k;
        if (k > 100000) fail(errc::non_convergence, "level search did not terminate");
    }

    // tau = (C - h) / (ln|Omega_k| - ln|Omega_{k-1}| - h)
    Rat invP = Rat(1) / Rat(P);
    BallReal C = BallReal::zero(prec);
    {
        Rat xpow = invP;
        for (long i = 1; i <= k - 2; ++i) {
            C = C.add(ev.log_omega(i).mul_rat(xpow));
            xpow *= invP;
        }
        C = C.mul_nat(P - 1).mul_rat(Rat(P - 1) / Rat(P));
        Rat p_km2 = Rat(1);
        for (long i = 0; i < k - 2; ++i) p_km2 *= invP;
        Rat p_km1 = p_km2 * invP;
        C = C.add(ev.log_omega(k - 1).mul_rat(p_km2 - Rat(2) * p_km1));
        C = C.add(ev.log_omega(k).mul_rat(p_km1));
    }
    BallReal denom = ev.log_omega(k).sub(ev.log_omega(k - 1)).sub(target);
    Rat lo_band = Rat(1);
    for (long i = 0; i < k; ++i) lo_band *= invP;
    Rat hi_band = lo_band * Rat(P);
    if (denom.certified_sign() == 0) {
        // degenerate level: the formula is constant in tau there
        out.tau_exact = (lo_band + hi_band) / Rat(2);
        out.tau_is_exact = true;
        out.tau = BallReal::from_rat(out.tau_exact, prec);
    } else {
        out.tau = C.sub(target).div(denom);
    }
    out.level_k = k;
    out.achieved_h = detail::h_boundary_at_level(ev, P, out.tau, k, prec);

    // band membership, allowing ball slack at the endpoints
    BallReal lo_b = BallReal::from_rat(lo_band, prec);
    BallReal hi_b = BallReal::from_rat(hi_band, prec);
    if (out.tau.certified_lt(lo_b) || out.tau.certified_gt(hi_b))
        fail(errc::non_convergence, "realized tau escaped its level band");
    return out;
}

// log-count of the boundary region at finite box sides, normalized by its size.
inline BallReal empirical_h_boundary(const MisSpec& mis, const Box& m, const SpeedSpec& speed,
                                     mpfr_prec_t prec) {
    if (m.dim() != mis.dim() || static_cast<int>(speed.slopes.size()) != mis.dim())
        fail(errc::invalid_spec, "dimension mismatch");
    Box inner = m;
    for (int j = 0; j < m.dim(); ++j) inner.sides[j] = floor_rat(speed.slopes[j] * Rat(m.sides[j]));
    auto region = BoundaryRegion::of(m, inner);
    Nat size = region.size();
    if (size == 0) fail(errc::degenerate_region, "empty boundary region");
    return log_pattern_count_region(mis, region, prec).div_nat(size);
}

// Split a product slope into per-axis rationals that sit inside the same
// level band (1/p_j^l, 1/p_j^{l-1}] on every axis, with exact product tau.
inline SpeedSpec distribute_slopes(const MisSpec& mis, const Rat& tau) {
    int d = mis.dim();
    if (tau <= 0 || tau > 1) fail(errc::invalid_spec, "tau must lie in (0, 1]");
    if (d == 1) return SpeedSpec::of({tau});
    Nat P = mis.p.product();
    long level = classify_level(tau, P);
    double logP = std::log(mpz_get_d(P.get_mpz_t()));
    double u = mpz_get_d(Nat(tau.get_num()).get_mpz_t()) / mpz_get_d(Nat(tau.get_den()).get_mpz_t());
    for (long i = 0; i < level - 1; ++i) u *= mpz_get_d(P.get_mpz_t());
    // u in (1/P, 1]; aim at s_j = p_j^{-(level-1)} u^{log p_j / log P}
    std::vector<Rat> slopes(d);
    Rat remaining = tau;
    for (int j = 0; j < d; ++j) {
        long pj = mis.p.p[j];
        Rat band_lo = Rat(1), band_hi = Rat(1);
        for (long i = 0; i < level; ++i) band_lo /= pj;
        for (long i = 0; i < level - 1; ++i) band_hi /= pj;
        if (j == d - 1) {
            slopes[j] = remaining;
            if (!(band_lo < slopes[j] && slopes[j] <= band_hi))
                fail(errc::invalid_spec, "could not keep all axes in one level band");
            break;
        }
        double target = std::pow(static_cast<double>(pj), -(level - 1)) *
                        std::pow(u, std::log(static_cast<double>(pj)) / logP);
        const long denom = 720720;
        Rat s(static_cast<long>(std::llround(target * denom)), denom);
        s.canonicalize();
        // clamp inside the axis band with a strict margin at the open end
        Rat margin = (band_hi - band_lo) / Rat(denom);
        if (s <= band_lo + margin) s = band_lo + margin;
        if (s > band_hi) s = band_hi;
        // the remaining axes must still be able to reach `remaining`
        Rat rest_lo = Rat(1), rest_hi = Rat(1);
        for (int t = j + 1; t < d; ++t) {
            for (long i = 0; i < level; ++i) rest_lo /= mis.p.p[t];
            for (long i = 0; i < level - 1; ++i) rest_hi /= mis.p.p[t];
        }
        // need rest_lo < remaining / s <= rest_hi
        if (remaining / s > rest_hi) s = remaining / rest_hi;
        if (remaining / s <= rest_lo) {
            s = remaining / rest_lo;
            s = s - margin;
        }
        if (!(band_lo < s && s <= band_hi))
            fail(errc::invalid_spec, "could not keep all axes in one level band");
        slopes[j] = s;
        remaining /= s;
    }
    return SpeedSpec::of(slopes);
}

} // namespace mislab

#pragma once

#include <vector>

#include "mislab/boundary.hpp"
#include "mislab/mis.hpp"

namespace mislab {

// Box sequences used in the convergence study.
struct SequenceSpec {
    enum class Family { PowerPair, PowerOffset };

    Family family = Family::PowerPair;
    std::vector<long> k; // PowerPair: per-axis exponents k_i (x_n^{(i)} = p_i^{k_i n})
    long offset_k = 1;   // PowerOffset: x_n = y_n = p^n + sign*k
    int sign = -1;

    static SequenceSpec power_pair(std::vector<long> ks) {
        for (long v : ks)
            if (v < 1) fail(errc::invalid_spec, "exponents must be >= 1");
        SequenceSpec s;
        s.family = Family::PowerPair;
        s.k = std::move(ks);
        return s;
    }

    static SequenceSpec power_offset(long k, int sign) {
        if (k < 1) fail(errc::invalid_spec, "offset must be >= 1");
        if (sign != 1 && sign != -1) fail(errc::invalid_spec, "sign must be +1 or -1");
        SequenceSpec s;
        s.family = Family::PowerOffset;
        s.offset_k = k;
        s.sign = sign;
        return s;
    }

    Box box_at(const MisSpec& mis, long n) const {
        if (n < 1) fail(errc::invalid_spec, "sequence index must be >= 1");
        std::vector<Nat> sides;
        if (family == Family::PowerPair) {
            if (static_cast<int>(k.size()) != mis.dim())
                fail(errc::invalid_spec, "one exponent per axis required");
            for (int j = 0; j < mis.dim(); ++j)
                sides.push_back(pow_nat(mis.p.p[j], static_cast<unsigned long>(k[j] * n)));
        } else {
            long p = mis.p.p[0];
            for (int j = 0; j < mis.dim(); ++j)
                if (mis.p.p[j] != p)
                    fail(errc::invalid_spec, "offset sequences need equal multipliers");
            if (offset_k > p) fail(errc::invalid_spec, "offset must satisfy 1 <= k <= p");
            Nat side = pow_nat(p, static_cast<unsigned long>(n)) + sign * offset_k;
            if (side < 1) fail(errc::invalid_spec, "offset side must stay positive");
            for (int j = 0; j < mis.dim(); ++j) sides.push_back(side);
        }
        return Box::of(sides);
    }
};

// min_j (largest e with p_j^e <= N_j)
inline long box_level_cap(const Box& box, const MultiplierVector& p) {
    long rn = -1;
    for (int j = 0; j < box.dim(); ++j) {
        long e = ilog_floor(box.sides[j], p.p[j]);
        if (rn < 0 || e < rn) rn = e;
    }
    return rn;
}

inline mpfr_prec_t surface_auto_prec(const Box& box) {
    return static_cast<mpfr_prec_t>(64 + 4 * static_cast<long>(bit_length(box.volume())));
}

// Cancellation-free carrier of log(count) - vol*h: exact per-level residuals
// against the limiting density, plus the series tail past the deepest level.
struct CorrectionSeries {
    long r_n = 0;
    std::vector<std::pair<long, Rat>> residuals; // level l=1..r_n+1 -> K_l - vol (P-1)^2/P^{l+1}
    std::vector<BallReal> log_omegas;            // ln|Omega_l| aligned with residuals
    BallReal tail;                               // -vol (P-1)^2 sum_{l>r_n+1} ln|Omega_l|/P^{l+1}
    BallReal total;
};

inline CorrectionSeries surface_correction(const MisSpec& mis, const Box& box,
                                           mpfr_prec_t prec_req) {
    if (box.empty()) fail(errc::invalid_spec, "box sides must be >= 1");
    mpfr_prec_t prec = std::max(prec_req, surface_auto_prec(box));
    Nat P = mis.p.product();
    Nat vol = box.volume();
    Rat x = Rat(1) / Rat(P);
    Nat Pm1sq = (P - 1) * (P - 1);

    CorrectionSeries out;
    out.r_n = box_level_cap(box, mis.p);
    long lmax = out.r_n + 1;

    WordLogEvaluator ev(mis.omega, prec, prec);
    ChainHistogram khist = hist_K(box, mis.p);

    BallReal total = BallReal::zero(prec);
    Rat density_weight = x * x; // 1/P^{l+1} at l = 1
    for (long l = 1; l <= lmax; ++l) {
        Nat kl = 0;
        auto it = khist.counts.find(l);
        if (it != khist.counts.end()) kl = it->second;
        Rat resid = Rat(kl) - Rat(vol) * Rat(Pm1sq) * density_weight;
        BallReal lw = ev.log_omega(l);
        out.residuals.push_back({l, resid});
        out.log_omegas.push_back(lw);
        total = total.add(lw.mul_rat(resid));
        density_weight *= x;
    }
    out.tail = detail::log_omega_tail(ev, x, lmax, prec).mul_nat(Pm1sq * vol).neg();
    out.total = total.add(out.tail);
    if (!out.total.radius_below_2exp(-(static_cast<long>(prec_req) / 2)))
        fail(errc::precision_budget_exceeded, "requested certified error not met");
    return out;
}

// The second-order series the convergence study tabulates:
//   -P * vol * (P-1)^2 * sum_{l > r_n+1} ln|Omega_l| / P^{l+1},
// i.e. P times the volume times the entropy-series tail past the deepest
// chain level of the box. Along power sequences it grows like
// -(1-1/P) log(lambda) r_n * vol / P^{r_n}.
inline BallReal asymptotic_correction(const MisSpec& mis, const Box& box,
                                      const WordLogEvaluator& ev) {
    Nat P = mis.p.product();
    Nat vol = box.volume();
    Rat x = Rat(1) / Rat(P);
    long rn = box_level_cap(box, mis.p);
    BallReal t = detail::log_omega_tail(ev, x, rn + 1, ev.prec());
    return t.mul_nat((P - 1) * (P - 1) * P * vol).neg();
}

inline BallReal asymptotic_correction(const MisSpec& mis, const Box& box, mpfr_prec_t prec_req) {
    mpfr_prec_t prec = std::max(prec_req, surface_auto_prec(box));
    WordLogEvaluator ev(mis.omega, prec, prec);
    return asymptotic_correction(mis, box, ev);
}

// Leading term along power sequences: -(1-1/P) log(lambda) r_n prod(x)/P^{r_n}
// with r_n = min_i k_i n. Requires a mixing vertex system.
inline BallReal predicted_correction_power(const MisSpec& mis, const std::vector<long>& ks,
                                           long n, mpfr_prec_t prec) {
    if (static_cast<int>(ks.size()) != mis.dim())
        fail(errc::invalid_spec, "one exponent per axis required");
    if (!mis.omega.is_primitive()) fail(errc::not_mixing, "mixing omega required");
    for (long v : ks)
        if (v < 1) fail(errc::invalid_spec, "exponents must be >= 1");
    Nat P = mis.p.product();
    long rn = ks[0] * n;
    for (long v : ks) rn = std::min(rn, v * n);
    Nat scale = 1;
    for (int j = 0; j < mis.dim(); ++j)
        scale *= pow_nat(mis.p.p[j], static_cast<unsigned long>(ks[j] * n));
    Rat factor = Rat(scale) / Rat(pow_nat(P, static_cast<unsigned long>(rn)));
    WordLogEvaluator ev(mis.omega, prec, prec + 16);
    BallReal loglam = ev.log_lambda();
    return loglam.mul_rat(Rat(P - 1) / Rat(P) * factor).mul_si(rn).neg();
}

struct PrecPolicy {
    bool auto_prec = true;
    mpfr_prec_t bits = 256;

    static PrecPolicy automatic() { return PrecPolicy{true, 256}; }
    static PrecPolicy fixed(mpfr_prec_t b) { return PrecPolicy{false, b}; }
};

struct TableRow {
    long n = 0;
    std::vector<Nat> sides;
    BallReal correction; // the tabulated series value
    BallReal scaled;     // correction / scale(n)
    BallReal predicted;  // slope of the leading term per unit scale
    BallReal deviation;  // |scaled - predicted|
};

// Deviation rows |correction(n)/scale(n) - predicted| for a box sequence.
// PowerPair scales by r_n * prod(x)/P^{r_n}; PowerOffset scales by n against
// a zero prediction (the leading term is only known to be O(n) there).
inline std::vector<TableRow> convergence_table(const MisSpec& mis, const SequenceSpec& seq,
                                               const std::vector<long>& ns,
                                               const PrecPolicy& policy) {
    if (ns.empty()) fail(errc::invalid_spec, "no sequence indices given");
    long n_max = 0;
    for (long n : ns) n_max = std::max(n_max, n);
    Box largest = seq.box_at(mis, n_max);
    mpfr_prec_t prec = policy.auto_prec ? surface_auto_prec(largest) : policy.bits;
    if (prec > 8000000) fail(errc::precision_budget_exceeded, "precision policy exceeds budget");
    if (!policy.auto_prec && prec < surface_auto_prec(largest) / 8)
        fail(errc::precision_budget_exceeded,
             "fixed precision is far below what the largest row needs");

    Nat P = mis.p.product();
    WordLogEvaluator ev(mis.omega, prec, prec);
    BallReal slope = BallReal::zero(prec);
    bool mixing = mis.omega.is_primitive();
    if (mixing) slope = ev.log_lambda().mul_rat(Rat(P - 1) / Rat(P)).neg();

    std::vector<TableRow> rows;
    for (long n : ns) {
        Box box = seq.box_at(mis, n);
        TableRow row;
        row.n = n;
        row.sides = box.sides;
        row.correction = asymptotic_correction(mis, box, ev);
        if (seq.family == SequenceSpec::Family::PowerPair) {
            if (!mixing) fail(errc::not_mixing, "power-pair prediction needs mixing omega");
            long rn = box_level_cap(box, mis.p);
            Rat scale = Rat(box.volume()) / Rat(pow_nat(P, static_cast<unsigned long>(rn)));
            scale *= rn;
            row.scaled = row.correction.mul_rat(Rat(1) / scale);
            row.predicted = slope;
        } else {
            row.scaled = row.correction.div_nat(Nat(n));
            row.predicted = BallReal::zero(prec);
        }
        row.deviation = row.scaled.sub(row.predicted).abs_enclosure();
        rows.push_back(std::move(row));
    }
    return rows;
}

struct OffsetBoundReport {
    std::vector<std::pair<long, BallReal>> corrections; // (n, series value)
    double max_ratio = 0;        // max |correction|/n over the range
    double middle_third_max = 0;
    double last_third_max = 0;
    bool stabilized = false;     // last third <= 1.1 x middle third
};

// O(n) boundedness study along x_n = y_n = p^n - k (or +k).
inline OffsetBoundReport bounded_correction_offset(const MisSpec& mis, long k, int sign,
                                                   long n_lo, long n_hi) {
    if (mis.dim() != 2 || mis.p.p[0] != mis.p.p[1])
        fail(errc::invalid_spec, "offset study is a two-axis equal-multiplier construction");
    if (n_lo < 1 || n_hi < n_lo) fail(errc::invalid_spec, "bad index range");
    SequenceSpec seq = SequenceSpec::power_offset(k, sign);
    Box largest = seq.box_at(mis, n_hi);
    mpfr_prec_t prec = surface_auto_prec(largest);
    WordLogEvaluator ev(mis.omega, prec, prec);

    OffsetBoundReport rep;
    std::vector<double> ratios;
    for (long n = n_lo; n <= n_hi; ++n) {
        BallReal c = asymptotic_correction(mis, seq.box_at(mis, n), ev);
        double ratio = c.abs_enclosure().upper_d() / static_cast<double>(n);
        ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.corrections.push_back({n, std::move(c)});
    }
    std::size_t third = ratios.size() / 3;
    for (std::size_t i = third; i < 2 * third; ++i)
        rep.middle_third_max = std::max(rep.middle_third_max, ratios[i]);
    for (std::size_t i = 2 * third; i < ratios.size(); ++i)
        rep.last_third_max = std::max(rep.last_third_max, ratios[i]);
    rep.stabilized = rep.last_third_max <= 1.1 * rep.middle_third_max;
    return rep;
}

} // namespace mislab

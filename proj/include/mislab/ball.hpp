#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "mislab/bignum.hpp"
#include "mislab/errors.hpp"

namespace mislab {

// Midpoint-radius interval scalar: a value known to lie in
// [center - radius, center + radius]. Centers carry `prec` bits; radii are
// low-precision and always rounded upward, so enclosures never shrink by
// rounding. This is the HighPrecReal carrier used across the library.
class BallReal {
    static constexpr mpfr_prec_t kRadiusPrec = 32;

public:
    explicit BallReal(mpfr_prec_t prec = 64) : prec_(clamp_prec(prec)) {
        mpfr_init2(c_, prec_);
        mpfr_init2(r_, kRadiusPrec);
        mpfr_set_zero(c_, 1);
        mpfr_set_zero(r_, 1);
    }

    BallReal(const BallReal& o) : prec_(o.prec_) {
        mpfr_init2(c_, prec_);
        mpfr_init2(r_, kRadiusPrec);
        mpfr_set(c_, o.c_, MPFR_RNDN);
        mpfr_set(r_, o.r_, MPFR_RNDU);
    }

    BallReal(BallReal&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(c_, 2);
        mpfr_init2(r_, 2);
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
        std::swap(prec_, o.prec_);
    }

    BallReal& operator=(BallReal o) noexcept {
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
        std::swap(prec_, o.prec_);
        return *this;
    }

    ~BallReal() {
        mpfr_clear(c_);
        mpfr_clear(r_);
    }

    mpfr_prec_t prec() const { return prec_; }

    static BallReal zero(mpfr_prec_t prec) { return BallReal(prec); }

    static BallReal exact_si(long v, mpfr_prec_t prec) {
        BallReal b(prec);
        mpfr_set_si(b.c_, v, MPFR_RNDN);
        b.bump_ulp(); // exact for small v, but harmless to stay conservative
        return b;
    }

    static BallReal from_nat(const Nat& z, mpfr_prec_t prec) {
        BallReal b(prec);
        mpfr_set_z(b.c_, z.get_mpz_t(), MPFR_RNDN);
        b.bump_ulp();
        return b;
    }

    static BallReal from_rat(const Rat& q, mpfr_prec_t prec) {
        BallReal b(prec);
        mpfr_set_q(b.c_, q.get_mpq_t(), MPFR_RNDN);
        b.bump_ulp();
        return b;
    }

    // decimal string, e.g. "0.6" or "1.25e-3"
    static BallReal from_decimal(const std::string& s, mpfr_prec_t prec) {
        BallReal b(prec);
        if (s.empty() || mpfr_set_str(b.c_, s.c_str(), 10, MPFR_RNDN) != 0)
            fail(errc::parse_error, "not a decimal number: '" + s + "'");
        b.bump_ulp();
        return b;
    }

    // natural log of an exact positive integer
    static BallReal log_nat(const Nat& z, mpfr_prec_t prec) {
        if (z <= 0) fail(errc::invalid_spec, "log of nonpositive integer");
        prec = clamp_prec(prec);
        mpfr_t lo, hi;
        mpfr_init2(lo, prec + 8);
        mpfr_init2(hi, prec + 8);
        mpfr_set_z(lo, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi, z.get_mpz_t(), MPFR_RNDU);
        mpfr_log(lo, lo, MPFR_RNDD);
        mpfr_log(hi, hi, MPFR_RNDU);
        BallReal b = from_endpoints(lo, hi, prec);
        mpfr_clear(lo);
        mpfr_clear(hi);
        return b;
    }

    static BallReal log_rat(const Rat& q, mpfr_prec_t prec) {
        if (q <= 0) fail(errc::invalid_spec, "log of nonpositive rational");
        BallReal n = log_nat(Nat(q.get_num()), prec);
        BallReal d = log_nat(Nat(q.get_den()), prec);
        return n.sub(d);
    }

    static BallReal from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
        prec = clamp_prec(prec);
        BallReal b(prec);
        mpfr_t mid;
        mpfr_init2(mid, prec);
        mpfr_add(mid, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        mpfr_set(b.c_, mid, MPFR_RNDN);
        // radius >= max(|hi - c|, |c - lo|)
        mpfr_t d1, d2;
        mpfr_init2(d1, kRadiusPrec);
        mpfr_init2(d2, kRadiusPrec);
        mpfr_sub(d1, hi, b.c_, MPFR_RNDU);
        mpfr_sub(d2, b.c_, lo, MPFR_RNDU);
        mpfr_max(b.r_, d1, d2, MPFR_RNDU);
        if (mpfr_sgn(b.r_) < 0) mpfr_set_zero(b.r_, 1);
        mpfr_clear(mid);
        mpfr_clear(d1);
        mpfr_clear(d2);
        return b;
    }

    BallReal add(const BallReal& o) const {
        BallReal out(std::max(prec_, o.prec_));
        mpfr_add(out.c_, c_, o.c_, MPFR_RNDN);
        mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
        out.bump_ulp();
        return out;
    }

    BallReal sub(const BallReal& o) const {
        BallReal out(std::max(prec_, o.prec_));
        mpfr_sub(out.c_, c_, o.c_, MPFR_RNDN);
        mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
        out.bump_ulp();
        return out;
    }

    BallReal neg() const {
        BallReal out(*this);
        mpfr_neg(out.c_, out.c_, MPFR_RNDN);
        return out;
    }

    BallReal mul(const BallReal& o) const {
        BallReal out(std::max(prec_, o.prec_));
        mpfr_mul(out.c_, c_, o.c_, MPFR_RNDN);
        // r = |a|rb + |b|ra + ra rb, all upward
        mpfr_t t, aa, bb;
        mpfr_init2(t, kRadiusPrec);
        mpfr_init2(aa, kRadiusPrec);
        mpfr_init2(bb, kRadiusPrec);
        mpfr_abs(aa, c_, MPFR_RNDU);
        mpfr_abs(bb, o.c_, MPFR_RNDU);
        mpfr_mul(t, aa, o.r_, MPFR_RNDU);
        mpfr_set(out.r_, t, MPFR_RNDU);
        mpfr_mul(t, bb, r_, MPFR_RNDU);
        mpfr_add(out.r_, out.r_, t, MPFR_RNDU);
        mpfr_mul(t, r_, o.r_, MPFR_RNDU);
        mpfr_add(out.r_, out.r_, t, MPFR_RNDU);
        mpfr_clear(t);
        mpfr_clear(aa);
        mpfr_clear(bb);
        out.bump_ulp();
        return out;
    }

    BallReal mul_si(long v) const {
        BallReal out(prec_);
        mpfr_mul_si(out.c_, c_, v, MPFR_RNDN);
        mpfr_mul_si(out.r_, r_, v < 0 ? -v : v, MPFR_RNDU);
        out.bump_ulp();
        return out;
    }

    BallReal mul_nat(const Nat& z) const {
        BallReal out(prec_);
        mpfr_mul_z(out.c_, c_, z.get_mpz_t(), MPFR_RNDN);
        mpfr_t az;
        mpfr_init2(az, kRadiusPrec);
        mpfr_set_z(az, z.get_mpz_t(), MPFR_RNDU);
        mpfr_abs(az, az, MPFR_RNDU);
        mpfr_mul(out.r_, r_, az, MPFR_RNDU);
        mpfr_clear(az);
        out.bump_ulp();
        return out;
    }

    BallReal mul_rat(const Rat& q) const {
        BallReal out(prec_);
        mpfr_mul_q(out.c_, c_, q.get_mpq_t(), MPFR_RNDN);
        mpfr_t aq;
        mpfr_init2(aq, kRadiusPrec);
        mpfr_set_q(aq, q.get_mpq_t(), MPFR_RNDU);
        mpfr_abs(aq, aq, MPFR_RNDU);
        mpfr_mul(out.r_, r_, aq, MPFR_RNDU);
        mpfr_clear(aq);
        out.bump_ulp();
        return out;
    }

    BallReal div_nat(const Nat& z) const {
        if (z == 0) fail(errc::invalid_spec, "division by zero");
        BallReal out(prec_);
        mpfr_div_z(out.c_, c_, z.get_mpz_t(), MPFR_RNDN);
        mpfr_t az;
        mpfr_init2(az, kRadiusPrec);
        mpfr_set_z(az, z.get_mpz_t(), MPFR_RNDD);
        mpfr_abs(az, az, MPFR_RNDD);
        mpfr_div(out.r_, r_, az, MPFR_RNDU);
        mpfr_clear(az);
        out.bump_ulp();
        return out;
    }

    // denominator must be certifiably nonzero
    BallReal div(const BallReal& o) const {
        int s = o.certified_sign();
        if (s == 0) fail(errc::invalid_spec, "ball division by interval containing zero");
        mpfr_prec_t p = std::max(prec_, o.prec_);
        mpfr_t alo, ahi, blo, bhi, q, lo, hi;
        mpfr_init2(alo, p + 8);
        mpfr_init2(ahi, p + 8);
        mpfr_init2(blo, p + 8);
        mpfr_init2(bhi, p + 8);
        mpfr_init2(q, p + 8);
        mpfr_init2(lo, p + 8);
        mpfr_init2(hi, p + 8);
        endpoints(alo, ahi);
        o.endpoints(blo, bhi);
        bool first = true;
        for (mpfr_srcptr a : {static_cast<mpfr_srcptr>(alo), static_cast<mpfr_srcptr>(ahi)})
            for (mpfr_srcptr b : {static_cast<mpfr_srcptr>(blo), static_cast<mpfr_srcptr>(bhi)}) {
                mpfr_div(q, a, b, MPFR_RNDD);
                if (first || mpfr_cmp(q, lo) < 0) mpfr_set(lo, q, MPFR_RNDD);
                mpfr_div(q, a, b, MPFR_RNDU);
                if (first || mpfr_cmp(q, hi) > 0) mpfr_set(hi, q, MPFR_RNDU);
                first = false;
            }
        BallReal out = from_endpoints(lo, hi, p);
        mpfr_clear(alo);
        mpfr_clear(ahi);
        mpfr_clear(blo);
        mpfr_clear(bhi);
        mpfr_clear(q);
        mpfr_clear(lo);
        mpfr_clear(hi);
        return out;
    }

    // natural log; requires the enclosure to be strictly positive
    BallReal log() const {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec_ + 8);
        mpfr_init2(hi, prec_ + 8);
        endpoints(lo, hi);
        if (mpfr_sgn(lo) <= 0) {
            mpfr_clear(lo);
            mpfr_clear(hi);
            fail(errc::invalid_spec, "log of interval touching zero");
        }
        mpfr_log(lo, lo, MPFR_RNDD);
        mpfr_log(hi, hi, MPFR_RNDU);
        BallReal out = from_endpoints(lo, hi, prec_);
        mpfr_clear(lo);
        mpfr_clear(hi);
        return out;
    }

    // |x| as an enclosure
    BallReal abs_enclosure() const {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec_ + 8);
        mpfr_init2(hi, prec_ + 8);
        endpoints(lo, hi);
        mpfr_t alo, ahi;
        mpfr_init2(alo, prec_ + 8);
        mpfr_init2(ahi, prec_ + 8);
        if (mpfr_sgn(lo) >= 0) {
            mpfr_set(alo, lo, MPFR_RNDD);
            mpfr_set(ahi, hi, MPFR_RNDU);
        } else if (mpfr_sgn(hi) <= 0) {
            mpfr_neg(alo, hi, MPFR_RNDD);
            mpfr_neg(ahi, lo, MPFR_RNDU);
        } else {
            mpfr_set_zero(alo, 1);
            mpfr_neg(lo, lo, MPFR_RNDU);
            mpfr_max(ahi, lo, hi, MPFR_RNDU);
        }
        BallReal out = from_endpoints(alo, ahi, prec_);
        mpfr_clear(lo);
        mpfr_clear(hi);
        mpfr_clear(alo);
        mpfr_clear(ahi);
        return out;
    }

    static BallReal hull(const BallReal& a, const BallReal& b) {
        mpfr_prec_t p = std::max(a.prec_, b.prec_);
        mpfr_t alo, ahi, blo, bhi;
        mpfr_init2(alo, p + 8);
        mpfr_init2(ahi, p + 8);
        mpfr_init2(blo, p + 8);
        mpfr_init2(bhi, p + 8);
        a.endpoints(alo, ahi);
        b.endpoints(blo, bhi);
        mpfr_min(alo, alo, blo, MPFR_RNDD);
        mpfr_max(ahi, ahi, bhi, MPFR_RNDU);
        BallReal out = from_endpoints(alo, ahi, p);
        mpfr_clear(alo);
        mpfr_clear(ahi);
        mpfr_clear(blo);
        mpfr_clear(bhi);
        return out;
    }

    void inflate_2exp(long e) { // radius += 2^e
        mpfr_t t;
        mpfr_init2(t, kRadiusPrec);
        mpfr_set_ui_2exp(t, 1, e, MPFR_RNDU);
        mpfr_add(r_, r_, t, MPFR_RNDU);
        mpfr_clear(t);
    }

    // -1, 0 (straddles), +1
    int certified_sign() const {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec_ + 8);
        mpfr_init2(hi, prec_ + 8);
        endpoints(lo, hi);
        int s = 0;
        if (mpfr_sgn(lo) > 0) s = 1;
        else if (mpfr_sgn(hi) < 0) s = -1;
        mpfr_clear(lo);
        mpfr_clear(hi);
        return s;
    }

    bool certified_lt(const BallReal& o) const { return sub(o).certified_sign() < 0; }
    bool certified_gt(const BallReal& o) const { return sub(o).certified_sign() > 0; }

    double mid_d() const { return mpfr_get_d(c_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(r_, MPFR_RNDU); }
    double upper_d() const {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec_ + 8);
        mpfr_init2(hi, prec_ + 8);
        endpoints(lo, hi);
        double v = mpfr_get_d(hi, MPFR_RNDU);
        mpfr_clear(lo);
        mpfr_clear(hi);
        return v;
    }
    double lower_d() const {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec_ + 8);
        mpfr_init2(hi, prec_ + 8);
        endpoints(lo, hi);
        double v = mpfr_get_d(lo, MPFR_RNDD);
        mpfr_clear(lo);
        mpfr_clear(hi);
        return v;
    }

    // radius <= 2^e ?
    bool radius_below_2exp(long e) const {
        mpfr_t t;
        mpfr_init2(t, kRadiusPrec);
        mpfr_set_ui_2exp(t, 1, e, MPFR_RNDD);
        bool ok = mpfr_cmp(r_, t) <= 0;
        mpfr_clear(t);
        return ok;
    }

    // deterministic scientific notation of the midpoint
    std::string to_string(int digits = 17) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, c_);
        return buf;
    }

    std::string to_fixed(int decimals) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof buf, "%.*Rf", decimals, c_);
        return buf;
    }

    mpfr_srcptr center_raw() const { return c_; }

private:
    static mpfr_prec_t clamp_prec(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, 16); }

    void endpoints(mpfr_ptr lo, mpfr_ptr hi) const {
        mpfr_sub(lo, c_, r_, MPFR_RNDD);
        mpfr_add(hi, c_, r_, MPFR_RNDU);
    }

    // account for the rounding of the last center operation
    void bump_ulp() {
        if (mpfr_zero_p(c_) || !mpfr_number_p(c_)) return;
        mpfr_exp_t e = mpfr_get_exp(c_);
        mpfr_t u;
        mpfr_init2(u, kRadiusPrec);
        mpfr_set_ui_2exp(u, 1, e - prec_, MPFR_RNDU);
        mpfr_add(r_, r_, u, MPFR_RNDU);
        mpfr_clear(u);
    }

    mpfr_prec_t prec_;
    mpfr_t c_;
    mpfr_t r_;
};

} // namespace mislab

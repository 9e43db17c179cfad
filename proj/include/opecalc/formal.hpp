// Constructors for the basic windowed distributions: monomials, the delta
// distribution and its shifts, expansions of (mu*z + nu*w)^h in a chosen
// region, and Taylor splitting of finite distributions.
#pragma once

#include "opecalc/distribution.hpp"

#include <utility>

namespace opecalc {

enum class Region { z_gt_w, w_gt_z };

using RDist = Distribution<Rational>;

inline RDist monomial(Var v, const Rational& exponent, const Rational& coeff = 1) {
    RDist d({v});
    Rational n = -exponent - 1;
    d.add_term({n}, coeff);
    d.window(v).supp = XInterval{XRat(n), XRat(n)};
    return d;
}

inline RDist constant(const Rational& c) {
    RDist d{std::vector<Var>{}};
    if (!c.is_zero()) d.add_term({}, c);
    return d;
}

// (mu*a + nu*b)^h expanded in the region where `first` dominates, truncated
// after `terms` powers of the subordinate variable.  The sign of the
// dominant summand must be +1 unless h is an integer.
inline RDist expand_power(int mu, int nu, const Rational& h, Region region, Var va, Var vb,
                          long terms) {
    if (mu != 1 && mu != -1) throw error("expand_power: mu must be +-1");
    if (nu != 1 && nu != -1) throw error("expand_power: nu must be +-1");
    Var hi_v = region == Region::z_gt_w ? va : vb;
    Var lo_v = region == Region::z_gt_w ? vb : va;
    int hi_s = region == Region::z_gt_w ? mu : nu;
    int lo_s = region == Region::z_gt_w ? nu : mu;
    if (hi_s == -1 && !h.is_integer())
        throw error("expand_power: branch choice required for (-1)^" + h.str());
    bool poly = h.is_integer() && h >= Rational(0);
    std::vector<Var> vars{va, vb};
    std::sort(vars.begin(), vars.end());
    RDist d(vars);
    long imax = poly ? std::min(terms, h.to_long()) : terms;
    bool complete = poly && imax == h.to_long();
    for (long i = 0; i <= imax; ++i) {
        Rational c = binom(h, i);
        if (hi_s == -1) c *= signed_power(h + Rational(i));
        if (lo_s == -1) c *= signed_power(i);
        if (c.is_zero()) continue;
        // hi_v^(h-i) * lo_v^i
        ModeKey key(2);
        key[vars[0] == hi_v ? 0 : 1] = -(h - Rational(i)) - 1;
        key[vars[0] == lo_v ? 0 : 1] = Rational(-i - 1);
        d.add_term(key, c);
    }
    // hi_v: true exponents <= h, materialized down to h - imax.
    d.window(hi_v).supp = XInterval::at_least(XRat(-h - 1));
    d.window(hi_v).known =
        complete ? XInterval::all() : XInterval::at_most(XRat(Rational(imax) - h - 1));
    // lo_v: true exponents in [0, ..], materialized up to imax.
    d.window(lo_v).supp = XInterval::at_most(XRat(-1));
    d.window(lo_v).known =
        complete ? XInterval::all() : XInterval::at_least(XRat(Rational(-imax) - 1));
    return d;
}

// Expansion of (mu*zpair + nu*wpair)^(h, hbar) for a statistical exponent
// pair (h - hbar must be an integer); the sign of the dominant pair is
// (-1)^(h - hbar + i + ibar) which is branch independent.
inline RDist expand_power_pair(int mu, int nu, const Rational& h, const Rational& hbar,
                               Region region, long terms) {
    if (!(h - hbar).is_integer())
        throw error("expand_power_pair: non-statistical exponent (" + h.str() + "," +
                    hbar.str() + ")");
    RDist holo = expand_power(1, 1, h, region, Var::z, Var::w, terms);
    RDist anti = expand_power(1, 1, hbar, region, Var::zbar, Var::wbar, terms);
    RDist d = holo * anti;
    int dominant = region == Region::z_gt_w ? mu : nu;
    int subordinate = region == Region::z_gt_w ? nu : mu;
    if (dominant == -1 || subordinate == -1) {
        // Rescale terms by the sign factors: dominant^(h-hbar+i+ibar),
        // subordinate^(i+ibar) where i, ibar are the subordinate exponents.
        Var lo_z = region == Region::z_gt_w ? Var::w : Var::z;
        Var lo_zb = region == Region::z_gt_w ? Var::wbar : Var::zbar;
        RDist scaled(d.vars());
        for (size_t t = 0; t < d.vars().size(); ++t)
            scaled.window(d.vars()[t]) = d.window(d.vars()[t]);
        int iz = scaled.var_index(lo_z), izb = scaled.var_index(lo_zb);
        for (const auto& [key, c] : d.terms()) {
            Rational i = -key[iz] - 1, ibar = -key[izb] - 1;
            Rational s = 1;
            if (dominant == -1) s *= signed_power(h - hbar + i + ibar);
            if (subordinate == -1) s *= signed_power(i + ibar);
            scaled.add_term(key, c * s);
        }
        return scaled;
    }
    return d;
}

// delta(z, w) = sum_{n} w^n z^{-n-1}, materialized for summation indices in
// [lo, hi]; shifted variant sums over n in h + Z.
inline RDist shifted_delta(const Rational& h, Var vz, Var vw, long lo, long hi) {
    if (hi < lo) throw error("delta: empty window");
    std::vector<Var> vars{vz, vw};
    std::sort(vars.begin(), vars.end());
    RDist d(vars);
    Rational frac = h - Rational(h.floor());
    for (long n = lo; n <= hi; ++n) {
        Rational nn = Rational(n) + frac;
        ModeKey key(2);
        key[vars[0] == vz ? 0 : 1] = nn;           // z-mode n  (z^{-n-1})
        key[vars[0] == vw ? 0 : 1] = -nn - 1;      // w-mode -n-1 (w^n)
        d.add_term(key, 1);
    }
    d.window(vz).known = XInterval{XRat(Rational(lo) + frac), XRat(Rational(hi) + frac)};
    d.window(vw).known =
        XInterval{XRat(-(Rational(hi) + frac) - 1), XRat(-(Rational(lo) + frac) - 1)};
    return d;
}

inline RDist delta(Var vz, Var vw, long lo, long hi) {
    return shifted_delta(0, vz, vw, lo, hi);
}

// delta(vx, mu*va + nu*vb) = sum_n (mu*va + nu*vb)^n vx^{-n-1} with the
// inner powers expanded in `region`; summation index in [nlo, nhi], inner
// truncation after `terms` powers.
inline RDist delta_linear(Var vx, int mu, int nu, Var va, Var vb, Region region, long nlo,
                          long nhi, long terms) {
    std::vector<Var> vars{vx, va, vb};
    std::sort(vars.begin(), vars.end());
    RDist acc(vars);
    bool first = true;
    for (long n = nlo; n <= nhi; ++n) {
        RDist t = expand_power(mu, nu, n, region, va, vb, terms) * monomial(vx, Rational(-n - 1));
        t = t.extended(vars);
        if (first) {
            acc = t;
            first = false;
        } else {
            // Accumulate terms; windows handled below.
            for (size_t i = 0; i < vars.size(); ++i) {
                acc.window(vars[i]).known =
                    intersect(acc.window(vars[i]).known, t.window(vars[i]).known);
                acc.window(vars[i]).supp = hull(acc.window(vars[i]).supp, t.window(vars[i]).supp);
            }
            for (const auto& [k, c] : t.terms()) acc.add_term(k, c);
        }
    }
    acc.window(vx).known = XInterval{XRat(nlo), XRat(nhi)};
    acc.window(vx).supp = XInterval::all();
    return acc;
}

// Exact division of a finite distribution by (za - zb), in the region-free
// polynomial sense; throws when not divisible.
inline RDist divide_diff(RDist d, Var za, Var zb) {
    int ia = d.var_index(za), ib = d.var_index(zb);
    if (ia < 0 || ib < 0) throw error("divide_diff: missing variable");
    RDist q(d.vars());
    for (Var v : d.vars()) q.window(v) = VarWindow::exact();
    XRat max0 = XRat::minus_inf();
    for (const auto& [k, c] : d.terms()) max0 = max(max0, XRat(k[ia]));
    while (!d.terms().empty()) {
        // Term with minimal za-mode = maximal za-exponent.
        auto best = d.terms().end();
        for (auto it = d.terms().begin(); it != d.terms().end(); ++it)
            if (best == d.terms().end() || it->first[ia] < best->first[ia]) best = it;
        if (XRat(best->first[ia]) > max0)
            throw error("divide_diff: not divisible by (" + std::string(var_name(za)) + "-" +
                        var_name(zb) + ")");
        ModeKey bk = best->first;
        Rational c = best->second;
        ModeKey qk = bk;
        qk[ia] += 1;  // za-exponent drops by one
        q.add_term(qk, c);
        // d -= (za - zb) * c * za^{e-1} zb^{f}: removes the leading term and
        // adds c * za^{e-1} zb^{f+1}.
        ModeKey k2 = qk;
        k2[ib] -= 1;
        d.add_term(bk, -c);
        d.add_term(k2, c);
    }
    return q;
}

struct TaylorSplit {
    std::vector<RDist> coeffs;  // c_0 ... c_{N-1}, functions of the remaining vars
    RDist remainder;            // r with d = sum c_n (za-zb)^n + (za-zb)^N r
};

// Splits a finite distribution d(za, zb, ...) as a Taylor expansion in za
// around zb to order N.
inline TaylorSplit taylor_split(const RDist& d0, Var za, Var zb, long order) {
    TaylorSplit out;
    std::vector<Var> vars = d0.vars();
    for (Var v : {za, zb})
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    RDist d = d0.extended(vars);
    RDist rem = d;
    for (long n = 0; n < order; ++n) {
        RDist c = rem.substituted(za, zb);
        out.coeffs.push_back(c);
        RDist lift = c.extended(d.vars());
        // lift has za-exponent 0 on every term already (mode -1).
        rem = divide_diff(rem - lift, za, zb);
    }
    out.remainder = rem;
    return out;
}

}  // namespace opecalc

// Extended-rational intervals used to track which mode range of a
// distribution is faithfully materialized (the "window") and an a-priori
// bound on its true support.
#pragma once

#include "opecalc/rational.hpp"

#include <algorithm>
#include <string>

namespace opecalc {

// Rational extended by +/- infinity.
struct XRat {
    enum Kind : int8_t { neg_inf = -1, finite = 0, pos_inf = 1 };
    Kind kind = finite;
    Rational v;

    XRat() = default;
    XRat(Rational r) : kind(finite), v(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    XRat(long n) : kind(finite), v(n) {}                 // NOLINT(google-explicit-constructor)
    static XRat minus_inf() { return XRat(neg_inf, 0); }
    static XRat plus_inf() { return XRat(pos_inf, 0); }

    bool is_finite() const { return kind == finite; }

    friend bool operator<(const XRat& a, const XRat& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind != finite) return false;
        return a.v < b.v;
    }
    friend bool operator==(const XRat& a, const XRat& b) {
        return a.kind == b.kind && (a.kind != finite || a.v == b.v);
    }
    friend bool operator<=(const XRat& a, const XRat& b) { return a < b || a == b; }
    friend bool operator>(const XRat& a, const XRat& b) { return b < a; }
    friend bool operator>=(const XRat& a, const XRat& b) { return b <= a; }

    // a + b; combining opposite infinities is a logic error.
    friend XRat operator+(const XRat& a, const XRat& b) {
        if (a.kind == finite && b.kind == finite) return XRat(a.v + b.v);
        if (a.kind != finite && b.kind != finite && a.kind != b.kind)
            throw error("XRat: inf + (-inf)");
        return a.kind != finite ? a : b;
    }
    friend XRat operator-(const XRat& a) {
        if (a.kind == neg_inf) return plus_inf();
        if (a.kind == pos_inf) return minus_inf();
        return XRat(-a.v);
    }
    friend XRat operator-(const XRat& a, const XRat& b) { return a + (-b); }

    std::string str() const {
        if (kind == neg_inf) return "-inf";
        if (kind == pos_inf) return "+inf";
        return v.str();
    }

  private:
    XRat(Kind k, Rational r) : kind(k), v(std::move(r)) {}
};

inline XRat min(const XRat& a, const XRat& b) { return a < b ? a : b; }
inline XRat max(const XRat& a, const XRat& b) { return a < b ? b : a; }

// Closed extended interval [lo, hi]; empty when hi < lo.
struct XInterval {
    XRat lo = XRat::minus_inf();
    XRat hi = XRat::plus_inf();

    static XInterval all() { return {}; }
    static XInterval empty() { return {XRat(1), XRat(0)}; }
    static XInterval at_least(XRat a) { return {std::move(a), XRat::plus_inf()}; }
    static XInterval at_most(XRat b) { return {XRat::minus_inf(), std::move(b)}; }

    bool is_empty() const { return hi < lo; }
    bool is_all() const { return lo == XRat::minus_inf() && hi == XRat::plus_inf(); }
    bool contains(const Rational& x) const { return XRat(x) >= lo && XRat(x) <= hi; }
    bool contains(const XInterval& o) const {
        return o.is_empty() || (lo <= o.lo && o.hi <= hi);
    }

    XInterval shifted(const Rational& d) const {
        if (is_empty()) return *this;
        return {lo + XRat(d), hi + XRat(d)};
    }

    friend XInterval intersect(const XInterval& a, const XInterval& b) {
        return {max(a.lo, b.lo), min(a.hi, b.hi)};
    }
    friend XInterval hull(const XInterval& a, const XInterval& b) {
        if (a.is_empty()) return b;
        if (b.is_empty()) return a;
        return {min(a.lo, b.lo), max(a.hi, b.hi)};
    }
    // Union when the result is again an interval, otherwise just a.
    friend XInterval union_if_interval(const XInterval& a, const XInterval& b) {
        if (a.is_empty()) return b;
        if (b.is_empty()) return a;
        if (max(a.lo, b.lo) <= min(a.hi, b.hi) + XRat(1)) return hull(a, b);
        return a;
    }

    std::string str() const {
        if (is_empty()) return "[]";
        return "[" + lo.str() + "," + hi.str() + "]";
    }
};

// Per-variable knowledge of a distribution: every true term with mode index
// inside `known` is stored; the true support is contained in `supp`.
struct VarWindow {
    XInterval known = XInterval::all();
    XInterval supp = XInterval::all();

    static VarWindow exact() { return {}; }
    static VarWindow exact_supp(XInterval s) { return {XInterval::all(), std::move(s)}; }
};

}  // namespace opecalc

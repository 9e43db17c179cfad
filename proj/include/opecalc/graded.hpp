// Sparse vectors over an indexed weight-graded basis.  The truncated flag
// marks results whose over-cutoff components were dropped; it is sticky
// under arithmetic so checkers can skip undeterminable tuples.
#pragma once

#include "opecalc/rational.hpp"

#include <map>
#include <string>

namespace opecalc {

struct GradedVector {
    std::map<int, Rational> c;
    bool truncated = false;

    bool is_zero() const { return c.empty(); }
    bool determinate() const { return !truncated; }

    GradedVector& operator+=(const GradedVector& o) {
        for (const auto& [i, v] : o.c) {
            c[i] += v;
            if (c[i].is_zero()) c.erase(i);
        }
        truncated = truncated || o.truncated;
        return *this;
    }
    friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
    GradedVector operator*(const Rational& s) const {
        GradedVector r;
        r.truncated = truncated;
        if (s.is_zero()) return r;
        for (const auto& [i, v] : c) r.c.emplace(i, v * s);
        return r;
    }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) {
        return a += b * Rational(-1);
    }
    void add(int i, const Rational& v) {
        if (v.is_zero()) return;
        c[i] += v;
        if (c[i].is_zero()) c.erase(i);
    }
    static GradedVector unit(int i) {
        GradedVector v;
        v.c.emplace(i, 1);
        return v;
    }
    static GradedVector cut() {
        GradedVector v;
        v.truncated = true;
        return v;
    }

    friend bool operator==(const GradedVector& a, const GradedVector& b) {
        return a.c == b.c && a.truncated == b.truncated;
    }
};

// Distributions with GradedVector coefficients prune only genuinely empty
// values; a truncated zero still carries information.
inline bool coeff_is_zero(const GradedVector& v) { return v.is_zero() && !v.truncated; }

}  // namespace opecalc

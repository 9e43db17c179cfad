#include "opecalc/fieldcalc.hpp"

#include <climits>
#include <mutex>
#include <unordered_map>

namespace opecalc {

struct Field::Memo {
    struct KeyHash {
        size_t operator()(const std::pair<long, int>& k) const {
            return std::hash<long>()(k.first) * 1000003u ^ std::hash<int>()(k.second);
        }
    };
    std::unordered_map<std::pair<long, int>, GradedVector, KeyHash> cache;
    std::mutex mu;
};

Field::Field(const Va* space, Rational weight, Parity parity,
             std::function<GradedVector(long, int)> mode_fn, std::string name)
    : V_(space), wt_(std::move(weight)), par_(parity), fn_(std::move(mode_fn)),
      name_(std::move(name)), memo_(std::make_shared<Memo>()) {}

GradedVector Field::mode(long n, int v) const {
    // weight shortcut: nothing lives below the algebra
    Rational w = wt_ + V_->weight(v) - Rational(n) - 1;
    if (w < V_->min_weight()) return {};
    std::pair<long, int> key{n, v};
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->cache.find(key);
        if (it != memo_->cache.end()) return it->second;
    }
    GradedVector r = fn_(n, v);
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->cache.emplace(key, std::move(r)).first->second;
}

GradedVector Field::apply(long n, const GradedVector& v) const {
    GradedVector out;
    out.truncated = v.truncated;
    for (const auto& [i, c] : v.c) out += mode(n, i) * c;
    return out;
}

Field yfield(const Va& V, const GradedVector& state, const std::string& name) {
    Rational wt = V.state_weight(state);
    Parity par = V.state_parity(state);
    GradedVector s = state;
    const Va* vp = &V;
    return Field(
        vp, wt, par,
        [vp, s](long n, int v) { return vp->mode(s, n, GradedVector::unit(v)); }, name);
}

Field identity_field(const Va& V) {
    return Field(&V, 0, Parity::even,
                 [](long n, int v) { return n == -1 ? GradedVector::unit(v) : GradedVector{}; },
                 "1");
}

Field derive(const Field& a, long k) {
    Field base = a;
    return Field(&a.space(), a.weight() + Rational(k), a.parity(),
                 [base, k](long n, int v) {
                     Rational c = binom(Rational(n), k) * signed_power(k);
                     if (c.is_zero()) return GradedVector{};
                     return base.mode(n - k, v) * c;
                 },
                 k == 0 ? a.name() : "d^(" + std::to_string(k) + ")" + a.name());
}

Field nth_product(const Field& a, const Field& b, long n) {
    if (&a.space() != &b.space()) throw error("nth_product: fields on different spaces");
    const Va* V = &a.space();
    Rational zeta = supersign(a.parity(), b.parity());
    Field fa = a, fb = b;
    auto fn = [V, fa, fb, n, zeta](long m, int v) {
        GradedVector out;
        // sum_i (-1)^i binom(n,i) [ a_(n-i)(b_(m+i) v)
        //   - zeta (-1)^n b_(n+m-i)(a_(i) v) ]
        long s1 = fb.mode_sup_on(V->weight(v)) - m;
        for (long i = 0; i <= s1; ++i) {
            Rational c = binom(Rational(n), i) * signed_power(i);
            if (c.is_zero()) continue;
            GradedVector inner = fb.mode(m + i, v);
            if (coeff_is_zero(inner)) continue;
            out += fa.apply(n - i, inner) * c;
        }
        long s2 = fa.mode_sup_on(V->weight(v));
        Rational sgn = zeta * signed_power(n) * Rational(-1);
        for (long i = 0; i <= s2; ++i) {
            Rational c = binom(Rational(n), i) * signed_power(i) * sgn;
            if (c.is_zero()) continue;
            GradedVector inner = fa.mode(i, v);
            if (coeff_is_zero(inner)) continue;
            out += fb.apply(n + m - i, inner) * c;
        }
        return out;
    };
    return Field(V, a.weight() + b.weight() - Rational(n) - 1, a.parity() + b.parity(), fn,
                 a.name() + "_(" + std::to_string(n) + ")" + b.name());
}

GradedVector field_state(const Field& a) {
    return a.mode(-1, a.space().vacuum());
}

namespace {

long ceil_long(const Rational& x) { return -static_cast<long>((-x).floor()); }

// Scans the modes of the field whose results land at weights within
// [min_weight, cutoff] on the given basis vector.
enum class FieldValue { zero, nonzero, truncated };

FieldValue field_value_on(const Field& f, int v, const Rational& cutoff) {
    const Va& V = f.space();
    long msup = f.mode_sup_on(V.weight(v));
    long mlo = ceil_long(f.weight() + V.weight(v) - Rational(1) - cutoff);
    bool truncated = false;
    for (long m = msup; m >= mlo; --m) {
        GradedVector r = f.mode(m, v);
        if (!r.is_zero()) return FieldValue::nonzero;
        if (r.truncated) truncated = true;
    }
    return truncated ? FieldValue::truncated : FieldValue::zero;
}

bool field_zero_up_to(const Field& f, const Rational& cutoff, bool* truncated_seen) {
    const Va& V = f.space();
    for (int v : V.basis_up_to(cutoff)) {
        FieldValue fv = field_value_on(f, v, cutoff);
        if (fv == FieldValue::nonzero) return false;
        if (fv == FieldValue::truncated && truncated_seen) *truncated_seen = true;
    }
    return true;
}

}  // namespace

LocalityResult locality_order(const Field& a, const Field& b, const Rational& cutoff) {
    Rational top = a.weight() + b.weight() + cutoff - Rational(1) - a.space().min_weight();
    long nmax = static_cast<long>(top.floor());
    bool truncated_seen = false;
    for (long n = nmax; n >= 0; --n) {
        Field cn = nth_product(a, b, n);
        if (!field_zero_up_to(cn, cutoff, &truncated_seen))
            return {LocalityResult::order, n + 1, ""};
    }
    if (truncated_seen)
        return {LocalityResult::undetermined, 0,
                "truncated evaluation at cutoff " + cutoff.str()};
    return {LocalityResult::commute, 0, "commutator zero up to cutoff " + cutoff.str()};
}

std::vector<std::pair<long, Field>> ope_singular(const Field& a, const Field& b,
                                                 const Rational& cutoff) {
    Rational top = a.weight() + b.weight() + cutoff - Rational(1) - a.space().min_weight();
    long nmax = static_cast<long>(top.floor());
    std::vector<std::pair<long, Field>> out;
    for (long n = 0; n <= nmax; ++n) {
        Field cn = nth_product(a, b, n);
        if (!field_zero_up_to(cn, cutoff, nullptr)) out.push_back({n, cn});
    }
    return out;
}

long dong_bound(long n_ab, long n_bc, long n_ac, long n) {
    long b = n_ab + n_bc + n_ac - n - 1;
    return b > 0 ? b : 0;
}

std::optional<long> o_prime(const Va& V, const GradedVector& a, const GradedVector& b) {
    if (a.is_zero() || b.is_zero()) return LONG_MIN;
    long sup = V.mode_sup(V.state_weight(a), V.state_weight(b));
    long floor_n = sup - static_cast<long>((V.internal_cutoff() - V.min_weight() + Rational(2))
                                               .floor());
    for (long n = sup; n >= floor_n; --n) {
        GradedVector r = V.mode(a, n, b);
        if (r.truncated) return std::nullopt;
        if (!r.is_zero()) return n + 1;
    }
    return LONG_MIN;
}

const char* identity_name(IdentityKind k) {
    switch (k) {
        case IdentityKind::jacobi: return "jacobi";
        case IdentityKind::duality: return "duality";
        case IdentityKind::locality: return "locality";
        case IdentityKind::associativity: return "associativity_formula";
        case IdentityKind::commutator: return "commutator_formula";
    }
    return "?";
}

namespace {

struct Sides {
    GradedVector lhs, rhs;
    bool truncated() const { return lhs.truncated || rhs.truncated; }
};

// the four-term data of the holomorphic Jacobi identity family
Sides eval_identity(const Va& V, IdentityKind kind, const GradedVector& a,
                    const GradedVector& b, const GradedVector& c, long r, long s, long t) {
    Rational zeta = supersign(V.state_parity(a), V.state_parity(b));
    Rational wa = V.state_weight(a), wb = V.state_weight(b), wc = V.state_weight(c);
    long supAB = V.mode_sup(wa, wb);
    long supBC = V.mode_sup(wb, wc);
    long supAC = V.mode_sup(wa, wc);
    Sides out;

    auto lhs_sum = [&](long rr, long ss, long tt) {  // sum_i binom(t,i)(a_(r+i)b)_(s+t-i)c
        GradedVector acc;
        for (long i = 0; rr + i <= supAB; ++i) {
            Rational bi = binom(Rational(tt), i);
            if (bi.is_zero()) continue;
            GradedVector ab = V.mode(a, rr + i, b);
            if (coeff_is_zero(ab)) continue;
            acc += V.mode(ab, ss + tt - i, c) * bi;
        }
        return acc;
    };
    auto first_sum = [&](long rr, long ss, long tt) {
        // sum_i (-1)^i binom(r,i) a_(t+r-i)(b_(s+i)c)
        GradedVector acc;
        for (long i = 0; ss + i <= supBC; ++i) {
            Rational bi = binom(Rational(rr), i) * signed_power(i);
            if (bi.is_zero()) continue;
            GradedVector bc = V.mode(b, ss + i, c);
            if (coeff_is_zero(bc)) continue;
            acc += V.mode(a, tt + rr - i, bc) * bi;
        }
        return acc;
    };
    auto second_sum = [&](long rr, long ss, long tt) {
        // sum_i (-1)^i binom(r,i) b_(s+r-i)(a_(t+i)c)
        GradedVector acc;
        for (long i = 0; tt + i <= supAC; ++i) {
            Rational bi = binom(Rational(rr), i) * signed_power(i);
            if (bi.is_zero()) continue;
            GradedVector ac = V.mode(a, tt + i, c);
            if (coeff_is_zero(ac)) continue;
            acc += V.mode(b, ss + rr - i, ac) * bi;
        }
        return acc;
    };

    switch (kind) {
        case IdentityKind::jacobi:
            out.lhs = lhs_sum(r, s, t);
            out.rhs = first_sum(r, s, t) - second_sum(r, s, t) * (zeta * signed_power(r));
            break;
        case IdentityKind::duality:
            out.lhs = lhs_sum(r, s, t);
            out.rhs = first_sum(r, s, t);
            break;
        case IdentityKind::locality:
            // of order r for indices t, s
            out.lhs = first_sum(r, s, t) - second_sum(r, s, t) * (zeta * signed_power(r));
            out.rhs = GradedVector{};
            break;
        case IdentityKind::associativity:
            // (a_(r)b)_(s)c = RHS at t = 0
            out.lhs = V.mode(V.mode(a, r, b), s, c);
            out.rhs = first_sum(r, s, 0) - second_sum(r, s, 0) * (zeta * signed_power(r));
            break;
        case IdentityKind::commutator:
            // [a_(t), b_(s)] c = sum_i binom(t,i)(a_(i)b)_(t+s-i)c
            out.lhs = V.mode(a, t, V.mode(b, s, c)) -
                      V.mode(b, s, V.mode(a, t, c)) * zeta;
            out.rhs = lhs_sum(0, s, t);
            break;
    }
    return out;
}

}  // namespace

CheckGroup check_identity(const Va& V, IdentityKind kind, const GradedVector& a,
                          const GradedVector& b, const GradedVector& c, long box_lo,
                          long box_hi, const Rational& cutoff) {
    CheckGroup g;
    g.id = std::string("identity.") + identity_name(kind);
    g.domain = "indices [" + std::to_string(box_lo) + "," + std::to_string(box_hi) +
               "], cutoff " + cutoff.str();

    // applicability thresholds
    long r_min = box_lo, t_min = box_lo;
    if (kind == IdentityKind::duality) {
        auto o = o_prime(V, a, c);
        if (!o) {
            g.record_undetermined("o'(a,c)", "mode supremum undetermined at this cutoff");
            return g;
        }
        t_min = std::max(box_lo, std::max(0L, *o == LONG_MIN ? 0L : *o));
    }
    if (kind == IdentityKind::locality) {
        auto o = o_prime(V, a, b);
        if (!o) {
            g.record_undetermined("o'(a,b)", "mode supremum undetermined at this cutoff");
            return g;
        }
        r_min = std::max(box_lo, std::max(0L, *o == LONG_MIN ? 0L : *o));
    }

    Rational wsum = V.state_weight(a) + V.state_weight(b) + V.state_weight(c);
    auto sweep = [&](long r, long s, long t) {
        // all terms land at weight wsum - r - s - t - 2
        Rational w = wsum - Rational(r + s + t) - 2;
        if (w < V.min_weight()) {
            g.record_pass();  // both sides vanish identically
            return;
        }
        if (w > V.cutoff()) return;  // outside the verified region
        Sides sd = eval_identity(V, kind, a, b, c, r, s, t);
        std::string idx = "(r,s,t)=(" + std::to_string(r) + "," + std::to_string(s) + "," +
                          std::to_string(t) + ")";
        if (sd.truncated()) {
            g.record_undetermined(idx, "needs over-cutoff data");
            return;
        }
        if (sd.lhs == sd.rhs)
            g.record_pass();
        else
            g.record_fail(idx, "lhs = " + V.render_state(sd.lhs) +
                                   ", rhs = " + V.render_state(sd.rhs));
    };

    switch (kind) {
        case IdentityKind::jacobi:
        case IdentityKind::duality:
        case IdentityKind::locality:
            for (long r = r_min; r <= box_hi; ++r)
                for (long s = box_lo; s <= box_hi; ++s)
                    for (long t = t_min; t <= box_hi; ++t) sweep(r, s, t);
            break;
        case IdentityKind::associativity:
            for (long r = box_lo; r <= box_hi; ++r)
                for (long s = box_lo; s <= box_hi; ++s) sweep(r, s, 0);
            break;
        case IdentityKind::commutator:
            for (long t = box_lo; t <= box_hi; ++t)
                for (long s = box_lo; s <= box_hi; ++s) sweep(0, s, t);
            break;
    }
    return g;
}

CheckGroup check_skew_symmetry(const Va& V, const GradedVector& a, const GradedVector& b,
                               long nlo, long nhi) {
    CheckGroup g;
    g.id = "identity.skew_symmetry";
    g.domain = "n in [" + std::to_string(nlo) + "," + std::to_string(nhi) + "]";
    Rational zeta = supersign(V.state_parity(a), V.state_parity(b));
    long sup = V.mode_sup(V.state_weight(a), V.state_weight(b));
    for (long n = nlo; n <= nhi; ++n) {
        GradedVector lhs = V.mode(b, n, a) * zeta;
        GradedVector rhs;
        rhs.truncated = lhs.truncated;
        for (long i = 0; n + i <= sup; ++i) {
            GradedVector ab = V.mode(a, n + i, b);
            if (coeff_is_zero(ab)) continue;
            rhs += V.translate_divided(ab, i) * signed_power(n + 1 + i);
        }
        std::string idx = "n=" + std::to_string(n);
        if (lhs.truncated || rhs.truncated) {
            g.record_undetermined(idx, "needs over-cutoff data");
            continue;
        }
        if (lhs == rhs)
            g.record_pass();
        else
            g.record_fail(idx, "lhs = " + V.render_state(lhs) +
                                   ", rhs = " + V.render_state(rhs));
    }
    return g;
}

}  // namespace opecalc

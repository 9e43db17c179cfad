// Sparse formal distributions a(z,...) = sum a_{n,...} z^{-n-1}... with
// rational mode indices, generic coefficients, and per-variable windows
// recording where the stored data is faithful.
#pragma once

#include "opecalc/rational.hpp"
#include "opecalc/window.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace opecalc {

// Display order is z > zbar > w > wbar > x, matching the total order used
// for radial ordering.
enum class Var : uint8_t { z = 0, zbar = 1, w = 2, wbar = 3, x = 4 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::z: return "z";
        case Var::zbar: return "zbar";
        case Var::w: return "w";
        case Var::wbar: return "wbar";
        case Var::x: return "x";
    }
    return "?";
}

inline bool coeff_is_zero(const Rational& r) { return r.is_zero(); }
inline std::string coeff_str(const Rational& r) { return r.str(); }

// Mode-index tuple aligned with a distribution's variable list.
using ModeKey = std::vector<Rational>;

template <class C>
class Distribution {
  public:
    Distribution() = default;
    explicit Distribution(std::vector<Var> vars) : vars_(std::move(vars)) {
        for (size_t i = 1; i < vars_.size(); ++i)
            if (!(vars_[i - 1] < vars_[i])) throw error("Distribution: unsorted variables");
        win_.resize(vars_.size());
    }

    const std::vector<Var>& vars() const { return vars_; }
    const std::map<ModeKey, C>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    int var_index(Var v) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == v) return static_cast<int>(i);
        return -1;
    }
    bool has_var(Var v) const { return var_index(v) >= 0; }

    VarWindow& window(Var v) { return win_[index_of(v)]; }
    const VarWindow& window(Var v) const { return win_[index_of(v)]; }

    // Adds c at the given mode key and prunes zeros.
    void add_term(const ModeKey& key, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    const C* coeff(const ModeKey& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? nullptr : &it->second;
    }

    // Lifts to a larger sorted variable set; new variables enter with mode
    // index -1 (exponent zero) and exact windows.
    Distribution extended(const std::vector<Var>& vars) const {
        if (vars == vars_) return *this;
        Distribution r(vars);
        std::vector<int> pos(vars.size(), -1);
        for (size_t i = 0; i < vars.size(); ++i) pos[i] = var_index(vars[i]);
        for (size_t i = 0; i < vars_.size(); ++i)
            if (std::find(vars.begin(), vars.end(), vars_[i]) == vars.end())
                throw error("Distribution::extended: dropped variable");
        for (size_t i = 0; i < vars.size(); ++i) {
            if (pos[i] >= 0)
                r.win_[i] = win_[pos[i]];
            else
                r.win_[i] = VarWindow{XInterval::all(), XInterval{XRat(-1), XRat(-1)}};
        }
        for (const auto& [key, c] : terms_) {
            ModeKey k(vars.size(), Rational(-1));
            for (size_t i = 0; i < vars.size(); ++i)
                if (pos[i] >= 0) k[i] = key[pos[i]];
            r.terms_.emplace(std::move(k), c);
        }
        return r;
    }

    Distribution& operator+=(const Distribution& o) {
        auto vars = merged_vars(vars_, o.vars_);
        if (vars != vars_) *this = extended(vars);
        Distribution rhs = o.extended(vars);
        for (size_t i = 0; i < vars.size(); ++i) {
            win_[i].known = intersect(win_[i].known, rhs.win_[i].known);
            win_[i].supp = hull(win_[i].supp, rhs.win_[i].supp);
        }
        for (const auto& [key, c] : rhs.terms_) add_term(key, c);
        prune_to_known();
        return *this;
    }
    friend Distribution operator+(Distribution a, const Distribution& b) { return a += b; }

    Distribution operator-() const {
        Distribution r = *this;
        for (auto& [k, c] : r.terms_) c = c * Rational(-1);
        return r;
    }
    Distribution& operator-=(const Distribution& o) { return *this += -o; }
    friend Distribution operator-(Distribution a, const Distribution& b) { return a -= b; }

    Distribution scaled(const Rational& s) const {
        Distribution r(vars_);
        r.win_ = win_;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
        return r;
    }

    // d/dvar as a distribution derivative: (da)_n = -n a_{n-1}.
    Distribution derivative(Var v) const {
        int i = index_of(v);
        Distribution r(vars_);
        r.win_ = win_;
        r.win_[i].known = win_[i].known.shifted(1);
        r.win_[i].supp = win_[i].supp.shifted(1);
        for (const auto& [key, c] : terms_) {
            ModeKey k = key;
            k[i] += 1;
            Rational f = -k[i];
            if (f.is_zero()) continue;
            r.add_term(k, c * f);
        }
        return r;
    }

    // Divided power derivative d^(n)/dvar^n = (1/n!) d^n.
    Distribution derivative(Var v, long n) const {
        Distribution r = *this;
        for (long j = 0; j < n; ++j) r = r.derivative(v);
        return r.scaled(Rational(1) / factorial(n));
    }

    // Multiplication by var^h: (var^h a)_n = a_{n+h}.
    Distribution mul_monomial(Var v, const Rational& h) const {
        int i = index_of(v);
        Distribution r(vars_);
        r.win_ = win_;
        r.win_[i].known = win_[i].known.shifted(-h);
        r.win_[i].supp = win_[i].supp.shifted(-h);
        for (const auto& [key, c] : terms_) {
            ModeKey k = key;
            k[i] -= h;
            r.terms_.emplace(std::move(k), c);
        }
        return r;
    }

    // Coefficient of var^{-1} (the 0-th mode in var); drops the variable.
    Distribution residue(Var v) const {
        int i = index_of(v);
        if (!win_[i].known.contains(Rational(0)))
            throw error("residue: mode 0 outside the known window of " +
                        std::string(var_name(v)));
        std::vector<Var> vars;
        for (size_t j = 0; j < vars_.size(); ++j)
            if (static_cast<int>(j) != i) vars.push_back(vars_[j]);
        Distribution r(vars);
        for (size_t j = 0, t = 0; j < vars_.size(); ++j)
            if (static_cast<int>(j) != i) r.win_[t++] = win_[j];
        for (const auto& [key, c] : terms_) {
            if (!(key[i] == Rational(0))) continue;
            ModeKey k;
            k.reserve(key.size() - 1);
            for (size_t j = 0; j < key.size(); ++j)
                if (static_cast<int>(j) != i) k.push_back(key[j]);
            r.add_term(k, c);
        }
        return r;
    }

    // Keeps terms whose mode key satisfies the predicate; windows unchanged.
    template <class Pred>
    Distribution restricted(Pred&& pred) const {
        Distribution r(vars_);
        r.win_ = win_;
        for (const auto& [key, c] : terms_)
            if (pred(key)) r.terms_.emplace(key, c);
        return r;
    }

    // Restriction of the mode indices of one variable to a box: outside the
    // box the restricted distribution is known to vanish.
    Distribution restricted_box(Var v, const XInterval& box) const {
        int i = index_of(v);
        Distribution r(vars_);
        r.win_ = win_;
        r.win_[i].supp = intersect(win_[i].supp, box);
        if (win_[i].known.contains(box))
            r.win_[i].known = XInterval::all();
        else
            r.win_[i].known = union_if_interval(win_[i].known, box_complement_hull(box));
        for (const auto& [key, c] : terms_)
            if (box.contains(key[i])) r.terms_.emplace(key, c);
        return r;
    }

    // Product.  Shared variables convolve as exponents (mode keys combine as
    // n = n1 + n2 + 1); windows follow the sound rule derived from the
    // support priors of both factors.
    friend Distribution operator*(const Distribution& a0, const Distribution& b0) {
        auto vars = merged_vars(a0.vars_, b0.vars_);
        Distribution a = a0.extended(vars);
        Distribution b = b0.extended(vars);
        Distribution r(vars);
        for (size_t i = 0; i < vars.size(); ++i)
            r.win_[i] = product_window(a.win_[i], b.win_[i]);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                C c = ca * cb;
                if (coeff_is_zero(c)) continue;
                ModeKey k(vars.size());
                for (size_t i = 0; i < vars.size(); ++i) k[i] = ka[i] + kb[i] + 1;
                r.add_term(k, c);
            }
        r.prune_to_known();
        return r;
    }

    // Where a variable is fully known, the stored keys are the whole truth,
    // so the support prior can be tightened to their hull.
    void tighten_support() {
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (!win_[i].known.is_all()) continue;
            XInterval hullk = XInterval::empty();
            for (const auto& [k, c] : terms_)
                hullk = hull(hullk, XInterval{XRat(k[i]), XRat(k[i])});
            win_[i].supp = intersect(win_[i].supp, hullk);
        }
    }

    // Substitutes `from` by `into` (e.g. w = z): output mode n collects all
    // stored pairs with n_from + n_into + 1 = n.  Requires the contributing
    // segment to be finite and fully known for every n in the result window.
    Distribution substituted(Var from, Var into) const {
        Distribution self = *this;
        self.tighten_support();
        return self.substituted_impl(from, into);
    }

  private:
    Distribution substituted_impl(Var from, Var into) const {
        int i = index_of(from), j = index_of(into);
        const VarWindow &wf = win_[i], &wt = win_[j];
        bool finite = (wf.supp.lo.is_finite() || wt.supp.hi.is_finite()) &&
                      (wf.supp.hi.is_finite() || wt.supp.lo.is_finite());
        if (!finite)
            throw error("substituted: non-summable diagonal (unbounded supports)");
        std::vector<Var> vars;
        for (size_t t = 0; t < vars_.size(); ++t)
            if (static_cast<int>(t) != i) vars.push_back(vars_[t]);
        Distribution r(vars);
        for (size_t t = 0, u = 0; t < vars_.size(); ++t) {
            if (static_cast<int>(t) == i) continue;
            if (static_cast<int>(t) == j)
                r.win_[u] = product_window(wf, wt);
            else
                r.win_[u] = win_[t];
            ++u;
        }
        for (const auto& [key, c] : terms_) {
            ModeKey k;
            k.reserve(key.size() - 1);
            for (size_t t = 0; t < key.size(); ++t) {
                if (static_cast<int>(t) == i) continue;
                if (static_cast<int>(t) == j)
                    k.push_back(key[i] + key[j] + 1);
                else
                    k.push_back(key[t]);
            }
            r.add_term(k, c);
        }
        r.prune_to_known();
        return r;
    }

  public:
    // The window on which this distribution is faithful, per variable.
    std::string window_str() const {
        std::string s;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) s += " ";
            s += var_name(vars_[i]);
            s += ":";
            s += win_[i].known.str();
        }
        return s;
    }

  private:
    int index_of(Var v) const {
        int i = var_index(v);
        if (i < 0) throw error(std::string("Distribution: no variable ") + var_name(v));
        return i;
    }

    static std::vector<Var> merged_vars(const std::vector<Var>& a, const std::vector<Var>& b) {
        std::vector<Var> r = a;
        for (Var v : b)
            if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
        std::sort(r.begin(), r.end());
        return r;
    }

    // Known window of a product in a shared variable: n is known iff every
    // true split n = n1 + n2 + 1 with n1 in supp(a), n2 in supp(b) has
    // n1 in known(a) and n2 in known(b).
    static VarWindow product_window(const VarWindow& a, const VarWindow& b) {
        if (a.supp.is_empty() || b.supp.is_empty())
            return {XInterval::all(), XInterval::empty()};
        XInterval known = XInterval::all();
        // segment for n1: [max(slo_a, n-1-shi_b), min(shi_a, n-1-slo_b)] must
        // lie inside known(a); symmetrically for n2.
        if (!(a.supp.lo >= a.known.lo))
            known = intersect(known, XInterval::at_least(a.known.lo + b.supp.hi + XRat(1)));
        if (!(a.supp.hi <= a.known.hi))
            known = intersect(known, XInterval::at_most(a.known.hi + b.supp.lo + XRat(1)));
        if (!(b.supp.lo >= b.known.lo))
            known = intersect(known, XInterval::at_least(b.known.lo + a.supp.hi + XRat(1)));
        if (!(b.supp.hi <= b.known.hi))
            known = intersect(known, XInterval::at_most(b.known.hi + a.supp.lo + XRat(1)));
        XInterval supp{a.supp.lo + b.supp.lo + XRat(1), a.supp.hi + b.supp.hi + XRat(1)};
        if (a.supp.is_empty() || b.supp.is_empty()) supp = XInterval::empty();
        return {known, supp};
    }

    static XInterval box_complement_hull(const XInterval& box) {
        // For union purposes: one of the complement half-lines, stepped off
        // by one so no in-box point is claimed.
        if (box.lo == XRat::minus_inf()) return XInterval::at_least(box.hi + XRat(1));
        return XInterval::at_most(box.lo + XRat(-1));
    }

    void prune_to_known() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            bool keep = true;
            for (size_t i = 0; i < vars_.size(); ++i)
                if (!win_[i].known.contains(it->first[i]) ||
                    !win_[i].supp.contains(it->first[i])) {
                    keep = false;
                    break;
                }
            it = keep ? std::next(it) : terms_.erase(it);
        }
    }

    std::vector<Var> vars_;
    std::map<ModeKey, C> terms_;
    std::vector<VarWindow> win_;
};

// Equality of stored data on the intersection of the known windows with an
// optional extra per-variable box (in mode space).
template <class C>
bool equal_on_common_window(const Distribution<C>& a, const Distribution<C>& b,
                            const std::map<Var, XInterval>& box = {},
                            std::string* where = nullptr) {
    std::vector<Var> vars;
    for (Var v : a.vars()) vars.push_back(v);
    for (Var v : b.vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    Distribution<C> ea = a.extended(vars), eb = b.extended(vars);
    std::vector<XInterval> win(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        win[i] = intersect(ea.window(vars[i]).known, eb.window(vars[i]).known);
        auto it = box.find(vars[i]);
        if (it != box.end()) win[i] = intersect(win[i], it->second);
    }
    if (where) {
        *where = "";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i) *where += " ";
            *where += std::string(var_name(vars[i])) + ":" + win[i].str();
        }
    }
    auto inside = [&](const ModeKey& k) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (!win[i].contains(k[i])) return false;
        return true;
    };
    Distribution<C> diff = ea - eb;
    for (const auto& [k, c] : diff.terms())
        if (inside(k) && !coeff_is_zero(c)) return false;
    return true;
}

template <class C>
bool zero_on_window(const Distribution<C>& a, const std::map<Var, XInterval>& box = {}) {
    Distribution<C> z(a.vars());
    return equal_on_common_window(a, z, box);
}

// Canonical text rendering: "coeff * z^p * w^q" terms with true exponents
// p = -n-1 as exact fractions, sorted descending by exponent tuple.
inline std::string render(const Distribution<Rational>& d) {
    if (d.terms().empty()) return "0";
    // Ascending mode keys give descending true exponents p = -n-1.
    std::vector<std::pair<ModeKey, Rational>> ts(d.terms().begin(), d.terms().end());
    std::string s;
    for (size_t t = 0; t < ts.size(); ++t) {
        if (t) s += " + ";
        s += ts[t].second.str();
        for (size_t i = 0; i < d.vars().size(); ++i) {
            Rational e = -ts[t].first[i] - 1;
            if (e.is_zero()) continue;
            s += std::string("*") + var_name(d.vars()[i]) + "^" + e.str();
        }
    }
    return s;
}

}  // namespace opecalc

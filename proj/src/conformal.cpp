#include "opecalc/conformal.hpp"

#include <algorithm>

namespace opecalc {

ConformalAlgebra::ConformalAlgebra(std::vector<Gen> gens,
                                   std::map<std::tuple<int, int, long>, ConfElem> products,
                                   std::string central_name,
                                   std::vector<ConfViolation>* violations)
    : gens_(std::move(gens)), products_(std::move(products)),
      central_name_(std::move(central_name)) {
    for (auto it = products_.begin(); it != products_.end();) {
        auto [s, t, n] = it->first;
        if (s < 0 || t < 0 || s >= (int)gens_.size() || t >= (int)gens_.size() || n < 0)
            throw error("ConformalAlgebra: bad product index");
        it = it->second.is_zero() ? products_.erase(it) : std::next(it);
    }
    for (const auto& [k, e] : products_) {
        auto [s, t, n] = k;
        (void)n;
        // products must live in K[T]S + K k and respect parity
        Parity p = gens_[s].parity + gens_[t].parity;
        for (const auto& [gt, c] : e.terms) {
            (void)c;
            if (gens_[gt.first].parity != p)
                throw error("ConformalAlgebra: product breaks parity");
        }
        if (!e.central.is_zero() && p != Parity::even)
            throw error("ConformalAlgebra: odd central term");
    }
    auto found = check_axioms();
    if (violations) {
        for (auto& v : found) violations->push_back(v);
    } else if (!found.empty()) {
        throw error("ConformalAlgebra: " + found.front().identity +
                    " violated at " + found.front().witness);
    }
}

int ConformalAlgebra::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return (int)i;
    return -1;
}

long ConformalAlgebra::pole_bound(int s, int t) const {
    long b = 0;
    for (const auto& [k, e] : products_) {
        (void)e;
        if (std::get<0>(k) == s && std::get<1>(k) == t) b = std::max(b, std::get<2>(k) + 1);
    }
    return b;
}

long ConformalAlgebra::max_pole_bound() const {
    long b = 0;
    for (size_t s = 0; s < gens_.size(); ++s)
        for (size_t t = 0; t < gens_.size(); ++t) b = std::max(b, pole_bound((int)s, (int)t));
    return b;
}

const ConfElem& ConformalAlgebra::singular(int s, int t, long n) const {
    auto it = products_.find({s, t, n});
    return it == products_.end() ? zero_ : it->second;
}

ConfElem ConformalAlgebra::translate(const ConfElem& e) const {
    ConfElem r;
    for (const auto& [k, c] : e.terms) r.terms[{k.first, k.second + 1}] = c;
    return r;
}

ConfElem ConformalAlgebra::translate_divided(const ConfElem& e, long i) const {
    ConfElem r = e;
    for (long j = 0; j < i; ++j) r = translate(r);
    return r * (Rational(1) / factorial(i));
}

// T^m s _(n) T^m' t per the inductive extension of the generator products.
ConfElem ConformalAlgebra::product_mono(int s, long m, int t, long mp, long n) const {
    if (mp == 0) {
        if (n - m < 0) return ConfElem{};
        Rational c = binom(Rational(n), m) * factorial(m) * signed_power(m);
        if (c.is_zero()) return ConfElem{};
        return singular(s, t, n - m) * c;
    }
    ConfElem a = translate(product_mono(s, m, t, mp - 1, n));
    a += product_mono(s, m + 1, t, mp - 1, n) * Rational(-1);
    return a;
}

ConfElem ConformalAlgebra::product(const ConfElem& a, const ConfElem& b, long n) const {
    if (n < 0) throw error("ConformalAlgebra::product: n must be >= 0");
    ConfElem r;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            r += product_mono(ka.first, ka.second, kb.first, kb.second, n) * (ca * cb);
    return r;  // central parts act as zero
}

Parity ConformalAlgebra::parity(const ConfElem& e) const {
    Parity p = Parity::even;
    bool first = true;
    for (const auto& [k, c] : e.terms) {
        (void)c;
        if (first) {
            p = gens_[k.first].parity;
            first = false;
        } else if (gens_[k.first].parity != p) {
            throw error("ConfElem: mixed parity");
        }
    }
    if (!e.central.is_zero() && !first && p != Parity::even)
        throw error("ConfElem: mixed parity");
    return p;
}

Rational ConformalAlgebra::weight(const ConfElem& e) const {
    Rational w = 0;
    bool first = true;
    for (const auto& [k, c] : e.terms) {
        (void)c;
        Rational wk = gens_[k.first].weight + Rational(k.second);
        if (first) {
            w = wk;
            first = false;
        } else if (!(wk == w)) {
            throw error("ConfElem: mixed weight");
        }
    }
    if (!e.central.is_zero() && !first && !w.is_zero()) throw error("ConfElem: mixed weight");
    return w;
}

std::string ConformalAlgebra::render_elem(const ConfElem& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    auto sep = [&] {
        if (!first) s += " + ";
        first = false;
    };
    for (const auto& [k, c] : e.terms) {
        sep();
        if (!(c == Rational(1))) s += c.str() + "*";
        if (k.second == 0)
            s += gens_[k.first].name;
        else
            s += "T^" + std::to_string(k.second) + "(" + gens_[k.first].name + ")";
    }
    if (!e.central.is_zero()) {
        sep();
        if (!(e.central == Rational(1))) s += e.central.str() + "*";
        s += central_name_;
    }
    return s;
}

std::vector<ConfViolation> ConformalAlgebra::check_axioms() const {
    std::vector<ConfViolation> out;
    long B = max_pole_bound();
    // skew-symmetry: sign(a,b) b_(n) a = sum_i (-1)^{n+1+i} T^(i)(a_(n+i) b)
    for (size_t a = 0; a < gens_.size(); ++a)
        for (size_t b = 0; b < gens_.size(); ++b) {
            Rational zeta = supersign(gens_[a].parity, gens_[b].parity);
            for (long n = 0; n <= B + 1; ++n) {
                ConfElem lhs = singular((int)b, (int)a, n) * zeta;
                ConfElem rhs;
                for (long i = 0; n + i < pole_bound((int)a, (int)b); ++i)
                    rhs += translate_divided(singular((int)a, (int)b, n + i), i) *
                           signed_power(n + 1 + i);
                if (!(lhs - rhs).is_zero())
                    out.push_back({"skew_symmetry",
                                   gens_[a].name + "," + gens_[b].name +
                                       " n=" + std::to_string(n)});
            }
        }
    // Jacobi identity over the box outside which every term of both sides
    // vanishes: modes of T^m s _(n) T^m' t vanish for n >= B + m + m'.
    long J0 = 0;
    for (const auto& [k, e] : products_) {
        (void)k;
        for (const auto& [gt, c] : e.terms) {
            (void)c;
            J0 = std::max(J0, (long)gt.second);
        }
    }
    long R = 2 * B + J0 + 2;
    for (size_t a = 0; a < gens_.size(); ++a)
        for (size_t b = 0; b < gens_.size(); ++b)
            for (size_t c = 0; c < gens_.size(); ++c) {
                ConfElem ea = ConfElem::gen((int)a), eb = ConfElem::gen((int)b),
                         ec = ConfElem::gen((int)c);
                Rational zeta = supersign(gens_[a].parity, gens_[b].parity);
                for (long r = 0; r <= R; ++r)
                    for (long s = 0; s <= R; ++s)
                        for (long t = 0; t <= R; ++t) {
                            ConfElem lhs;
                            for (long i = 0; i <= t && r + i <= B; ++i)
                                lhs += product(product(ea, eb, r + i), ec, s + t - i) *
                                       binom(Rational(t), i);
                            ConfElem rhs;
                            for (long i = 0; i <= r; ++i) {
                                Rational bi = binom(Rational(r), i) * signed_power(i);
                                rhs += product(ea, product(eb, ec, s + i), t + r - i) * bi;
                                rhs += product(eb, product(ea, ec, t + i), s + r - i) *
                                       (bi * zeta * signed_power(r) * Rational(-1));
                            }
                            if (!(lhs - rhs).is_zero()) {
                                out.push_back({"jacobi",
                                               gens_[a].name + "," + gens_[b].name + "," +
                                                   gens_[c].name + " r=" + std::to_string(r) +
                                                   " s=" + std::to_string(s) +
                                                   " t=" + std::to_string(t)});
                                if (out.size() > 16) return out;
                            }
                        }
            }
    return out;
}

ConformalAlgebra conformal_from_linear_opes(
    std::vector<ConformalAlgebra::Gen> gens,
    std::map<std::tuple<int, int, long>, ConfElem> products, std::string central_name,
    std::vector<ConfViolation>* violations) {
    return ConformalAlgebra(std::move(gens), std::move(products), std::move(central_name),
                            violations);
}

}  // namespace opecalc

// Conformal algebras presented by linear singular OPEs on a finite set of
// generators: the underlying space is K[T] tensor K^(S) + K k, with the
// n-th products extended from the generator data.
#pragma once

#include "opecalc/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace opecalc {

// Element of K[T]S + K k: coefficients of T^j(gen) plus a central part.
struct ConfElem {
    std::map<std::pair<int, int>, Rational> terms;  // (gen, j) -> coeff of T^j(gen)
    Rational central;                               // coeff of k

    bool is_zero() const { return terms.empty() && central.is_zero(); }
    ConfElem& operator+=(const ConfElem& o) {
        for (const auto& [k, c] : o.terms) {
            terms[k] += c;
            if (terms[k].is_zero()) terms.erase(k);
        }
        central += o.central;
        return *this;
    }
    ConfElem operator*(const Rational& s) const {
        ConfElem r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms) r.terms.emplace(k, c * s);
        r.central = central * s;
        return r;
    }
    friend ConfElem operator-(ConfElem a, const ConfElem& b) {
        a += b * Rational(-1);
        return a;
    }
    static ConfElem gen(int g) {
        ConfElem e;
        e.terms[{g, 0}] = 1;
        return e;
    }
    static ConfElem khat(const Rational& c = 1) {
        ConfElem e;
        e.central = c;
        return e;
    }
};

struct ConfViolation {
    std::string identity;  // "skew_symmetry" | "jacobi"
    std::string witness;   // generators and indices
};

class ConformalAlgebra {
  public:
    struct Gen {
        std::string name;
        Parity parity = Parity::even;
        Rational weight = 1;
    };

    // Throws on a Jacobi or skew-symmetry violation unless `violations` is
    // given, in which case they are collected there.
    ConformalAlgebra(std::vector<Gen> gens,
                     std::map<std::tuple<int, int, long>, ConfElem> products,
                     std::string central_name = "k",
                     std::vector<ConfViolation>* violations = nullptr);

    size_t num_gens() const { return gens_.size(); }
    const Gen& gen(int i) const { return gens_[i]; }
    const std::string& central_name() const { return central_name_; }
    int gen_index(const std::string& name) const;

    long pole_bound(int s, int t) const;
    long max_pole_bound() const;

    // O(s,t,n); zero for n >= pole bound.
    const ConfElem& singular(int s, int t, long n) const;

    // n-th product for n >= 0, extended to all of K[T]S + K k.
    ConfElem product(const ConfElem& a, const ConfElem& b, long n) const;

    ConfElem translate(const ConfElem& e) const;          // T
    ConfElem translate_divided(const ConfElem& e, long i) const;  // T^(i)

    Parity parity(const ConfElem& e) const;  // requires homogeneity
    Rational weight(const ConfElem& e) const;

    std::string render_elem(const ConfElem& e) const;

    // Re-runs the generator-level Jacobi and skew-symmetry sweeps.
    std::vector<ConfViolation> check_axioms() const;

  private:
    ConfElem product_mono(int s, long m, int t, long mp, long n) const;

    std::vector<Gen> gens_;
    std::map<std::tuple<int, int, long>, ConfElem> products_;
    std::string central_name_;
    ConfElem zero_;
};

// Builds the conformal algebra defined by a family of linear OPEs; the
// entries of `products` give s_(n) t for 0 <= n < o(s,t).
ConformalAlgebra conformal_from_linear_opes(
    std::vector<ConformalAlgebra::Gen> gens,
    std::map<std::tuple<int, int, long>, ConfElem> products,
    std::string central_name = "k", std::vector<ConfViolation>* violations = nullptr);

}  // namespace opecalc

// Fields on a graded state space as lazily evaluated mode maps, the Z-fold
// products between them, OPE extraction, locality measurement, and the
// holomorphic identity checkers.
#pragma once

#include "opecalc/report.hpp"
#include "opecalc/vertex.hpp"

#include <functional>

namespace opecalc {

// A weight-homogeneous field: n |-> mode operator, evaluated against basis
// vectors and cached.  Copies share the cache.
class Field {
  public:
    Field() = default;
    Field(const Va* space, Rational weight, Parity parity,
          std::function<GradedVector(long, int)> mode_fn, std::string name);

    const Va& space() const { return *V_; }
    const Rational& weight() const { return wt_; }
    Parity parity() const { return par_; }
    const std::string& name() const { return name_; }

    GradedVector mode(long n, int v) const;
    GradedVector apply(long n, const GradedVector& v) const;

    // Largest mode that can act nontrivially on vectors of weight <= w.
    long mode_sup_on(const Rational& w) const { return V_->mode_sup(wt_, w); }

  private:
    const Va* V_ = nullptr;
    Rational wt_;
    Parity par_ = Parity::even;
    std::function<GradedVector(long, int)> fn_;
    std::string name_;

    struct Memo;
    std::shared_ptr<Memo> memo_;
};

Field yfield(const Va& V, const GradedVector& state, const std::string& name);
Field identity_field(const Va& V);
// Divided derivative: modes (-1)^k binom(n,k) a_(n-k).
Field derive(const Field& a, long k);

// a(z)_(n) b(z) evaluated through the radially ordered commutator modes.
Field nth_product(const Field& a, const Field& b, long n);
inline Field normal_ordered(const Field& a, const Field& b) { return nth_product(a, b, -1); }

// The state a field creates from the vacuum.
GradedVector field_state(const Field& a);

struct LocalityResult {
    enum Kind { order, commute, undetermined } kind;
    long N = 0;  // valid for kind == order (N >= 1)
    std::string note;

    long bound_or_zero() const { return kind == order ? N : 0; }
    std::string str() const {
        switch (kind) {
            case order: return std::to_string(N);
            case commute: return "-inf";
            default: return "undetermined";
        }
    }
};

// Least N >= 0 with (z-w)^N [a(z), b(w)] = 0 on every basis vector of weight
// <= cutoff; `commute` when the commutator vanishes identically there.
LocalityResult locality_order(const Field& a, const Field& b, const Rational& cutoff);

// Nonzero singular OPE coefficients c^n = a(z)_(n) b(z), n >= 0.
std::vector<std::pair<long, Field>> ope_singular(const Field& a, const Field& b,
                                                 const Rational& cutoff);

// (N_ab + N_bc + N_ac - n - 1)_+
long dong_bound(long n_ab, long n_bc, long n_ac, long n);

// Mode supremum of the pair (a, b) of states relative to the cutoff:
// the least N with a_(n) b = 0 for all n >= N; nullopt when truncation
// prevents a verdict, LONG_MIN when all products vanish.
std::optional<long> o_prime(const Va& V, const GradedVector& a, const GradedVector& b);

enum class IdentityKind { jacobi, duality, locality, associativity, commutator };

const char* identity_name(IdentityKind k);

// Evaluates the named identity for states a, b, c over the index ranges and
// reports per-tuple pass/fail/undetermined.  For `duality` the order t runs
// from o'(a,c)_+ and for `locality` the order r from o'(a,b)_+, per their
// applicability; tuples needing over-cutoff data are undetermined.
CheckGroup check_identity(const Va& V, IdentityKind kind, const GradedVector& a,
                          const GradedVector& b, const GradedVector& c, long box_lo,
                          long box_hi, const Rational& cutoff);

// Holomorphic skew-symmetry for the pair of states over n in [nlo, nhi].
CheckGroup check_skew_symmetry(const Va& V, const GradedVector& a, const GradedVector& b,
                               long nlo, long nhi);

}  // namespace opecalc

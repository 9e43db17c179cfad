// The two-variable calculus on tensor products of a chiral and an
// anti-chiral vertex algebra: K^2-indexed modes, additive locality, OPE
// decompositions with reducedness flags, skew-symmetry, additive duality,
// the four-term Jacobi identity with bracket modes, and multiple locality.
#pragma once

#include "opecalc/fieldcalc.hpp"

namespace opecalc {

struct ExpPair {
    Rational h, hbar;
    bool statistical() const { return (h - hbar).is_integer(); }
    std::string str() const { return "(" + h.str() + "," + hbar.str() + ")"; }
    friend ExpPair operator+(const ExpPair& a, const ExpPair& b) {
        return {a.h + b.h, a.hbar + b.hbar};
    }
    friend bool operator==(const ExpPair& a, const ExpPair& b) {
        return a.h == b.h && a.hbar == b.hbar;
    }
};

// States live in the flattened pair basis of a TensorVa whose left factor
// carries the z-modes and whose right factor carries the zbar-modes.
class Ope2 {
  public:
    Ope2(std::shared_ptr<const Va> hol, std::shared_ptr<const Va> anti);

    const Va& hol() const { return *hol_; }
    const Va& anti() const { return *anti_; }
    const TensorVa& space() const { return *sp_; }

    GradedVector vacuum() const { return GradedVector::unit(sp_->vacuum()); }
    GradedVector tensor_state(const GradedVector& u, const GradedVector& ubar) const {
        return sp_->tensor(u, ubar);
    }

    ExpPair state_weight(const GradedVector& a) const;
    Parity state_parity(const GradedVector& a) const { return sp_->state_parity(a); }

    // Operator mode a_(n,nbar) applied to c (both states of the tensor
    // space); factorizes through the chiral and anti-chiral mode actions.
    GradedVector mode2(const GradedVector& a, long n, long nbar,
                       const GradedVector& c) const;

    // K^2-fold state product a_(n,nbar) b.
    GradedVector product2(const GradedVector& a, long n, long nbar,
                          const GradedVector& b) const;

    // T^(i) (x) Tbar^(ibar).
    GradedVector t2(const GradedVector& a, long i, long ibar) const;

    // Bracket modes of the reordered products; requires (a, b) additively
    // local.  Every evaluation cross-checks the two reorderings against
    // each other and records a violation if they disagree.
    GradedVector bracket_z(const GradedVector& a, const GradedVector& b, long n, long nbar,
                           long m, long mbar, const GradedVector& c) const;
    GradedVector bracket_zbar(const GradedVector& a, const GradedVector& b, long n,
                              long nbar, long m, long mbar, const GradedVector& c) const;
    long bracket_checks() const { return bracket_checks_; }
    long bracket_violations() const { return bracket_violations_; }

    // Modes of the radially ordered product (z-w)^h (zbar-wbar)^hbar a(z)b(w)
    // in the given operator order, applied to c.
    GradedVector power_product(const GradedVector& a, const GradedVector& b, long h,
                               long hbar, bool a_first, long mz, long mzb, long mw, long mwb,
                               const GradedVector& c) const;

  private:
    std::shared_ptr<const Va> hol_;
    std::shared_ptr<const Va> anti_;
    std::shared_ptr<const TensorVa> sp_;
    mutable long bracket_checks_ = 0;
    mutable long bracket_violations_ = 0;
};

struct AdditiveOrder {
    enum Kind { order, commute, undetermined } kind;
    long h = 0, hbar = 0;
    std::string note;
    std::string str() const {
        switch (kind) {
            case order: return "(" + std::to_string(h) + "," + std::to_string(hbar) + ")";
            case commute: return "(-inf,-inf)";
            default: return "undetermined";
        }
    }
};

// Least (h, hbar) in the non-negative integer lattice (the candidate coset
// Z^2) with (z-w)^(h,hbar) [a(z), b(w)] = 0 on all basis vectors of weight
// <= the cutoffs, checked on the given mode box.
AdditiveOrder additive_locality_order(const Ope2& A, const GradedVector& a,
                                      const GradedVector& b, long hmax,
                                      const Rational& cutoff_h, const Rational& cutoff_hbar,
                                      long box);

// One numerator factor of an OPE term, in two variables on one chiral side:
// either a singular coefficient (constant in the first variable) or the
// regular (normal ordered) part of the pair.
struct OpePiece {
    bool regular = false;
    Field f, g;  // regular part :f g:
    Field c;     // singular numerator
    Parity parity = Parity::even;

    GradedVector mode(long mz, long mw, int basis) const;
    // d^(j)_z of the piece at z = w, as a field in w; zero field for j < 0.
    std::optional<Field> taylor(long j) const;
    bool divisible(const Rational& cutoff) const;  // by (z - w), on the window
};

// One term of an OPE decomposition of a(z)b(w) for pure tensor states:
// coeff * hol_piece(z,w) (x) anti_piece(zbar,wbar) / (z-w)^pole.
struct OpeTerm2 {
    ExpPair pole;
    Rational coeff;  // includes the Koszul sign of the tensor interleaving
    OpePiece hol, anti;
    bool divisible_z = false;
    bool divisible_zbar = false;
};

struct Ope2Decomposition {
    std::vector<OpeTerm2> terms;
    bool reduced = false;  // distinct pole cosets and no divisible numerator

    // mode (mz, mzb, mw, mwb) of the term's numerator applied to c
    GradedVector numer_mode(const Ope2& A, size_t term, long mz, long mzb, long mw, long mwb,
                            const GradedVector& c) const;
    // mode (mw, mwb) of d^(j,jbar)_z numerator |_{z=w} applied to c
    GradedVector taylor_mode(const Ope2& A, size_t term, long j, long jbar, long mw,
                             long mwb, const GradedVector& c) const;
};

// The OPE of a(z)b(w) obtained by tensoring the singular-plus-regular
// decompositions of the two chiral factors; candidate pole orders come from
// the construction.
Ope2Decomposition reduced_ope(const Ope2& A, const GradedVector& a, const GradedVector& b,
                              const Rational& cutoff);

// Verifies sum_h N_h / (z-w)^h = a(z)b(w) on the mode box.
CheckGroup check_ope_reconstruction(const Ope2& A, const GradedVector& a,
                                    const GradedVector& b, const Ope2Decomposition& dec,
                                    long box, const Rational& cutoff);

// The (mw, mwb)-mode of the field a(w)_(n,nbar) b(w) applied to c, extracted
// from the OPE numerators by Taylor coefficients at z = w.
GradedVector nth2_mode(const Ope2& A, const Ope2Decomposition& dec, long n, long nbar,
                       long mw, long mwb, const GradedVector& c);

// skew-symmetry with the statistical sign (-1)^(n - nbar + i + ibar).
CheckGroup check_skew_symmetry2(const Ope2& A, const GradedVector& a, const GradedVector& b,
                                long box);

// additive duality of order (t, tbar) for indices (r, s) over the box.
CheckGroup check_additive_duality(const Ope2& A, const GradedVector& a,
                                  const GradedVector& b, const GradedVector& c, long t,
                                  long tbar, long box);

// the Jacobi identity with the four right-hand terms, of orders
// r in (h,hbar) + Z^2 and t in Z^2, swept over the box per component.
CheckGroup check_jacobi2(const Ope2& A, const GradedVector& a, const GradedVector& b,
                         const GradedVector& c, long h, long hbar, long box);

// Multiple locality of up to three pure tensor fields given their pairwise
// additive orders; reports undetermined when the construction hypotheses do
// not apply.
CheckGroup multiple_locality_check(const Ope2& A, const std::vector<GradedVector>& states,
                                   const std::vector<std::vector<AdditiveOrder>>& orders,
                                   long box, const Rational& cutoff);

}  // namespace opecalc

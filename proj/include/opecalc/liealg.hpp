// Concrete local Lie algebras presented by mode symbols: superaffinizations
// of finite-dimensional Lie algebras, Clifford affinizations, and the
// Virasoro algebra with its central cocycle.
#pragma once

#include "opecalc/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace opecalc {

// A finite-dimensional Lie (super)algebra with structure constants and an
// even invariant symmetric pairing.
struct LiePresentation {
    struct Gen {
        std::string name;
        Parity parity = Parity::even;
    };
    std::vector<Gen> gens;
    // bracket[i][j] = coordinates of [g_i, g_j]
    std::vector<std::vector<std::map<int, Rational>>> bracket;
    std::vector<std::vector<Rational>> pairing;

    static LiePresentation abelian(const std::string& name, Parity parity,
                                   const Rational& self_pairing);
    static LiePresentation sl2();

    size_t dim() const { return gens.size(); }
    // Throws on broken skew-symmetry, Jacobi, or pairing axioms.
    void validate() const;
};

// Symbols spanning a local Lie algebra.
struct LieSym {
    enum Kind : uint8_t { current, fermion, vir, central } kind;
    int gen;        // generator index for current/fermion
    Rational mode;  // a_n (integer), fermion modes in 1/2 + Z, L_n (integer)

    friend bool operator<(const LieSym& a, const LieSym& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.gen != b.gen) return a.gen < b.gen;
        return a.mode < b.mode;
    }
    friend bool operator==(const LieSym& a, const LieSym& b) {
        return a.kind == b.kind && a.gen == b.gen && a.mode == b.mode;
    }
};

using LieElement = std::map<LieSym, Rational>;

LieElement lie_add(LieElement a, const LieElement& b, const Rational& s = 1);

class LocalLieAlgebra {
  public:
    enum class Kind { superaffine, affine, clifford, virasoro };

    static LocalLieAlgebra superaffinize(LiePresentation g);
    static LocalLieAlgebra affinize(LiePresentation g);
    static LocalLieAlgebra clifford_affinize(LiePresentation v);
    static LocalLieAlgebra virasoro();

    Kind kind() const { return kind_; }
    const LiePresentation& presentation() const { return g_; }

    Parity parity(const LieSym& s) const;
    bool parity_homogeneous(const LieElement& e, Parity* out) const;

    LieElement bracket(const LieSym& a, const LieSym& b) const;
    LieElement bracket(const LieElement& a, const LieElement& b) const;

    // T(a_n) = -n a_{n-1} and its fermionic / Virasoro counterparts.
    LieElement translate(const LieElement& e) const;

    // [[x,y],z] - [x,[y,z]] + sign [y,[x,z]] for parity-homogeneous inputs.
    LieElement jacobiator(const LieElement& x, const LieElement& y, const LieElement& z) const;

    std::string render(const LieElement& e) const;

  private:
    LocalLieAlgebra(Kind k, LiePresentation g) : kind_(k), g_(std::move(g)) {}
    Kind kind_;
    LiePresentation g_;
};

// The Virasoro 2-cocycle (n^3 - n)/12 delta_{n+m,0}; returns the number of
// triples |n|,|m|,|k| <= bound violating the cocycle identity (0 expected).
long virasoro_cocycle_violations(long bound);

}  // namespace opecalc

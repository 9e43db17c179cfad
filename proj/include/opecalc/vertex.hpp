// Vertex algebras evaluated lazily against a weight-truncated basis: the
// enveloping vertex algebra of a conformal algebra on its PBW state space,
// commutative vertex algebras of truncated polynomial algebras, and tensor
// products.
#pragma once

#include "opecalc/conformal.hpp"
#include "opecalc/graded.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace opecalc {

// Common interface: an indexed basis graded by rational weights, a vacuum,
// a translation operator, and the state-field correspondence evaluated as
// mode actions on basis vectors.
class Va {
  public:
    virtual ~Va() = default;

    virtual int dim() const = 0;
    virtual Rational weight(int idx) const = 0;
    virtual Parity parity(int idx) const = 0;
    virtual int vacuum() const = 0;
    virtual std::string basis_name(int idx) const = 0;

    // Weight below which the full (untruncated) algebra has no states.
    virtual Rational min_weight() const = 0;
    // States of weight above this bound are not materialized.
    virtual Rational internal_cutoff() const = 0;
    // The construction cutoff requested by the user.
    virtual Rational cutoff() const = 0;

    // Action of the n-th mode of the basis state `a` on the basis vector v.
    virtual GradedVector mode_basis(int a, long n, int v) const = 0;

    virtual GradedVector translate_basis(int v) const = 0;

    // --- linear extensions ---
    GradedVector mode(const GradedVector& a, long n, const GradedVector& v) const;
    GradedVector translate(const GradedVector& v) const;
    GradedVector translate_divided(const GradedVector& v, long i) const;

    Rational state_weight(const GradedVector& v) const;  // requires homogeneity
    Parity state_parity(const GradedVector& v) const;

    // Upper bound on the modes n for which a_(n) v can be nonzero or
    // truncation-flagged, given the weights.
    virtual long mode_sup(const Rational& wa, const Rational& wv) const;

    std::string render_state(const GradedVector& v) const;

    std::vector<int> basis_up_to(const Rational& w) const;
    std::map<Rational, long> character(const Rational& up_to) const;
};

// PBW factor: generator g applied at distribution mode n <= -1.
struct PbwFactor {
    int gen;
    long mode;
    friend bool operator<(const PbwFactor& a, const PbwFactor& b) {
        if (a.mode != b.mode) return a.mode < b.mode;
        return a.gen < b.gen;
    }
    friend bool operator==(const PbwFactor& a, const PbwFactor& b) {
        return a.gen == b.gen && a.mode == b.mode;
    }
};
using PbwWord = std::vector<PbwFactor>;

// Enveloping vertex algebra of a conformal algebra at a given level, on the
// PBW basis truncated in weight.
class EnvelopingVa : public Va {
  public:
    // internal_headroom extends the materialized basis beyond `cutoff` so
    // composite-mode evaluations rarely truncate.
    EnvelopingVa(ConformalAlgebra R, Rational level, Rational cutoff,
                 std::optional<Rational> internal_cutoff = std::nullopt);

    const ConformalAlgebra& algebra() const { return R_; }
    const Rational& level() const { return level_; }

    int dim() const override { return (int)words_.size(); }
    Rational weight(int idx) const override { return weights_[idx]; }
    Parity parity(int idx) const override { return parities_[idx]; }
    int vacuum() const override { return 0; }
    std::string basis_name(int idx) const override;
    Rational min_weight() const override { return 0; }
    Rational internal_cutoff() const override { return wint_; }
    Rational cutoff() const override { return cutoff_; }

    GradedVector mode_basis(int a, long n, int v) const override;
    GradedVector translate_basis(int v) const override;

    int word_index(const PbwWord& w) const;  // -1 when over the cutoff
    const PbwWord& word(int idx) const { return words_[idx]; }

    // Action of the mode symbol g_(n) of a generator (the Lie action).
    GradedVector apply_gen(int g, long n, int v) const;
    GradedVector apply_gen(int g, long n, const GradedVector& v) const;
    // Action of the modes of an element of K[T]S + K k.
    GradedVector apply_elem(const ConfElem& e, long n, const GradedVector& v) const;

    // iota: a in K[T]S + K k  ->  a_(-1) vacuum.
    GradedVector embed(const ConfElem& e) const;
    // Partial inverse of embed on the iota-image; nullopt outside it.
    std::optional<ConfElem> project(const GradedVector& v) const;

    // The state of a single generator, a_(-1) vacuum.
    GradedVector gen_state(int g) const;

  private:
    GradedVector apply_gen_uncached(int g, long n, int v) const;
    GradedVector mode_basis_uncached(int a, long n, int v) const;

    ConformalAlgebra R_;
    Rational level_;
    Rational cutoff_;
    Rational wint_;
    std::vector<PbwWord> words_;
    std::vector<Rational> weights_;
    std::vector<Parity> parities_;
    std::map<PbwWord, int> index_;
    std::vector<int> suffix_;  // index of word without its leading factor

    struct KeyHash {
        size_t operator()(const std::tuple<int, long, int>& k) const {
            auto [a, n, v] = k;
            size_t h = std::hash<long>()(n) * 1000003u;
            h ^= std::hash<int>()(a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= std::hash<int>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        }
    };
    mutable std::unordered_map<std::tuple<int, long, int>, GradedVector, KeyHash> gen_cache_;
    mutable std::unordered_map<std::tuple<int, long, int>, GradedVector, KeyHash> mode_cache_;
    mutable std::vector<std::optional<GradedVector>> t_cache_;
    mutable std::mutex mu_;
};

// Commutative vertex algebra of the truncated polynomial algebra K[x]/(deg
// > degree) with derivation T = d/dx; the basis vector i is x^i of weight -i.
class CommutativeVa : public Va {
  public:
    explicit CommutativeVa(long degree, Rational cutoff);

    int dim() const override { return (int)degree_ + 1; }
    Rational weight(int idx) const override { return Rational(-idx); }
    Parity parity(int) const override { return Parity::even; }
    int vacuum() const override { return 0; }
    std::string basis_name(int idx) const override;
    Rational min_weight() const override { return Rational(-degree_); }
    Rational internal_cutoff() const override { return 0; }
    Rational cutoff() const override { return cutoff_; }

    GradedVector mode_basis(int a, long n, int v) const override;
    GradedVector translate_basis(int v) const override;
    // products at n = -1 may be truncated even when the weight bound says
    // nothing survives
    long mode_sup(const Rational& wa, const Rational& wv) const override {
        return std::max(Va::mode_sup(wa, wv), -1L);
    }

  private:
    long degree_;
    Rational cutoff_;
};

// Tensor product of two vertex algebras with additive weights; basis index
// pairs are flattened as i * right.dim() + j.
class TensorVa : public Va {
  public:
    TensorVa(std::shared_ptr<const Va> left, std::shared_ptr<const Va> right);

    const Va& left() const { return *l_; }
    const Va& right() const { return *r_; }
    int pair_index(int i, int j) const { return i * r_->dim() + j; }
    std::pair<int, int> unpair(int idx) const { return {idx / r_->dim(), idx % r_->dim()}; }

    int dim() const override { return l_->dim() * r_->dim(); }
    Rational weight(int idx) const override;
    Parity parity(int idx) const override;
    int vacuum() const override { return pair_index(l_->vacuum(), r_->vacuum()); }
    std::string basis_name(int idx) const override;
    Rational min_weight() const override { return l_->min_weight() + r_->min_weight(); }
    Rational internal_cutoff() const override {
        return l_->internal_cutoff() + r_->internal_cutoff();
    }
    Rational cutoff() const override { return l_->cutoff() + r_->cutoff(); }

    GradedVector mode_basis(int a, long n, int v) const override;
    GradedVector translate_basis(int v) const override;

    GradedVector tensor(const GradedVector& a, const GradedVector& b) const;

  private:
    std::shared_ptr<const Va> l_;
    std::shared_ptr<const Va> r_;
};

// Brute-force graded dimensions oracle: the number of multisets of parts
// drawn from `parts` (with repetition unless the part is flagged distinct)
// summing to each weight up to the bound.  Used by tests as an independent
// count of PBW monomials.
std::map<Rational, long> partition_character(
    const std::vector<std::pair<Rational, bool>>& parts, const Rational& up_to);

}  // namespace opecalc

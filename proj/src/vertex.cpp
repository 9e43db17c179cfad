#include "opecalc/vertex.hpp"

#include <algorithm>

namespace opecalc {

// ---------------------------------------------------------------------------
// Va: linear extensions over the basis

GradedVector Va::mode(const GradedVector& a, long n, const GradedVector& v) const {
    GradedVector out;
    out.truncated = a.truncated || v.truncated;
    for (const auto& [ia, ca] : a.c)
        for (const auto& [iv, cv] : v.c) out += mode_basis(ia, n, iv) * (ca * cv);
    return out;
}

GradedVector Va::translate(const GradedVector& v) const {
    GradedVector out;
    out.truncated = v.truncated;
    for (const auto& [i, c] : v.c) out += translate_basis(i) * c;
    return out;
}

GradedVector Va::translate_divided(const GradedVector& v, long i) const {
    GradedVector out = v;
    for (long j = 0; j < i; ++j) out = translate(out);
    return out * (Rational(1) / factorial(i));
}

Rational Va::state_weight(const GradedVector& v) const {
    bool first = true;
    Rational w = 0;
    for (const auto& [i, c] : v.c) {
        (void)c;
        if (first) {
            w = weight(i);
            first = false;
        } else if (!(weight(i) == w)) {
            throw error("state_weight: inhomogeneous state");
        }
    }
    return w;
}

Parity Va::state_parity(const GradedVector& v) const {
    bool first = true;
    Parity p = Parity::even;
    for (const auto& [i, c] : v.c) {
        (void)c;
        if (first) {
            p = parity(i);
            first = false;
        } else if (parity(i) != p) {
            throw error("state_parity: inhomogeneous state");
        }
    }
    return p;
}

long Va::mode_sup(const Rational& wa, const Rational& wv) const {
    // a_(n) v lands at weight wa + wv - n - 1 >= min_weight
    Rational bound = wa + wv - Rational(1) - min_weight();
    long b = static_cast<long>(bound.floor());
    return b;
}

std::string Va::render_state(const GradedVector& v) const {
    if (v.is_zero()) return v.truncated ? "0 (truncated)" : "0";
    std::string s;
    bool first = true;
    for (const auto& [i, c] : v.c) {
        if (!first) s += " + ";
        first = false;
        if (!(c == Rational(1))) s += c.str() + "*";
        s += basis_name(i);
    }
    if (v.truncated) s += " (truncated)";
    return s;
}

std::vector<int> Va::basis_up_to(const Rational& w) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (weight(i) <= w) out.push_back(i);
    return out;
}

std::map<Rational, long> Va::character(const Rational& up_to) const {
    std::map<Rational, long> out;
    for (int i = 0; i < dim(); ++i)
        if (weight(i) <= up_to) ++out[weight(i)];
    return out;
}

// ---------------------------------------------------------------------------
// EnvelopingVa

EnvelopingVa::EnvelopingVa(ConformalAlgebra R, Rational level, Rational cutoff,
                           std::optional<Rational> internal_cutoff)
    : R_(std::move(R)), level_(std::move(level)), cutoff_(std::move(cutoff)) {
    Rational hmax = 0;
    for (size_t g = 0; g < R_.num_gens(); ++g) {
        if (!(R_.gen((int)g).weight > Rational(0)))
            throw error("EnvelopingVa: generator weights must be positive");
        hmax = std::max(hmax, R_.gen((int)g).weight, [](const Rational& x, const Rational& y) {
            return x < y;
        });
    }
    wint_ = internal_cutoff ? *internal_cutoff : cutoff_ * 2 + hmax + 2;
    if (wint_ < cutoff_) throw error("EnvelopingVa: internal cutoff below cutoff");

    // factors (g, n) with n <= -1 and weight h_g - n - 1 <= wint, in
    // canonical (mode, gen) order
    std::vector<PbwFactor> factors;
    std::vector<Rational> fw;
    for (size_t g = 0; g < R_.num_gens(); ++g)
        for (long k = 0;; ++k) {
            Rational w = R_.gen((int)g).weight + Rational(k);
            if (w > wint_) break;
            factors.push_back({(int)g, -1 - k});
        }
    std::sort(factors.begin(), factors.end());
    for (const auto& f : factors) fw.push_back(R_.gen(f.gen).weight - Rational(f.mode) - 1);

    PbwWord cur;
    std::function<void(size_t, Rational)> dfs = [&](size_t imin, Rational wt) {
        words_.push_back(cur);
        weights_.push_back(wt);
        for (size_t i = imin; i < factors.size(); ++i) {
            Rational nw = wt + fw[i];
            if (nw > wint_) continue;
            bool odd = R_.gen(factors[i].gen).parity == Parity::odd;
            cur.push_back(factors[i]);
            dfs(i + (odd ? 1 : 0), nw);
            cur.pop_back();
        }
    };
    dfs(0, 0);

    std::vector<int> order(words_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (!(weights_[a] == weights_[b])) return weights_[a] < weights_[b];
        return words_[a] < words_[b];
    });
    std::vector<PbwWord> w2;
    std::vector<Rational> wt2;
    for (int i : order) {
        w2.push_back(std::move(words_[i]));
        wt2.push_back(weights_[i]);
    }
    words_ = std::move(w2);
    weights_ = std::move(wt2);
    for (size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = (int)i;

    parities_.resize(words_.size());
    suffix_.resize(words_.size(), -1);
    for (size_t i = 0; i < words_.size(); ++i) {
        Parity p = Parity::even;
        for (const auto& f : words_[i]) p = p + R_.gen(f.gen).parity;
        parities_[i] = p;
        if (!words_[i].empty()) {
            PbwWord tail(words_[i].begin() + 1, words_[i].end());
            suffix_[i] = index_.at(tail);
        }
    }
    t_cache_.assign(words_.size(), std::nullopt);
}

std::string EnvelopingVa::basis_name(int idx) const {
    const PbwWord& w = words_[idx];
    std::string s;
    for (const auto& f : w) s += R_.gen(f.gen).name + "(" + std::to_string(f.mode) + ")";
    s += "|0>";
    return s;
}

int EnvelopingVa::word_index(const PbwWord& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

GradedVector EnvelopingVa::gen_state(int g) const {
    int idx = word_index({{g, -1}});
    if (idx < 0) throw error("gen_state: generator weight above the internal cutoff");
    return GradedVector::unit(idx);
}

GradedVector EnvelopingVa::apply_gen(int g, long n, int v) const {
    std::tuple<int, long, int> key{g, n, v};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = gen_cache_.find(key);
        if (it != gen_cache_.end()) return it->second;
    }
    GradedVector r = apply_gen_uncached(g, n, v);
    std::lock_guard<std::mutex> lock(mu_);
    return gen_cache_.emplace(key, std::move(r)).first->second;
}

GradedVector EnvelopingVa::apply_gen_uncached(int g, long n, int v) const {
    Rational wt = weights_[v] + R_.gen(g).weight - Rational(n) - 1;
    if (wt < Rational(0)) return {};
    if (wt > wint_) return GradedVector::cut();
    const PbwWord& w = words_[v];
    if (w.empty()) {
        if (n >= 0) return {};
        return GradedVector::unit(index_.at({{g, n}}));
    }
    PbwFactor head = w[0];
    int tail = suffix_[v];
    bool odd_g = R_.gen(g).parity == Parity::odd;
    if (n <= -1 &&
        (n < head.mode || (n == head.mode && (g < head.gen || (g == head.gen && !odd_g))))) {
        PbwWord nw = w;
        nw.insert(nw.begin(), {g, n});
        return GradedVector::unit(index_.at(nw));
    }
    GradedVector out;
    Rational zeta = supersign(R_.gen(g).parity, R_.gen(head.gen).parity);
    bool square = n == head.mode && g == head.gen && odd_g;
    if (!square) {
        GradedVector inner = apply_gen(g, n, tail);
        out += apply_gen(head.gen, head.mode, inner) * zeta;
    }
    // [g_n, head_m] tail via the commutator formula; the odd square is half
    // the (anti)bracket.
    Rational scale = square ? Rational(1, 2) : Rational(1);
    GradedVector tv = GradedVector::unit(tail);
    for (long j = 0; j < R_.pole_bound(g, head.gen); ++j) {
        Rational b = binom(Rational(n), j);
        if (b.is_zero()) continue;
        out += apply_elem(R_.singular(g, head.gen, j), n + head.mode - j, tv) * (b * scale);
    }
    return out;
}

GradedVector EnvelopingVa::apply_gen(int g, long n, const GradedVector& v) const {
    GradedVector out;
    out.truncated = v.truncated;
    for (const auto& [i, c] : v.c) out += apply_gen(g, n, i) * c;
    return out;
}

GradedVector EnvelopingVa::apply_elem(const ConfElem& e, long p, const GradedVector& v) const {
    GradedVector out;
    out.truncated = v.truncated && !(e.is_zero());
    for (const auto& [gl, c] : e.terms) {
        auto [u, l] = gl;
        Rational f = c * signed_power(l) * factorial(l) * binom(Rational(p), l);
        if (f.is_zero()) continue;
        out += apply_gen(u, p - l, v) * f;
    }
    if (!e.central.is_zero() && p == -1) out += v * (e.central * level_);
    return out;
}

GradedVector EnvelopingVa::mode_basis(int a, long n, int v) const {
    std::tuple<int, long, int> key{a, n, v};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mode_cache_.find(key);
        if (it != mode_cache_.end()) return it->second;
    }
    GradedVector r = mode_basis_uncached(a, n, v);
    std::lock_guard<std::mutex> lock(mu_);
    return mode_cache_.emplace(key, std::move(r)).first->second;
}

GradedVector EnvelopingVa::mode_basis_uncached(int a, long n, int v) const {
    const PbwWord& w = words_[a];
    if (w.empty()) return n == -1 ? GradedVector::unit(v) : GradedVector{};
    Rational wt_final = weights_[a] + weights_[v] - Rational(n) - 1;
    if (wt_final < Rational(0)) return {};
    if (wt_final > wint_) return GradedVector::cut();

    PbwFactor head = w[0];
    int rest = suffix_[a];
    long m = head.mode;
    Rational zeta = supersign(R_.gen(head.gen).parity, parities_[rest]);

    GradedVector out;
    // (g_(m) rest)_(n) v = sum_i (-1)^i binom(m,i) [ g_(m-i) (rest_(n+i) v)
    //   - zeta (-1)^m rest_(m+n-i) (g_(i) v) ]
    long s1 = mode_sup(weights_[rest], weights_[v]) - n;
    for (long i = 0; i <= s1; ++i) {
        Rational b = binom(Rational(m), i) * signed_power(i);
        if (b.is_zero()) continue;
        GradedVector inner = mode_basis(rest, n + i, v);
        if (coeff_is_zero(inner)) continue;
        out += apply_gen(head.gen, m - i, inner) * b;
    }
    long s2 = mode_sup(R_.gen(head.gen).weight, weights_[v]);
    Rational sgn = signed_power(m) * Rational(-1) * zeta;
    for (long i = 0; i <= s2; ++i) {
        Rational b = binom(Rational(m), i) * signed_power(i) * sgn;
        if (b.is_zero()) continue;
        GradedVector inner = apply_gen(head.gen, i, v);
        if (coeff_is_zero(inner)) continue;
        GradedVector rv;
        rv.truncated = inner.truncated;
        for (const auto& [iv, cv] : inner.c) rv += mode_basis(rest, m + n - i, iv) * cv;
        out += rv * b;
    }
    return out;
}

GradedVector EnvelopingVa::translate_basis(int v) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (t_cache_[v]) return *t_cache_[v];
    }
    GradedVector out;
    const PbwWord& w = words_[v];
    if (!w.empty()) {
        PbwFactor head = w[0];
        int rest = suffix_[v];
        out += apply_gen(head.gen, head.mode - 1, rest) * Rational(-head.mode);
        out += apply_gen(head.gen, head.mode, translate_basis(rest));
    }
    std::lock_guard<std::mutex> lock(mu_);
    t_cache_[v] = out;
    return out;
}

GradedVector EnvelopingVa::embed(const ConfElem& e) const {
    GradedVector out;
    for (const auto& [gl, c] : e.terms) {
        auto [u, l] = gl;
        int idx = word_index({{u, -1 - l}});
        if (idx < 0) {
            out.truncated = true;
            continue;
        }
        out.add(idx, c * factorial(l));
    }
    if (!e.central.is_zero()) out.add(vacuum(), e.central * level_);
    return out;
}

std::optional<ConfElem> EnvelopingVa::project(const GradedVector& v) const {
    ConfElem e;
    for (const auto& [i, c] : v.c) {
        const PbwWord& w = words_[i];
        if (w.empty()) {
            if (level_.is_zero()) return std::nullopt;
            e.central += c / level_;
        } else if (w.size() == 1) {
            long l = -1 - w[0].mode;
            e.terms[{w[0].gen, (int)l}] += c / factorial(l);
        } else {
            return std::nullopt;
        }
    }
    return e;
}

// ---------------------------------------------------------------------------
// CommutativeVa

CommutativeVa::CommutativeVa(long degree, Rational cutoff)
    : degree_(degree), cutoff_(std::move(cutoff)) {
    if (degree_ < 0) throw error("CommutativeVa: negative degree");
}

std::string CommutativeVa::basis_name(int idx) const {
    if (idx == 0) return "1";
    if (idx == 1) return "x";
    return "x^" + std::to_string(idx);
}

GradedVector CommutativeVa::mode_basis(int a, long n, int v) const {
    if (n >= 0) return {};
    long k = -1 - n;  // a_(n) b = T^(k)(a) b
    if (k > a) return {};
    long deg = a - k + v;
    if (deg > degree_) return GradedVector::cut();
    GradedVector out;
    out.add((int)deg, binom(Rational(a), k));
    return out;
}

GradedVector CommutativeVa::translate_basis(int v) const {
    GradedVector out;
    if (v > 0) out.add(v - 1, Rational(v));
    return out;
}

// ---------------------------------------------------------------------------
// TensorVa

TensorVa::TensorVa(std::shared_ptr<const Va> left, std::shared_ptr<const Va> right)
    : l_(std::move(left)), r_(std::move(right)) {
    if (!l_ || !r_) throw error("TensorVa: null factor");
}

Rational TensorVa::weight(int idx) const {
    auto [i, j] = unpair(idx);
    return l_->weight(i) + r_->weight(j);
}

Parity TensorVa::parity(int idx) const {
    auto [i, j] = unpair(idx);
    return l_->parity(i) + r_->parity(j);
}

std::string TensorVa::basis_name(int idx) const {
    auto [i, j] = unpair(idx);
    return l_->basis_name(i) + " (x) " + r_->basis_name(j);
}

GradedVector TensorVa::tensor(const GradedVector& a, const GradedVector& b) const {
    GradedVector out;
    out.truncated = a.truncated || b.truncated;
    for (const auto& [i, ca] : a.c)
        for (const auto& [j, cb] : b.c) out.add(pair_index(i, j), ca * cb);
    return out;
}

GradedVector TensorVa::mode_basis(int a, long n, int v) const {
    auto [ia, ja] = unpair(a);
    auto [iv, jv] = unpair(v);
    Rational koszul = supersign(r_->parity(ja), l_->parity(iv));
    GradedVector out;
    long mhi = l_->mode_sup(l_->weight(ia), l_->weight(iv));
    long mlo = n - 1 - r_->mode_sup(r_->weight(ja), r_->weight(jv));
    for (long m = mlo; m <= mhi; ++m) {
        GradedVector x = l_->mode_basis(ia, m, iv);
        if (coeff_is_zero(x)) continue;
        GradedVector y = r_->mode_basis(ja, n - 1 - m, jv);
        if (coeff_is_zero(y)) {
            out.truncated = out.truncated || x.truncated;
            continue;
        }
        out += tensor(x, y);
    }
    return out * koszul;
}

GradedVector TensorVa::translate_basis(int v) const {
    auto [i, j] = unpair(v);
    GradedVector tl = l_->translate_basis(i);
    GradedVector tr = r_->translate_basis(j);
    GradedVector out = tensor(tl, GradedVector::unit(j));
    out += tensor(GradedVector::unit(i), tr);
    return out;
}

// ---------------------------------------------------------------------------

std::map<Rational, long> partition_character(
    const std::vector<std::pair<Rational, bool>>& parts, const Rational& up_to) {
    std::map<Rational, long> dp;
    dp[0] = 1;
    for (const auto& [p, distinct] : parts) {
        std::map<Rational, long> next = dp;
        if (distinct) {
            for (const auto& [w, cnt] : dp)
                if (w + p <= up_to) next[w + p] += cnt;
        } else {
            // unbounded repetition: ascending accumulation over the new map
            for (auto it = next.begin(); it != next.end(); ++it) {
                Rational w = it->first + p;
                if (w <= up_to) next[w] += it->second;
            }
        }
        dp = std::move(next);
    }
    return dp;
}

}  // namespace opecalc

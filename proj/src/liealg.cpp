#include "opecalc/liealg.hpp"

namespace opecalc {

LiePresentation LiePresentation::abelian(const std::string& name, Parity parity,
                                         const Rational& self_pairing) {
    LiePresentation g;
    g.gens.push_back({name, parity});
    g.bracket = {{{}}};
    g.pairing = {{self_pairing}};
    g.validate();
    return g;
}

LiePresentation LiePresentation::sl2() {
    LiePresentation g;
    g.gens = {{"e", Parity::even}, {"h", Parity::even}, {"f", Parity::even}};
    auto E = 0, H = 1, F = 2;
    g.bracket.assign(3, std::vector<std::map<int, Rational>>(3));
    g.bracket[H][E] = {{E, 2}};
    g.bracket[E][H] = {{E, -2}};
    g.bracket[H][F] = {{F, -2}};
    g.bracket[F][H] = {{F, 2}};
    g.bracket[E][F] = {{H, 1}};
    g.bracket[F][E] = {{H, -1}};
    // Killing form scaled so the highest root has square length two.
    g.pairing.assign(3, std::vector<Rational>(3, 0));
    g.pairing[H][H] = 2;
    g.pairing[E][F] = 1;
    g.pairing[F][E] = 1;
    g.validate();
    return g;
}

void LiePresentation::validate() const {
    size_t n = gens.size();
    if (bracket.size() != n || pairing.size() != n)
        throw error("LiePresentation: shape mismatch");
    auto brk = [&](int i, int j) -> const std::map<int, Rational>& { return bracket[i][j]; };
    auto sign = [&](int i, int j) { return supersign(gens[i].parity, gens[j].parity); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // super skew-symmetry: [a,b] = -sign(a,b) [b,a]
            std::map<int, Rational> s = brk(i, j);
            for (const auto& [k, c] : brk(j, i)) {
                s[k] += sign(i, j) * c;
                if (s[k].is_zero()) s.erase(k);
            }
            if (!s.empty()) throw error("LiePresentation: bracket not skew-symmetric");
            // pairing symmetric and even
            if (pairing[i][j] != pairing[j][i])
                throw error("LiePresentation: pairing not symmetric");
            if (!pairing[i][j].is_zero() && gens[i].parity + gens[j].parity != Parity::even)
                throw error("LiePresentation: pairing not even");
        }
    auto brk_elem = [&](const std::map<int, Rational>& x, int j) {
        std::map<int, Rational> r;
        for (const auto& [i, c] : x)
            for (const auto& [k, d] : brk(i, j)) {
                r[k] += c * d;
                if (r[k].is_zero()) r.erase(k);
            }
        return r;
    };
    auto pair_elem = [&](const std::map<int, Rational>& x, int j) {
        Rational r = 0;
        for (const auto& [i, c] : x) r += c * pairing[i][j];
        return r;
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                // Leibniz form of the super Jacobi identity.
                std::map<int, Rational> lhs = brk_elem(brk(a, b), c);
                std::map<int, Rational> r1;
                for (const auto& [k, d] : brk(b, c))
                    for (const auto& [m, e] : brk(a, k)) {
                        r1[m] += d * e;
                        if (r1[m].is_zero()) r1.erase(m);
                    }
                for (const auto& [k, d] : brk(a, c))
                    for (const auto& [m, e] : brk(b, k)) {
                        r1[m] -= sign(a, b) * d * e;
                        if (r1[m].is_zero()) r1.erase(m);
                    }
                if (lhs != r1) throw error("LiePresentation: Jacobi identity fails");
                // invariance ([a,b],c) = (a,[b,c])
                Rational p1 = pair_elem(brk(a, b), c);
                Rational p2 = 0;
                for (const auto& [k, d] : brk(b, c)) p2 += pairing[a][k] * d;
                if (p1 != p2) throw error("LiePresentation: pairing not invariant");
            }
}

LocalLieAlgebra LocalLieAlgebra::superaffinize(LiePresentation g) {
    g.validate();
    return LocalLieAlgebra(Kind::superaffine, std::move(g));
}

LocalLieAlgebra LocalLieAlgebra::affinize(LiePresentation g) {
    g.validate();
    return LocalLieAlgebra(Kind::affine, std::move(g));
}

LocalLieAlgebra LocalLieAlgebra::clifford_affinize(LiePresentation v) {
    for (size_t i = 0; i < v.dim(); ++i)
        for (size_t j = 0; j < v.dim(); ++j)
            if (!v.bracket[i][j].empty())
                throw error("clifford_affinize: underlying space must be abelian");
    v.validate();
    return LocalLieAlgebra(Kind::clifford, std::move(v));
}

LocalLieAlgebra LocalLieAlgebra::virasoro() {
    return LocalLieAlgebra(Kind::virasoro, LiePresentation{});
}

Parity LocalLieAlgebra::parity(const LieSym& s) const {
    switch (s.kind) {
        case LieSym::current: return g_.gens[s.gen].parity;
        case LieSym::fermion: return g_.gens[s.gen].parity + Parity::odd;
        default: return Parity::even;
    }
}

bool LocalLieAlgebra::parity_homogeneous(const LieElement& e, Parity* out) const {
    bool first = true;
    Parity p = Parity::even;
    for (const auto& [s, c] : e) {
        (void)c;
        if (first) {
            p = parity(s);
            first = false;
        } else if (parity(s) != p) {
            return false;
        }
    }
    if (out) *out = p;
    return true;
}

LieElement lie_add(LieElement a, const LieElement& b, const Rational& s) {
    for (const auto& [k, c] : b) {
        a[k] += c * s;
        if (a[k].is_zero()) a.erase(k);
    }
    return a;
}

LieElement LocalLieAlgebra::bracket(const LieSym& a, const LieSym& b) const {
    LieElement r;
    auto add = [&r](LieSym s, const Rational& c) {
        if (c.is_zero()) return;
        r[s] += c;
        if (r[s].is_zero()) r.erase(s);
    };
    if (a.kind == LieSym::central || b.kind == LieSym::central) return r;
    if (kind_ == Kind::virasoro) {
        // [L_n, L_m] = (n-m) L_{n+m} + (n^3-n)/12 delta_{n+m,0} chat
        const Rational &n = a.mode, &m = b.mode;
        add({LieSym::vir, 0, n + m}, n - m);
        if ((n + m).is_zero()) add({LieSym::central, 0, 0}, (n * n * n - n) / Rational(12));
        return r;
    }
    auto structure = [&](int i, int j) -> const std::map<int, Rational>& {
        return g_.bracket[i][j];
    };
    if (a.kind == LieSym::current && b.kind == LieSym::current) {
        for (const auto& [k, c] : structure(a.gen, b.gen))
            add({LieSym::current, k, a.mode + b.mode}, c);
        if ((a.mode + b.mode).is_zero())
            add({LieSym::central, 0, 0}, a.mode * g_.pairing[a.gen][b.gen]);
    } else if (a.kind == LieSym::current && b.kind == LieSym::fermion) {
        for (const auto& [k, c] : structure(a.gen, b.gen))
            add({LieSym::fermion, k, a.mode + b.mode}, c);
    } else if (a.kind == LieSym::fermion && b.kind == LieSym::current) {
        // [a tensor t^{n-1/2} theta, b tensor t^m] picks up the sign of
        // moving the odd factor theta past b.
        Rational s = supersign(Parity::odd, g_.gens[b.gen].parity);
        for (const auto& [k, c] : structure(a.gen, b.gen))
            add({LieSym::fermion, k, a.mode + b.mode}, s * c);
    } else {  // fermion, fermion
        if ((a.mode + b.mode).is_zero())
            add({LieSym::central, 0, 0}, g_.pairing[b.gen][a.gen]);
    }
    return r;
}

LieElement LocalLieAlgebra::bracket(const LieElement& a, const LieElement& b) const {
    LieElement r;
    for (const auto& [sa, ca] : a)
        for (const auto& [sb, cb] : b) r = lie_add(std::move(r), bracket(sa, sb), ca * cb);
    return r;
}

LieElement LocalLieAlgebra::translate(const LieElement& e) const {
    LieElement r;
    for (const auto& [s, c] : e) {
        switch (s.kind) {
            case LieSym::central: break;
            case LieSym::current:
            case LieSym::fermion: {
                // T = -d/dt on a tensor t^n (resp. t^{m-1/2} theta)
                Rational f = s.kind == LieSym::current ? s.mode : s.mode - Rational(1, 2);
                if (!f.is_zero()) r = lie_add(std::move(r), {{{s.kind, s.gen, s.mode - 1}, 1}},
                                              c * (-f));
                break;
            }
            case LieSym::vir: {
                Rational f = -(s.mode + 1);
                if (!f.is_zero())
                    r = lie_add(std::move(r), {{{LieSym::vir, 0, s.mode - 1}, 1}}, c * f);
                break;
            }
        }
    }
    return r;
}

LieElement LocalLieAlgebra::jacobiator(const LieElement& x, const LieElement& y,
                                       const LieElement& z) const {
    Parity px, py;
    if (!parity_homogeneous(x, &px) || !parity_homogeneous(y, &py))
        throw error("jacobiator: inputs must be parity homogeneous");
    LieElement r = bracket(bracket(x, y), z);
    r = lie_add(std::move(r), bracket(x, bracket(y, z)), -1);
    r = lie_add(std::move(r), bracket(y, bracket(x, z)), supersign(px, py));
    return r;
}

std::string LocalLieAlgebra::render(const LieElement& e) const {
    if (e.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [sym, c] : e) {
        if (!first) s += " + ";
        first = false;
        s += c.str() + "*";
        switch (sym.kind) {
            case LieSym::central: s += kind_ == Kind::virasoro ? "c^" : "k^"; break;
            case LieSym::vir: s += "L(" + sym.mode.str() + ")"; break;
            case LieSym::current: s += g_.gens[sym.gen].name + "(" + sym.mode.str() + ")"; break;
            case LieSym::fermion:
                s += g_.gens[sym.gen].name + "~(" + sym.mode.str() + ")";
                break;
        }
    }
    return s;
}

long virasoro_cocycle_violations(long bound) {
    auto eps = [](long n, long m) -> Rational {
        if (n + m != 0) return 0;
        return Rational(n * n * n - n, 12);
    };
    auto wbrk = [](long n, long m) { return n - m; };  // [l_n, l_m] = (n-m) l_{n+m}
    long bad = 0;
    for (long n = -bound; n <= bound; ++n)
        for (long m = -bound; m <= bound; ++m)
            for (long k = -bound; k <= bound; ++k) {
                Rational v = Rational(wbrk(n, m)) * eps(n + m, k) -
                             Rational(wbrk(n, k)) * eps(n + k, m) +
                             Rational(wbrk(m, k)) * eps(m + k, n);
                if (!v.is_zero()) ++bad;
            }
    return bad;
}

}  // namespace opecalc

#include "opecalc/distribution.hpp"
#include "opecalc/formal.hpp"

#include "doctest.h"

#include <random>

using namespace opecalc;

namespace {

RDist zpow(const Rational& e, const Rational& c = 1) { return monomial(Var::z, e, c); }
RDist wpow(const Rational& e, const Rational& c = 1) { return monomial(Var::w, e, c); }

// Random Laurent polynomial in the given variables.
RDist random_laurent(std::mt19937_64& rng, const std::vector<Var>& vars, int nterms) {
    RDist d(vars);
    std::uniform_int_distribution<long> expo(-4, 4);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int t = 0; t < nterms; ++t) {
        ModeKey k;
        for (size_t i = 0; i < vars.size(); ++i) k.push_back(Rational(-expo(rng) - 1));
        d.add_term(k, coef(rng));
    }
    return d;
}

}  // namespace

TEST_CASE("residue picks the coefficient of z^-1") {
    CHECK(equal_on_common_window(zpow(-1).residue(Var::z), constant(1)));
    RDist d = zpow(2) + zpow(-2, 3);
    CHECK(d.residue(Var::z).empty());
    // res_z(delta(z,w) * w^3-free test): res_z(delta * a(z)) = a(w)
    RDist del = delta(Var::z, Var::w, -8, 8);
    RDist a = zpow(3) + zpow(-2, 5) + zpow(0, -7);
    RDist lhs = (del * a).residue(Var::z);
    RDist expect = wpow(3) + wpow(-2, 5) + wpow(0, -7);
    CHECK(equal_on_common_window(lhs, expect));
}

TEST_CASE("derivative follows the power rule, rational exponents included") {
    CHECK(equal_on_common_window(zpow(3).derivative(Var::z), zpow(2, 3)));
    // d^(2)/dz^2 z^{1/2} = binom(1/2,2) z^{-3/2}
    CHECK(equal_on_common_window(zpow(Rational(1, 2)).derivative(Var::z, 2),
                                 zpow(Rational(-3, 2), Rational(-1, 8))));
    CHECK(zpow(0).derivative(Var::z).empty());
}

TEST_CASE("monomial multiplication shifts exponents and windows") {
    CHECK(equal_on_common_window(zpow(-1).mul_monomial(Var::z, 1), constant(1)));
    CHECK(equal_on_common_window(zpow(Rational(1, 2)).mul_monomial(Var::z, Rational(1, 2)),
                                 zpow(1)));
}

TEST_CASE("delta eats test functions: w^h delta = z^h delta for integer h") {
    RDist del = delta(Var::z, Var::w, -10, 10);
    for (long h : {1L, 2L, -3L}) {
        RDist lhs = del.mul_monomial(Var::w, h);
        RDist rhs = del.mul_monomial(Var::z, h);
        CHECK(equal_on_common_window(lhs, rhs));
    }
}

TEST_CASE("delta multiplies like evaluation at z=w") {
    // delta(z,w) a(z,w) = delta(z,w) a(w,w) for Laurent polynomials
    std::mt19937_64 rng(99);
    RDist del = delta(Var::z, Var::w, -12, 12);
    for (int trial = 0; trial < 10; ++trial) {
        RDist a = random_laurent(rng, {Var::z, Var::w}, 5);
        RDist aww = a.substituted(Var::z, Var::w);
        CHECK(equal_on_common_window(del * a, del * aww));
    }
}

TEST_CASE("delta symmetry delta(z,w) = delta(w,z)") {
    RDist dzw = delta(Var::z, Var::w, -9, 9);
    // delta(w,z): sum z^n w^{-n-1} = relabel: build by swapping roles
    RDist dwz = delta(Var::w, Var::z, -9, 9);
    CHECK(equal_on_common_window(dzw, dwz));
}

TEST_CASE("derivative symmetry of delta: d_w delta = -d_z delta") {
    RDist del = delta(Var::z, Var::w, -10, 10);
    CHECK(equal_on_common_window(del.derivative(Var::w), -del.derivative(Var::z)));
}

TEST_CASE("(z-w) d_w^(n) delta = d_w^(n-1) delta inside the window") {
    RDist del = delta(Var::z, Var::w, -10, 10);
    RDist zmw = zpow(1) - wpow(1);
    for (long n : {1L, 2L, 3L}) {
        RDist lhs = zmw * del.derivative(Var::w, n);
        RDist rhs = del.derivative(Var::w, n - 1);
        CHECK(equal_on_common_window(lhs, rhs));
    }
    // and (z-w) delta = 0
    CHECK(zero_on_window(zmw * del));
}

TEST_CASE("expansion of (z-w)^{-n-1} has binom(m,n) coefficients") {
    for (long n = 0; n <= 5; ++n) {
        RDist e = expand_power(1, -1, Rational(-n - 1), Region::z_gt_w, Var::z, Var::w, 25);
        for (long m = 0; m <= 20; ++m) {
            // coefficient of w^{m-n} z^{-m-1}: modes w: -(m-n)-1, z: m
            const Rational* c = e.coeff({Rational(m), Rational(n - m - 1)});
            Rational expect = binom(Rational(m), n);
            if (expect.is_zero())
                CHECK(c == nullptr);
            else {
                REQUIRE(c != nullptr);
                CHECK(*c == expect);
            }
        }
    }
}

TEST_CASE("delta decomposes as the two-region difference of (z-w)^{-n-1}") {
    RDist del = delta(Var::z, Var::w, -12, 12);
    for (long n = -2; n <= 3; ++n) {
        // divided powers vanish for negative order
        RDist dn = n >= 0 ? del.derivative(Var::w, n) : RDist({Var::z, Var::w});
        RDist e1 = expand_power(1, -1, Rational(-n - 1), Region::z_gt_w, Var::z, Var::w, 30);
        RDist e2 = expand_power(1, -1, Rational(-n - 1), Region::w_gt_z, Var::z, Var::w, 30);
        std::map<Var, XInterval> box{{Var::z, {XRat(-9), XRat(9)}},
                                     {Var::w, {XRat(-9), XRat(9)}}};
        CHECK(equal_on_common_window(dn, e1 - e2, box));
    }
}

TEST_CASE("restrictions of the delta derivatives give single-region expansions") {
    RDist del = delta(Var::z, Var::w, -12, 12);
    for (long n = 0; n <= 3; ++n) {
        RDist dn = del.derivative(Var::w, n);
        RDist pos = dn.restricted_box(Var::z, XInterval::at_least(XRat(0)));
        RDist neg = dn.restricted_box(Var::z, XInterval::at_most(XRat(-1)));
        RDist e1 = expand_power(1, -1, Rational(-n - 1), Region::z_gt_w, Var::z, Var::w, 30);
        RDist e2 = expand_power(1, -1, Rational(-n - 1), Region::w_gt_z, Var::z, Var::w, 30);
        std::map<Var, XInterval> box{{Var::z, {XRat(-9), XRat(9)}},
                                     {Var::w, {XRat(-9), XRat(9)}}};
        CHECK(equal_on_common_window(pos, e1, box));
        CHECK(equal_on_common_window(neg, -e2, box));
    }
    CHECK(equal_on_common_window(del.restricted([](const ModeKey&) { return true; }), del));
}

TEST_CASE("three-variable delta identity delta(z,w+x) = delta(x,z-w) - delta(x,z-w)|w>z") {
    long B = 6;
    RDist lhs = delta_linear(Var::z, 1, 1, Var::w, Var::x, Region::z_gt_w, -B - 2, B + 2,
                             2 * B + 3);
    RDist r1 = delta_linear(Var::x, 1, -1, Var::z, Var::w, Region::z_gt_w, -B - 2, B + 2,
                            2 * B + 3);
    RDist r2 = delta_linear(Var::x, 1, -1, Var::z, Var::w, Region::w_gt_z, -B - 2, B + 2,
                            2 * B + 3);
    std::map<Var, XInterval> box{{Var::z, {XRat(-B), XRat(B)}},
                                 {Var::w, {XRat(-B), XRat(B)}},
                                 {Var::x, {XRat(-B), XRat(B)}}};
    CHECK(equal_on_common_window(lhs, r1 - r2, box));
}

TEST_CASE("diagonal evaluation") {
    RDist zw = zpow(2) * wpow(1);
    CHECK(equal_on_common_window(zw.substituted(Var::w, Var::z), zpow(3)));
    RDist zmw = zpow(1) - wpow(1);
    CHECK(zmw.substituted(Var::w, Var::z).empty());
    // truncated geometric-type sum: six equal contributions at z^-1
    RDist e = expand_power(1, -1, Rational(-1), Region::z_gt_w, Var::z, Var::w, 30);
    RDist t = e.restricted_box(Var::w, {XRat(-6), XRat(-1)});  // w-exponents 0..5
    t = t.restricted_box(Var::z, XInterval::all());
    RDist diag = t.substituted(Var::w, Var::z);
    const Rational* c = diag.coeff({Rational(0)});
    REQUIRE(c != nullptr);
    CHECK(*c == Rational(6));
}

TEST_CASE("non-summable diagonal is rejected") {
    RDist del = delta(Var::z, Var::w, -10, 10);
    CHECK_THROWS_AS(del.substituted(Var::w, Var::z), error);
}

TEST_CASE("taylor splitting of polynomials") {
    {
        auto ts = taylor_split(zpow(2), Var::z, Var::w, 2);
        CHECK(equal_on_common_window(ts.coeffs[0], wpow(2)));
        CHECK(equal_on_common_window(ts.coeffs[1], wpow(1, 2)));
        CHECK(equal_on_common_window(ts.remainder, constant(1).extended({Var::z, Var::w})));
    }
    {
        auto ts = taylor_split(zpow(1) * wpow(1), Var::z, Var::w, 1);
        CHECK(equal_on_common_window(ts.coeffs[0], wpow(2)));
        CHECK(equal_on_common_window(ts.remainder, wpow(1).extended({Var::z, Var::w})));
    }
    {
        RDist zmw = zpow(1) - wpow(1);
        RDist d = zmw * zmw * zmw;
        auto ts = taylor_split(d, Var::z, Var::w, 2);
        CHECK(ts.coeffs[0].empty());
        CHECK(ts.coeffs[1].empty());
        CHECK(equal_on_common_window(ts.remainder, zmw));
    }
    // c_n agrees with the divided derivative at z=w
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 8; ++trial) {
        RDist d = random_laurent(rng, {Var::z, Var::w}, 6);
        auto ts = taylor_split(d, Var::z, Var::w, 3);
        for (long n = 0; n < 3; ++n) {
            RDist expect = d.derivative(Var::z, n).substituted(Var::z, Var::w);
            CHECK(equal_on_common_window(ts.coeffs[n], expect));
        }
    }
}

TEST_CASE("integration by parts") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        RDist a = random_laurent(rng, {Var::z}, 4);
        RDist p = random_laurent(rng, {Var::z}, 3);
        RDist lhs = (a.derivative(Var::z) * p).residue(Var::z);
        RDist rhs = (a * p.derivative(Var::z)).residue(Var::z);
        CHECK(equal_on_common_window(lhs, -rhs));
    }
}

TEST_CASE("power map multiplies: (z-w)^h (z-w)^h' = (z-w)^{h+h'}") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Rational h(num(rng), den(rng));
        Rational hp(num(rng), den(rng));
        long T = 12;
        RDist a = expand_power(1, -1, h, Region::z_gt_w, Var::z, Var::w, T);
        RDist b = expand_power(1, -1, hp, Region::z_gt_w, Var::z, Var::w, T);
        RDist c = expand_power(1, -1, h + hp, Region::z_gt_w, Var::z, Var::w, T);
        CHECK(equal_on_common_window(a * b, c));
    }
}

TEST_CASE("expansions are compatible with d_w") {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Rational h(num(rng), den(rng));
        int nu = trial % 2 == 0 ? 1 : -1;
        RDist a = expand_power(1, nu, h, Region::z_gt_w, Var::z, Var::w, 12);
        RDist am1 = expand_power(1, nu, h - 1, Region::z_gt_w, Var::z, Var::w, 12);
        CHECK(equal_on_common_window(a.derivative(Var::w), am1.scaled(h * Rational(nu))));
    }
}

TEST_CASE("statistical two-variable-pair expansion") {
    // (z-w)^(1/2,-1/2): coefficient checks from the product formula
    RDist e = expand_power_pair(1, -1, Rational(1, 2), Rational(-1, 2), Region::z_gt_w, 8);
    // term i=(0,0): coeff 1 at z^{1/2} zbar^{-1/2}
    const Rational* c00 =
        e.coeff({Rational(-3, 2), Rational(-1, 2), Rational(-1), Rational(-1)});
    REQUIRE(c00 != nullptr);
    CHECK(*c00 == Rational(1));
    // term i=(1,0): binom(1/2,1)*(-1)^1 = -1/2 at z^{-1/2} zbar^{-1/2} w^1
    const Rational* c10 =
        e.coeff({Rational(-1, 2), Rational(-1, 2), Rational(-2), Rational(-1)});
    REQUIRE(c10 != nullptr);
    CHECK(*c10 == Rational(-1, 2));

    // purely polynomial case (1,1): 4 terms
    RDist p = expand_power_pair(1, -1, 1, 1, Region::z_gt_w, 8);
    CHECK(p.terms().size() == 4);

    // non-statistical pair rejected
    CHECK_THROWS_AS(expand_power_pair(1, -1, Rational(1, 2), Rational(0), Region::z_gt_w, 4),
                    error);
}

TEST_CASE("statistical sign law (-z+w)^h-pair = (-1)^{h-hbar} (z-w)^h-pair") {
    std::mt19937_64 rng(110);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Rational h(num(rng), den(rng));
        Rational hbar = h - Rational(std::uniform_int_distribution<long>(-3, 3)(rng));
        RDist a = expand_power_pair(-1, 1, h, hbar, Region::z_gt_w, 8);
        RDist b = expand_power_pair(1, -1, h, hbar, Region::z_gt_w, 8);
        CHECK(equal_on_common_window(a, b.scaled(signed_power(h - hbar))));
    }
}

TEST_CASE("statistical pair expansion factors through one-variable expansions") {
    std::mt19937_64 rng(220);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Rational h(num(rng), den(rng));
        Rational hbar = h - Rational(std::uniform_int_distribution<long>(-2, 2)(rng));
        RDist pair = expand_power_pair(1, -1, h, hbar, Region::z_gt_w, 8);
        RDist hol = expand_power(1, -1, h, Region::z_gt_w, Var::z, Var::w, 8);
        RDist anti = expand_power(1, -1, hbar, Region::z_gt_w, Var::zbar, Var::wbar, 8);
        CHECK(equal_on_common_window(pair, hol * anti));
    }
}

TEST_CASE("windows exclude over-truncation artifacts") {
    // multiplying two truncated expansions narrows the faithful window
    RDist a = expand_power(1, -1, Rational(-1), Region::z_gt_w, Var::z, Var::w, 5);
    RDist b = expand_power(1, -1, Rational(-2), Region::z_gt_w, Var::z, Var::w, 5);
    RDist prod = a * b;
    // w exponents are faithful only up to 5: w-mode >= -6
    CHECK(prod.window(Var::w).known.lo == XRat(-6));
    RDist c = expand_power(1, -1, Rational(-3), Region::z_gt_w, Var::z, Var::w, 5);
    std::map<Var, XInterval> box;  // no extra box: trust windows
    CHECK(equal_on_common_window(prod, c, box));
}

TEST_CASE("rendering is canonical") {
    RDist d = zpow(Rational(1, 2), Rational(3, 4)) + zpow(-2, -1);
    CHECK(render(d) == "3/4*z^1/2 + -1*z^-2");
    CHECK(render(RDist({Var::z})) == "0");
    RDist m = zpow(1) * wpow(-3, 2);
    CHECK(render(m) == "2*z^1*w^-3");
}

#include <doctest.h>

#include <cmath>

#include "lorentz/norms.hpp"
#include "lorentz/random.hpp"
#include "oracles.hpp"

using namespace lorentz;
using doctest::Approx;

namespace {
const StepFunction chi = StepFunction::indicator(0, 1);
const MonomialFunction phi({{0, 1, 2.0 / 3.0, 1.0 / 3.0}});
}  // namespace

TEST_CASE("exponent derived quantities") {
    Exponents e = Exponents::make(2, 4);
    CHECK(e.p_conj == Approx(2));
    CHECK(e.s_conj == Approx(4.0 / 3.0));
    CHECK(e.alpha == Approx(1.0 / 3.0));
    CHECK(e.c_ps == Approx(1.139754).epsilon(1e-6));
    CHECK(e.char_norm() == Approx(0.840896).epsilon(1e-6));
    CHECK(e.char_dual() == Approx(0.737788).epsilon(1e-6));

    Exponents inf = Exponents::make(2, kInfinity);
    CHECK(inf.s_infinite());
    CHECK(inf.s_conj == 1.0);
    CHECK(inf.alpha == Approx(0.5));
    CHECK(inf.c_ps == Approx(2.0));
    CHECK(inf.char_norm() == 1.0);

    CHECK(Exponents::make(3, 3).c_ps == Approx(1.0));
    CHECK_THROWS_AS(Exponents::make(1.0, 2), InvalidArgument);
    CHECK_THROWS_AS(Exponents::make(2, 0.5), InvalidArgument);
}

TEST_CASE("exponent text") {
    CHECK(parse_exponent("inf") == kInfinity);
    CHECK(parse_exponent("2.5") == 2.5);
    CHECK(format_exponent(kInfinity) == "inf");
    CHECK_THROWS_AS(parse_exponent("abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_exponent("2x"), InvalidArgument);
}

TEST_CASE("closed-form norm examples") {
    CHECK(lorentz_norm(chi, Exponents::make(2, 4)).value == Approx(std::pow(0.5, 0.25)).epsilon(1e-15));
    CHECK(lorentz_norm(phi, Exponents::make(2, 4)).value == Approx(std::pow(2.0 / 3.0, 0.75)).epsilon(1e-14));
    NormValue sup = lorentz_norm(StepFunction({{0, 1, 2}, {1, 2, 1}}), Exponents::make(2, kInfinity));
    CHECK(sup.value == Approx(2.0).epsilon(1e-15));
    CHECK(sup.method == NormMethod::supremum);
    CHECK(lorentz_norm(StepFunction({{0, 1, 3}, {1, 2, 1}}), Exponents::make(2, 2)).value ==
          Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(lorentz_norm(StepFunction{}, Exponents::make(2, 4)).value == 0.0);
}

TEST_CASE("divergent monomial is rejected") {
    // gamma = s (1/p - beta) <= 0 at a = 0.
    MonomialFunction bad({{0, 1, 1, 0.5}});
    CHECK_THROWS_AS(lorentz_norm(bad, Exponents::make(2, 4)), NotInSpace);
    // beta = 1/p, a > 0 takes the log branch.
    MonomialFunction log_piece({{1, std::exp(1.0), 1, 0.5}});
    CHECK(lorentz_integral(log_piece, Exponents::make(2, 4), 1, std::exp(1.0)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed form agrees with log-space quadrature") {
    for (const Exponents& e : exponent_grid()) {
        if (e.s_infinite()) continue;
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            Rng rng(seed * 31 + 7);
            StepFunction f = random_step(rng);
            double exact = std::pow(lorentz_norm(f, e).value, e.s);
            double quad = oracle::lorentz_norm_quadrature(f, e.p, e.s);
            INFO("p=" << e.p << " s=" << e.s << " seed=" << seed);
            CHECK(exact == Approx(quad).epsilon(1e-9));
        }
    }
}

TEST_CASE("s = inf norm matches a dense scan of t^{1/p} f*(t)") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        StepFunction f = rearrange(random_step(rng));
        double scan = 0.0;
        for (const auto& q : f.pieces()) scan = std::max(scan, std::pow(q.b, 0.5) * q.value);
        CHECK(lorentz_norm(f, Exponents::make(2, kInfinity)).value == Approx(scan).epsilon(1e-15));
    }
}

TEST_CASE("maximal norm") {
    NormValue m = maximal_norm(chi, Exponents::make(2, 4));
    CHECK(m.value == Approx(1.0).epsilon(1e-12));
    CHECK(m.est_abs_error <= 1e-9);
    CHECK(maximal_norm(StepFunction{}, Exponents::make(2, 4)).value == 0.0);
    NormValue sup = maximal_norm(StepFunction({{0, 1, 2}, {1, 2, 1}}), Exponents::make(2, kInfinity));
    CHECK(sup.value == Approx(1.5 * std::sqrt(2.0)).epsilon(1e-14));

    // Against Simpson on the oracle maximal function, in log space.
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        StepFunction f = random_step(rng);
        Exponents e = Exponents::make(3, 4);
        double b = f.support_end(), mass = f.total_mass();
        double head = oracle::simpson(
            [&](double x) { return std::pow(std::exp(x / e.p) * oracle::maximal_value(f, std::exp(x)), e.s); },
            std::log(1e-12), std::log(b), 200000);
        // Tail: f** = mass / t beyond b.
        double gamma = e.s * (1.0 / e.p - 1.0);
        double tail = std::pow(mass, e.s) * -std::pow(b, gamma) / gamma;
        CHECK(std::pow(maximal_norm(f, e).value, e.s) == Approx(head + tail).epsilon(1e-7));
    }
}

TEST_CASE("holder pairing example") {
    HolderResult h = holder_pairing(chi, chi, Exponents::make(2, 4));
    CHECK(h.pairing == Approx(1.0));
    CHECK(h.bound == Approx(1.139754).epsilon(1e-6));
    HolderResult z = holder_pairing(chi, StepFunction{}, Exponents::make(2, 4));
    CHECK(z.pairing == 0.0);
    CHECK(z.bound == 0.0);
}

TEST_CASE("pair integral of step and monomial") {
    CHECK(pair_integral(chi, phi) == Approx(1.0).epsilon(1e-14));
    CHECK(pair_integral(StepFunction::indicator(0, 2, 3), StepFunction::indicator(1, 3, 2)) == Approx(6.0));
}

TEST_CASE("cross index examples") {
    CrossIndexResult r = cross_index_check(chi, Exponents::make(2, 2), Exponents::make(2, 4));
    CHECK(r.lhs == Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(r.rhs == Approx(1.0).epsilon(1e-14));
    CrossIndexResult inf = cross_index_check(chi, Exponents::make(2, 2), Exponents::make(2, kInfinity));
    CHECK(inf.lhs == Approx(1.0));
    CHECK(inf.rhs == Approx(1.0));
    CrossIndexResult z = cross_index_check(StepFunction{}, Exponents::make(2, 2), Exponents::make(2, 4));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
}

TEST_CASE("limit in s") {
    LimitResult r = norm_limit_check(chi, 2, {4, 16, 256, 1024});
    REQUIRE(r.norms.size() == 4);
    CHECK(r.norms[0] == Approx(0.840896).epsilon(1e-6));
    CHECK(r.norms[1] == Approx(std::pow(2.0 / 16.0, 1.0 / 16.0)).epsilon(1e-13));
    CHECK(r.sup_norm == 1.0);
    CHECK(std::abs(r.norms.back() - 1.0) <= 0.02);
    LimitResult two = norm_limit_check(StepFunction({{0, 1, 2}, {1, 2, 1}}), 2, {1024});
    CHECK(two.sup_norm == Approx(2.0));
    CHECK(std::abs(two.norms[0] - 2.0) <= 0.04);
}

TEST_CASE("homogeneity and rearrangement invariance") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        StepFunction f = random_step(rng);
        for (const Exponents& e : {Exponents::make(1.5, 4), Exponents::make(3, 2), Exponents::make(2, kInfinity)}) {
            double n = lorentz_norm(f, e).value;
            for (double lam : {0.5, 2.0, 7.0}) CHECK(lorentz_norm(f.scaled(lam), e).value == Approx(lam * n).epsilon(1e-12));
            CHECK(lorentz_norm(rearrange(f), e).value == n);
        }
    }
}

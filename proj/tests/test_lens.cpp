#include <doctest.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "jcalc/error.hpp"
#include "jcalc/lens.hpp"
#include "oracles.hpp"

using namespace jcalc;

namespace {

std::string thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("hand-checked expansions") {
    CHECK(lens::even_cf(8, 1).coeffs == std::vector<Int>{-8});
    CHECK(lens::even_cf(8, 3).coeffs == std::vector<Int>{-2, 2, 2});
    CHECK(lens::even_cf(2, 1).coeffs == std::vector<Int>{-2});
}

TEST_CASE("reconstruction, parity and length for all even p <= 60") {
    for (long p = 2; p <= 60; p += 2) {
        for (long q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            auto cf = lens::even_cf(p, q);
            CHECK(cf.coeffs.size() % 2 == 1);
            for (const auto& a : cf.coeffs) {
                CHECK(a % 2 == 0);
                CHECK(abs(a) >= 2);
            }
            auto value = oracles::cf_eval(cf.coeffs);
            REQUIRE(value.has_value());
            Rat expect(-p, q);
            expect.canonicalize();
            CHECK(*value == expect);
        }
    }
}

TEST_CASE("chain matrix: tridiagonal, determinant p, H1 = Z/p") {
    for (long p = 2; p <= 60; p += 2) {
        for (long q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            auto cf = lens::even_cf(p, q);
            auto chain = lens::chain_matrix(cf);
            long n = chain.n();
            CHECK(n == static_cast<long>(cf.coeffs.size()));
            CHECK(chain.even());
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    if (i == j)
                        CHECK(chain.L.at(i, j) == cf.coeffs[static_cast<std::size_t>(i)]);
                    else if (i + 1 == j || j + 1 == i)
                        CHECK(chain.L.at(i, j) == 1);
                    else
                        CHECK(chain.L.at(i, j) == 0);
                }
            Int det = chain.L.determinant();
            CHECK(abs(det) == p);
            if (n <= 8) CHECK(det == oracles::cofactor_det(chain.L.mat()));
            CokernelMap coker(chain.L);
            CHECK(coker.group() == FinAbGroup{0, {p}});
        }
    }
}

TEST_CASE("rohlin pair: definition-level difference and kirby cross-check") {
    for (long p = 2; p <= 40; p += 2) {
        for (long q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            auto cf = lens::even_cf(p, q);
            auto pair = lens::rohlin_pair(p, q);
            CHECK(pair.first <= pair.second);
            CHECK(pair.first >= 0);
            CHECK(pair.second < 16);
            Int diff = pair.second - pair.first;
            Int s = lens::odd_index_sum(cf);
            bool match = mod_floor(diff - s, 16) == 0 || mod_floor(diff + s, 16) == 0 ||
                         mod_floor(-diff - s, 16) == 0 || mod_floor(-diff + s, 16) == 0;
            CHECK(match);

            // the two values are exactly the rohlin invariants of the chain
            auto chain = lens::chain_matrix(cf);
            auto spins = kirby::spin_structures(chain);
            REQUIRE(spins.size() == 2);
            std::vector<Int> mus;
            for (const auto& sp : spins) mus.push_back(kirby::rohlin(chain, sp));
            std::sort(mus.begin(), mus.end());
            CHECK(mus[0] == pair.first);
            CHECK(mus[1] == pair.second);
            // one of them is the zero-sublink value
            Int mu0 = kirby::rohlin(chain, kirby::SpinStructureRep{
                                               std::vector<std::uint8_t>(chain.n(), 0)});
            CHECK((mu0 == pair.first || mu0 == pair.second));
        }
    }
}

TEST_CASE("circle bundles: difference is +-p mod 16") {
    for (long p = 2; p <= 30; p += 2) {
        auto pair = lens::rohlin_pair(p, 1);
        Int diff = pair.second - pair.first;
        bool ok = mod_floor(diff - p, 16) == 0 || mod_floor(diff + p, 16) == 0 ||
                  mod_floor(-diff - p, 16) == 0 || mod_floor(-diff + p, 16) == 0;
        CHECK(ok);
    }
}

TEST_CASE("exception flag") {
    CHECK(lens::lens_exception(8, 1));
    CHECK(!lens::lens_exception(8, 3));
    CHECK(!lens::lens_exception(2, 1));
    CHECK(!lens::lens_exception(7, 3)); // odd p: never exceptional, no throw
    CHECK(!lens::lens_exception(0, 1));
    // definition-level: exceptional iff the odd-index sum is 8 mod 16
    for (long p = 2; p <= 30; p += 2)
        for (long q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            bool expect = mod_floor(lens::odd_index_sum(lens::even_cf(p, q)), 16) == 8;
            CHECK(lens::lens_exception(p, q) == expect);
        }
}

TEST_CASE("input validation and q normalization") {
    CHECK(thrown_code([] { lens::even_cf(7, 2); }) == "OddP");
    CHECK(thrown_code([] { lens::even_cf(8, 2); }) == "NotCoprime");
    CHECK(thrown_code([] { lens::even_cf(8, 4); }) == "NotCoprime");
    CHECK(!thrown_code([] { lens::even_cf(-2, 1); }).empty());
    CHECK(!thrown_code([] { lens::even_cf(0, 1); }).empty());

    CHECK(lens::even_cf(8, 11).coeffs == lens::even_cf(8, 3).coeffs);
    CHECK(lens::even_cf(8, -5).coeffs == lens::even_cf(8, 3).coeffs);
    CHECK(lens::rohlin_pair(8, 11) == lens::rohlin_pair(8, 3));
}

TEST_CASE("odd index sum convention (1-based odd positions)") {
    lens::EvenCF cf;
    cf.coeffs = {-2, 4, 6, 8, -10};
    CHECK(lens::odd_index_sum(cf) == Int(-2 + 6 - 10));
}

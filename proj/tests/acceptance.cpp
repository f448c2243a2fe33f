// Acceptance gate: one line per criterion, exit code = number of failures.
// Usage: acceptance <jcalc-cli> <example-doc.json> <example-doc.golden.json>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jcalc/embed.hpp"
#include "jcalc/error.hpp"
#include "jcalc/forms.hpp"
#include "jcalc/jspace.hpp"
#include "jcalc/kirby.hpp"
#include "jcalc/lens.hpp"
#include "jcalc/matrix.hpp"
#include "jcalc/smith.hpp"

using namespace jcalc;
using kirby::LinkingPresentation;
using kirby::SpinStructureRep;
using jspace::SurfaceData;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, double limit_s,
               const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
        body();
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verdict == "PASS" && limit_s > 0 && dt > limit_s) {
        verdict = "FAIL";
        std::ostringstream os;
        os << "exceeded " << limit_s << " s time limit";
        detail = os.str();
    }
    if (verdict == "FAIL") ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << "[" << verdict << "] #" << num << " " << name << " (" << dt << " s)";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

LinkingPresentation pres(const std::vector<std::vector<long>>& rows) {
    long n = static_cast<long>(rows.size());
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    LinkingPresentation p;
    p.L = IntSymMatrix(std::move(m));
    return p;
}

SpinStructureRep s0(long n) { return SpinStructureRep{std::vector<std::uint8_t>(n, 0)}; }

SurfaceData surf(std::vector<Int> a, std::vector<Int> t = {}) {
    SurfaceData f;
    f.a = std::move(a);
    f.twists = t.empty() ? std::vector<Int>(f.a.size(), 0) : std::move(t);
    return f;
}

long rand_in(std::mt19937_64& g, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
}

IntSymMatrix random_even_sym(std::mt19937_64& g, long n, long bound) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) {
        m.at(i, i) = 2 * rand_in(g, -(bound / 2), bound / 2);
        for (long j = i + 1; j < n; ++j) {
            long v = rand_in(g, -bound, bound);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return IntSymMatrix(std::move(m));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- criteria bodies -----------------------------------------------------

void crit_reference_values() {
    LinkingPresentation e;
    auto d = jspace::theta_tilde(e, s0(0), surf({}));
    require(d.theta == jspace::Residue(-2, 0), "theta of the standard empty class must be -2");
    require(jspace::act_J(d, -1).theta == jspace::Residue(2, 0),
            "theta of the mirror generator must be +2");
    require(kirby::rohlin(kirby::e8_presentation(), s0(8)) == 8, "rohlin of the E8 boundary");
    auto p0 = pres({{0}});
    for (const auto& s : kirby::spin_structures(p0))
        require(kirby::rohlin(p0, s) == 0, "rohlin of S2xS1 must vanish for both structures");
}

void crit_coset_law() {
    std::mt19937_64 g(20260819);
    int done = 0;
    while (done < 500) {
        long n = rand_in(g, 0, 8);
        LinkingPresentation p;
        p.L = random_even_sym(g, n, 6);
        std::vector<Int> a, t;
        for (long i = 0; i < n; ++i) {
            a.push_back(rand_in(g, -4, 4));
            t.push_back(rand_in(g, -3, 3));
        }
        auto d = jspace::theta_tilde(p, s0(n), surf(a, t));
        Int mu = kirby::rohlin(p, s0(n));
        Int want = mod_floor(2 * (1 + Int(d.ctx->inv.b1)) - mu, 4);
        require(mod_floor(d.theta.value, 4) == want, "theta must sit in the spin coset mod 4");
        ++done;
    }
}

void crit_zspace() {
    struct Case {
        LinkingPresentation p;
        SurfaceData f;
        Int div;
    };
    std::vector<Case> cases;
    cases.push_back({LinkingPresentation{}, surf({}), 0});
    cases.push_back({pres({{0}}), surf({2}), 4});
    cases.push_back({pres({{0, 0}, {0, 2}}), surf({3, 1}), 6});
    cases.push_back({kirby::e8_presentation(), surf(std::vector<Int>(8, 0)), 0});
    for (const auto& c : cases) {
        auto d = jspace::theta_tilde(c.p, s0(c.p.n()), surf(c.f.a, c.f.twists));
        require(d.orbit_order == c.div, "orbit order must equal div c1");
        for (long k = -3; k <= 3; ++k) {
            auto dj = jspace::act_J(d, k);
            require(dj.theta == jspace::Residue(d.theta.value - 4 * k, d.theta.modulus),
                    "J-action must shift theta by -4k");
            auto dw = jspace::act_omega(d, k);
            require(dw.theta == jspace::Residue(d.theta.value + 4 * k, d.theta.modulus),
                    "omega-action must shift theta by +4k");
            require(jspace::act_omega(dj, k) == d, "actions must invert each other");
        }
        long window = c.div == 0 ? 10 : 10 * static_cast<long>(c.div.get_si());
        std::set<std::string> seen;
        for (long i = 0; i < window; ++i)
            seen.insert(jspace::act_omega(d, i).theta.to_string());
        std::size_t want = c.div == 0 ? static_cast<std::size_t>(window)
                                      : static_cast<std::size_t>(c.div.get_si());
        require(seen.size() == want, "distinct theta values must exhaust the orbit");
    }
}

void crit_lens() {
    for (Int p = 2; p <= 30; p += 2) {
        for (Int q = 1; q < p; q = q + 1) {
            if (gcd(p, q) != 1) continue;
            auto cf = lens::even_cf(p, q);
            require(cf.coeffs.size() % 2 == 1, "expansion length must be odd");
            for (const auto& ai : cf.coeffs)
                require(ai != 0 && mod_floor(ai, 2) == 0, "coefficients must be even, nonzero");
            // reconstruct the fraction a_1 - 1/(a_2 - 1/(...))
            Rat v(cf.coeffs.back());
            for (std::size_t i = cf.coeffs.size() - 1; i-- > 0;)
                v = Rat(cf.coeffs[i]) - 1 / v;
            Rat want(-p, q);
            want.canonicalize();
            require(v == want, "continued fraction must reconstruct -p/q");

            auto chain = lens::chain_matrix(cf);
            Int det = chain.L.determinant();
            require(det == p || det == -p, "|det| of the chain must be p");

            auto pair = lens::rohlin_pair(p, q);
            Int diff = pair.second - pair.first;
            Int s = lens::odd_index_sum(cf);
            require(mod_floor(diff - s, 16) == 0 || mod_floor(diff + s, 16) == 0,
                    "rohlin difference must match the odd-index sum mod 16");
            if (q == 1)
                require(mod_floor(diff - p, 16) == 0 || mod_floor(diff + p, 16) == 0,
                        "circle-bundle difference must be +-p mod 16");
        }
    }
}

void crit_lattice() {
    std::mt19937_64 g(424242);
    // characteristic square law on unimodular forms of rank <= 8
    for (int t = 0; t < 60; ++t) {
        long rank = 0;
        std::vector<IntSymMatrix> blocks;
        std::vector<Int> c;
        while (true) {
            long pick = rand_in(g, 0, 2);
            long need = pick == 2 ? 2 : 1;
            if (rank + need > 8 || (rank >= 1 && rand_in(g, 0, 3) == 0)) break;
            if (pick == 0 || pick == 1) {
                IntMatrix one(1, 1);
                one.at(0, 0) = pick == 0 ? 1 : -1;
                blocks.push_back(IntSymMatrix(std::move(one)));
                c.push_back(1);
            } else {
                blocks.push_back(hyperbolic_form());
                c.push_back(0);
                c.push_back(0);
            }
            rank += need;
        }
        if (rank == 0) continue;
        IntMatrix big(rank, rank);
        long at = 0;
        for (const auto& b : blocks) {
            for (long i = 0; i < b.n(); ++i)
                for (long j = 0; j < b.n(); ++j) big.at(at + i, at + j) = b.at(i, j);
            at += b.n();
        }
        IntSymMatrix A(std::move(big));
        // characteristic vectors form a coset of 2 Z^n: perturb freely
        for (auto& ci : c) ci += 2 * rand_in(g, -3, 3);
        // random unimodular change of basis, tracked with its inverse
        IntMatrix V = IntMatrix::identity(rank), Vinv = IntMatrix::identity(rank);
        for (int ops = 0; ops < 3 * rank; ++ops) {
            long i = rand_in(g, 0, rank - 1), j = rand_in(g, 0, rank - 1);
            if (i == j) continue;
            Int lam = rand_in(g, -2, 2);
            for (long r = 0; r < rank; ++r) V.at(r, j) += lam * V.at(r, i);
            for (long cc = 0; cc < rank; ++cc) Vinv.at(i, cc) -= lam * Vinv.at(j, cc);
        }
        IntMatrix Am = V.transpose() * A.mat() * V;
        IntSymMatrix A2(std::move(Am));
        std::vector<Int> c2(static_cast<std::size_t>(rank), 0);
        for (long i = 0; i < rank; ++i)
            for (long j = 0; j < rank; ++j)
                c2[static_cast<std::size_t>(i)] += Vinv.at(i, j) * c[static_cast<std::size_t>(j)];
        require(is_characteristic(c2, A2), "transported vector must stay characteristic");
        require(mod_floor(char_square_defect(c2, A2), 8) == 0,
                "characteristic square defect must be 0 mod 8");
    }

    // classification round trip on indefinite unimodular descriptors
    for (int t = 0; t < 200; ++t) {
        FormDescriptor f;
        if (rand_in(g, 0, 1) == 0) {
            f.parity = FormDescriptor::Parity::Odd;
            f.b_plus = rand_in(g, 1, 20);
            f.b_minus = rand_in(g, 1, 20);
        } else {
            f.parity = FormDescriptor::Parity::Even;
            long h = rand_in(g, 1, 5), e = rand_in(g, -2, 2);
            f.b_plus = h + (e > 0 ? 8 * e : 0);
            f.b_minus = h + (e < 0 ? -8 * e : 0);
        }
        f.validate();
        auto parts = classify_indefinite(f);
        FormDescriptor back{0, 0, f.parity};
        for (const auto& s : parts) {
            switch (s.kind) {
            case SummandKind::PlusOne: back.b_plus += s.count; break;
            case SummandKind::MinusOne: back.b_minus += s.count; break;
            case SummandKind::Hyperbolic:
                back.b_plus += s.count;
                back.b_minus += s.count;
                break;
            case SummandKind::E8Plus: back.b_plus += 8 * s.count; break;
            case SummandKind::E8Minus: back.b_minus += 8 * s.count; break;
            }
        }
        require(back == f, "summand list must rebuild the descriptor");
    }

    // complement bookkeeping rejects signature defects mod 16
    bool threw = false;
    try {
        perp_complement(FormDescriptor{11, 3, FormDescriptor::Parity::Even},
                        FormDescriptor{1, 1, FormDescriptor::Parity::Even});
    } catch (const Error& e) {
        threw = std::string(e.code()) == "SignatureObstruction";
    }
    require(threw, "sigma defect 8 must raise SignatureObstruction");
    auto ok = perp_complement(FormDescriptor{19, 3, FormDescriptor::Parity::Even},
                              FormDescriptor{2, 2, FormDescriptor::Parity::Even});
    require(ok == FormDescriptor{17, 1, FormDescriptor::Parity::Even},
            "complement of (2,2) in (19,3) must be (17,1)");
}

void crit_construction() {
    std::mt19937_64 g(5150);
    std::vector<LinkingPresentation> bases;
    bases.push_back(LinkingPresentation{});
    bases.push_back(pres({{0}}));
    bases.push_back(kirby::with_hyperbolic_appended(LinkingPresentation{}));

    for (long m = 1; m <= 6; ++m) {
        bool spin_branch = m % 2 == 0;
        Int m_c = spin_branch ? m / 2 : m;
        for (const auto& base : bases) {
            auto inv = kirby::invariants(base);
            if (embed::spin_caveat(inv.H1, m) == embed::CaveatVerdict::Blocked) continue;
            long n = base.n();
            std::vector<Int> a;
            for (long i = 0; i < n; ++i) a.push_back(m_c * rand_in(g, -2, 2));
            auto d = jspace::theta_tilde(base, s0(n), surf(a));

            embed::TargetSurface x;
            x.simply_connected = true;
            x.div_c1 = m;
            x.spin = spin_branch;
            Int nM = embed::n_M(base);
            Int need = spin_branch ? nM + (m * m + 1) / 2 : nM + 2 * m * m;
            x.b_plus = need + rand_in(g, 0, 2);
            if (spin_branch) {
                x.b_minus = x.b_plus;
                x.c1_squared = 2 * m * m * rand_in(g, -1, 2);
            } else {
                x.b_minus = need + rand_in(g, 0, 2);
                x.c1_squared = m * m * (mod_floor(x.b_plus - x.b_minus, 8) + 8 * rand_in(g, -1, 1));
            }

            auto cert = embed::construct_plan(base, s0(n), surf(a), d, x);
            auto rep = embed::check_certificate(cert);
            if (!rep.ok)
                for (const auto& r : rep.records)
                    if (!r.pass)
                        throw std::runtime_error("certificate record '" + r.name +
                                                 "' failed: need " + r.required + "; got " +
                                                 r.actual);
            Int B = spin_branch ? m * m / 2 : 2 * m * m;
            require(cert.j >= 0 && cert.j < B, "tuning budget must stay below m^2/2 resp. 2m^2");
            require(cert.p_plus + cert.p_minus <= 10, "projective budget must stay at most 10");
            if (spin_branch)
                require(cert.p_plus + cert.p_minus == 0, "spin branch admits no projective summands");
        }
    }

    // spin caveat pair: torsion-shifted class blocked, plain class constructible
    auto p = pres({{0, 0}, {0, 2}});
    embed::TargetSurface x;
    x.simply_connected = true;
    x.spin = true;
    x.div_c1 = 4;
    x.b_plus = 19;
    x.b_minus = 19;
    x.c1_squared = 32;
    auto d_blocked = jspace::theta_tilde(p, s0(2), surf({2, 1}));
    bool threw = false;
    try {
        embed::construct_plan(p, s0(2), surf({2, 1}), d_blocked, x);
    } catch (const Error& e) {
        threw = std::string(e.code()) == "InfeasibleInput";
    }
    require(threw, "class with torsion part 1 must be rejected under the caveat");
    auto d_pass = jspace::theta_tilde(p, s0(2), surf({2, 0}));
    auto cert = embed::construct_plan(p, s0(2), surf({2, 0}), d_pass, x);
    require(embed::check_certificate(cert).ok, "torsion-free class must be constructible");
}

std::string g_cli, g_doc, g_golden;

void crit_cli_determinism() {
    std::string out1 = "/tmp/jcalc_accept_1.json";
    std::string out2 = "/tmp/jcalc_accept_2.json";
    for (const auto& [out, idx] : {std::pair{out1, 1}, std::pair{out2, 2}}) {
        std::string cmd =
            "'" + g_cli + "' --json --input '" + g_doc + "' > '" + out + "' 2>/dev/null";
        int rc = std::system(cmd.c_str());
        require(rc == 0, "cli run " + std::to_string(idx) + " must exit 0");
    }
    std::string a = read_file(out1), b = read_file(out2), gold = read_file(g_golden);
    require(!a.empty(), "cli output must be non-empty");
    require(a == b, "two runs must agree byte for byte");
    require(a == gold, "output must match the frozen golden file byte for byte");
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: acceptance <jcalc-cli> <doc.json> <golden.json>\n";
        return 2;
    }
    g_cli = argv[1];
    g_doc = argv[2];
    g_golden = argv[3];

    criterion(1, "reference-values", 1.0, crit_reference_values);
    criterion(2, "coset-law-500", 30.0, crit_coset_law);
    criterion(3, "zspace-structure", 0.0, crit_zspace);
    criterion(4, "lens-sweep", 5.0, crit_lens);
    criterion(5, "lattice-toolkit", 0.0, crit_lattice);
    criterion(6, "construction-roundtrip", 60.0, crit_construction);
    criterion(7, "cli-determinism", 0.0, crit_cli_determinism);

    std::cout << "acceptance: " << (7 - failures) << "/7 passed\n";
    return failures;
}

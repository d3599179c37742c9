#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <acsgeo/linalg.hpp>

#include <cmath>
#include <stdexcept>

using namespace acsgeo;

namespace {

CMatrix random_cmatrix(int n, Rng& rng) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(rng.gaussian(), rng.gaussian());
    return a;
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
    CMatrix a(2, 2);
    a(0, 0) = cplx(1, 2);
    a(0, 1) = cplx(0, -1);
    a(1, 0) = cplx(3, 0);
    a(1, 1) = cplx(-2, 1);

    CHECK(a.trace() == cplx(-1, 3));
    CHECK(a.transpose()(0, 1) == cplx(3, 0));
    CHECK(a.adjoint()(1, 0) == cplx(0, 1));
    CHECK(a.conjugate()(0, 0) == cplx(1, -2));
    CHECK(a.real_part()(1, 1) == cplx(-2, 0));
    CHECK(a.imag_part()(0, 0) == cplx(2, 0));
    CHECK(a.max_abs() == doctest::Approx(3.0));
    CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(1 + 4 + 1 + 9 + 4 + 1)));

    const CMatrix id = CMatrix::identity(2);
    CHECK(((a * id) - a).max_abs() == 0.0);
    CHECK(((id * a) - a).max_abs() == 0.0);
    CHECK(((a + a) - (cplx(2, 0) * a)).max_abs() == 0.0);
}

TEST_CASE("outer conjugates its second argument") {
    const CVector u{cplx(1, 1), cplx(0, 2)};
    const CVector v{cplx(2, -1), cplx(0, 1)};
    const CMatrix m = CMatrix::outer(u, v);
    // entry (i,j) = u_i * conj(v_j)
    CHECK(std::abs(m(0, 0) - cplx(1, 1) * cplx(2, 1)) == doctest::Approx(0.0));
    CHECK(std::abs(m(1, 1) - cplx(0, 2) * cplx(0, -1)) == doctest::Approx(0.0));
}

TEST_CASE("commutator antisymmetry and traceless") {
    Rng rng(7);
    const CMatrix a = random_cmatrix(4, rng), b = random_cmatrix(4, rng);
    const CMatrix c = commutator(a, b);
    CHECK((c + commutator(b, a)).max_abs() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(c.trace()) < 1e-12);
}

TEST_CASE("inverse and solve") {
    CMatrix a(2, 2);
    a(0, 0) = cplx(2, 0);
    a(0, 1) = cplx(1, 1);
    a(1, 0) = cplx(0, -1);
    a(1, 1) = cplx(3, 0);
    const CMatrix ainv = inverse(a);
    CHECK(((a * ainv) - CMatrix::identity(2)).max_abs() < 1e-14);

    Rng rng(11);
    const CMatrix m = random_cmatrix(5, rng);
    CHECK(((m * inverse(m)) - CMatrix::identity(5)).max_abs() < 1e-10);

    const CVector rhs = rng.gaussian_cvec(5);
    const CVector x = solve(m, rhs);
    CHECK(vec_norm((m * x) - rhs) < 1e-10);

    CMatrix sing(2, 2);
    sing(0, 0) = cplx(1, 0);
    sing(0, 1) = cplx(2, 0);
    sing(1, 0) = cplx(2, 0);
    sing(1, 1) = cplx(4, 0);
    CHECK_THROWS_AS((void)inverse(sing), std::runtime_error);
}

TEST_CASE("hermitian dot conjugates the second slot") {
    const CVector u{cplx(0, 1)};
    const CVector v{cplx(1, 0)};
    CHECK(hermitian_dot(u, v) == cplx(0, 1));
    CHECK(hermitian_dot(v, u) == cplx(0, -1));
    CHECK(bilinear_dot(u, v) == cplx(0, 1));

    Rng rng(3);
    const CVector a = rng.gaussian_cvec(4), b = rng.gaussian_cvec(4);
    CHECK(std::abs(hermitian_dot(a, b) - std::conj(hermitian_dot(b, a))) < 1e-14);
    CVector bconj = b;
    for (auto& z : bconj) z = std::conj(z);
    CHECK(std::abs(hermitian_dot(a, b) - bilinear_dot(a, bconj)) < 1e-14);
    CHECK(vec_norm(a) == doctest::Approx(std::sqrt(hermitian_dot(a, a).real())));
}

TEST_CASE("gram schmidt produces an orthonormal spanning set") {
    Rng rng(5);
    std::vector<CVector> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(rng.gaussian_cvec(5));
    // duplicate direction should be dropped
    vs.push_back(cplx(2.5, -1.0) * vs[0]);

    const auto on = gram_schmidt_hermitian(vs, gram_schmidt_drop_tol(vs));
    REQUIRE(on.size() == 3);
    for (size_t i = 0; i < on.size(); ++i)
        for (size_t j = 0; j < on.size(); ++j) {
            const cplx g = hermitian_dot(on[i], on[j]);
            CHECK(std::abs(g - (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-12);
        }

    // same span: projectors onto span(vs) and span(on) agree
    CMatrix proj(5, 5);
    for (const auto& w : on) proj += CMatrix::outer(w, w);
    for (const auto& v : vs) {
        CVector pv(5, cplx(0, 0));
        pv = proj * v;
        CHECK(vec_norm(pv - v) < 1e-12 * (1.0 + vec_norm(v)));
    }
}

TEST_CASE("block split against an idempotent") {
    Rng rng(9);
    const CVector w = rng.gaussian_cvec(3);
    CMatrix p = CMatrix::outer(w, w);
    p = (cplx(1, 0) / hermitian_dot(w, w)) * p;  // rank-1 orthogonal projector
    const CMatrix t = random_cmatrix(3, rng);
    const auto [b, c] = block_split(p, t);
    const CMatrix q = CMatrix::identity(3) - p;
    CHECK(((p * b) - b).max_abs() < 1e-13);
    CHECK((b * p).max_abs() < 1e-13);
    CHECK((p * c).max_abs() < 1e-13);
    CHECK(((c * p) - c).max_abs() < 1e-13);
    CHECK(((q * c) - c).max_abs() < 1e-13);
    CHECK(((b + c) - (p * t * q + q * t * p)).max_abs() < 1e-13);
}

TEST_CASE("restricted trace on an invariant subspace") {
    // A = diag(3,4,9) with a coupling inside span(e1,e2) only
    CMatrix a(3, 3);
    a(0, 0) = cplx(3, 0);
    a(0, 1) = cplx(1, 0);
    a(1, 0) = cplx(1, 0);
    a(1, 1) = cplx(4, 0);
    a(2, 2) = cplx(9, 0);
    const CVector e1{cplx(1, 0), cplx(0, 0), cplx(0, 0)};
    const CVector e2{cplx(0, 0), cplx(1, 0), cplx(0, 0)};
    const std::vector<CVector> basis{e1, e2};
    CHECK(std::abs(restricted_trace(a, basis) - cplx(7, 0)) < 1e-14);

    // invariant under unitary rotation of the basis
    const double th = 0.37;
    const std::vector<CVector> rotated{
        cplx(std::cos(th), 0) * e1 + cplx(0, std::sin(th)) * e2,
        cplx(0, std::sin(th)) * e1 + cplx(std::cos(th), 0) * e2};
    CHECK(std::abs(restricted_trace(a, rotated) - cplx(7, 0)) < 1e-13);

    // non-orthonormal basis rejected
    const std::vector<CVector> skew{e1, cplx(0.5, 0) * e1 + e2};
    CHECK_THROWS_AS((void)restricted_trace(a, skew), std::runtime_error);

    // basis span not preserved by A rejected
    CMatrix leak = a;
    leak(2, 0) = cplx(1, 0);
    CHECK_THROWS_AS((void)restricted_trace(leak, basis), std::runtime_error);
}

TEST_CASE("symmetric eigenvalues") {
    CMatrix s(2, 2);
    s(0, 0) = cplx(2, 0);
    s(0, 1) = cplx(1, 0);
    s(1, 0) = cplx(1, 0);
    s(1, 1) = cplx(2, 0);
    const auto ev = symmetric_eigenvalues(s);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));

    Rng rng(13);
    CMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double v = rng.gaussian();
            m(i, j) = cplx(v, 0);
            m(j, i) = cplx(v, 0);
        }
    const auto evs = symmetric_eigenvalues(m);
    double sum = 0;
    for (double e : evs) sum += e;
    CHECK(sum == doctest::Approx(m.trace().real()).epsilon(1e-10));
}

TEST_CASE("rng streams are deterministic and in range") {
    Rng a(42), b(42), c(43);
    bool same = true, differs = false;
    for (int i = 0; i < 64; ++i) {
        const double x = a.uniform(), y = b.uniform(), z = c.uniform();
        same = same && (x == y);
        differs = differs || (x != z);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(same);
    CHECK(differs);

    Rng d(1);
    for (int i = 0; i < 32; ++i) {
        const double u = d.uniform(-2.0, 5.0);
        CHECK(u >= -2.0);
        CHECK(u < 5.0);
    }
    CHECK(d.gaussian_vec(6).size() == 6);
    CHECK(d.gaussian_cvec(4).size() == 4);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <acsgeo/fields.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace acsgeo;

namespace {

std::string write_temp(const std::string& tag, const std::string& body) {
    const std::string path = "/tmp/acsgeo_test_" + tag + ".txt";
    std::ofstream out(path);
    out << body;
    return path;
}

RVector basis7(int i) {
    RVector e(7, 0.0);
    e[i] = 1.0;
    return e;
}

}  // namespace

TEST_CASE("polynomial evaluation and derivatives") {
    // f = 2 - x y + 3 x^2
    const Poly2 f{{0, 0, 2.0}, {1, 1, -1.0}, {2, 0, 3.0}};
    CHECK(f.eval(2.0, 1.0) == doctest::Approx(2.0 - 2.0 + 12.0));
    CHECK(f.degree() == 2);
    CHECK(f.ddx().eval(2.0, 1.0) == doctest::Approx(-1.0 + 12.0));
    CHECK(f.ddy().eval(2.0, 1.0) == doctest::Approx(-2.0));
    CHECK(Poly2::constant(5.0).eval(-3.0, 7.0) == 5.0);
    CHECK(Poly2::constant(5.0).ddx().eval(1.0, 1.0) == 0.0);
}

TEST_CASE("coefficient file parsing") {
    const std::string good =
        "# pullback test data\n"
        "f\n"
        "0 0 1.5\n"
        "1 0 -2\n"
        "\n"
        "g\n"
        "0 1 0.25\n";
    const auto [f, g] = parse_fg_coeffs(write_temp("good", good));
    CHECK(f.eval(1.0, 0.0) == doctest::Approx(-0.5));
    CHECK(g.eval(0.0, 2.0) == doctest::Approx(0.5));

    CHECK_THROWS_AS((void)parse_fg_coeffs("/tmp/acsgeo_no_such_file.txt"),
                    std::runtime_error);
    CHECK_THROWS_AS((void)parse_fg_coeffs(write_temp("nosec", "0 0 1\n")),
                    std::runtime_error);
    CHECK_THROWS_AS((void)parse_fg_coeffs(write_temp("fonly", "f\n0 0 1\n")),
                    std::runtime_error);
    CHECK_THROWS_AS((void)parse_fg_coeffs(write_temp("badline", "f\n0 x 1\ng\n0 0 1\n")),
                    std::runtime_error);
    CHECK_THROWS_AS(
        (void)parse_fg_coeffs(write_temp("trail", "f\n0 0 1 9\ng\n0 0 1\n")),
        std::runtime_error);
}

TEST_CASE("octonion basis products") {
    auto expect = [](int i, int j, int k, int s) {
        const BasisProduct p = octonion_basis_product(i, j);
        CHECK(p.index == k);
        CHECK(p.sign == s);
    };
    // the seven quaternionic triples of the multiplication table
    expect(1, 2, 3, +1);
    expect(1, 4, 5, +1);
    expect(2, 4, 6, +1);
    expect(3, 4, 7, +1);
    expect(2, 5, 7, +1);
    expect(3, 6, 5, +1);
    expect(1, 7, 6, +1);
    // cyclic and anticommuted instances
    expect(2, 3, 1, +1);
    expect(5, 3, 6, +1);
    expect(2, 1, 3, -1);
    // unit and squares
    expect(0, 5, 5, +1);
    expect(5, 0, 5, +1);
    expect(4, 4, 0, -1);
}

TEST_CASE("seven dimensional cross product") {
    // indices 0..6 correspond to the imaginary units e1..e7
    const RVector c = octonion_cross(basis7(0), basis7(1));
    CHECK(norm(c - basis7(2)) == 0.0);

    Rng rng(21);
    const RVector p = normalized(rng.gaussian_vec(7));
    const RVector v = rng.gaussian_vec(7);
    // p x (p x v) = -v + <p,v> p for unit p
    const RVector lhs = octonion_cross(p, octonion_cross(p, v));
    const RVector rhs = -1.0 * v + dot(p, v) * p;
    CHECK(norm(lhs - rhs) < 1e-12);
    // orthogonality and antisymmetry
    CHECK(std::abs(dot(octonion_cross(p, v), p)) < 1e-12);
    CHECK(norm(octonion_cross(v, p) + octonion_cross(p, v)) < 1e-12);
}

TEST_CASE("registry fields satisfy the structure equations") {
    for (const char* name : {"octonionic-s6", "standard-s2", "example-2-4",
                             "conjugated-s6"}) {
        const AcsField f = make_field(name);
        const ValidationResult r = validate(f, 100, 2024);
        INFO(name);
        CHECK(r.pass);
    }
    const AcsField fg = make_field(
        "stereo-fg", FieldOptions{{{Poly2{{1, 0, 1.0}}, Poly2::constant(1.0)}}, 0.2});
    CHECK(validate(fg, 100, 2024).pass);

    CHECK_THROWS_AS((void)make_field("no-such-field"), std::runtime_error);
}

TEST_CASE("octonionic structure at a basis point") {
    const AcsField f = octonionic_s6();
    const CMatrix j = f.J(basis7(0));  // p = e1
    // J e2 = e1 x e2 = e3
    CHECK(norm(mul_real(j, basis7(1)) - basis7(2)) < 1e-14);
    // J^2 = -(I - p p^T)
    const CMatrix pi = field_projector(f, basis7(0));
    CHECK(((j * j) + pi).max_abs() < 1e-14);
    CHECK(f.orthogonal_hint);
    CHECK(is_orthogonal(f, 50, 7));
}

TEST_CASE("conjugated field is non-orthogonal but still a structure") {
    const AcsField f = make_field("conjugated-s6");
    CHECK_FALSE(f.orthogonal_hint);
    CHECK_FALSE(is_orthogonal(f, 50, 7));
    // eps = 0 recovers the octonionic field
    const AcsField f0 = conjugated_s6(0.0, 777);
    const AcsField oct = octonionic_s6();
    Rng rng(30);
    const RVector p = random_point(oct, rng);
    CHECK((f0.J(p) - oct.J(p)).max_abs() < 1e-14);
}

TEST_CASE("rotation structure on the two sphere") {
    const AcsField f = standard_s2();
    const RVector n{0, 0, 1};
    const CMatrix j = f.J(n);
    CHECK(norm(mul_real(j, RVector{1, 0, 0}) - RVector{0, 1, 0}) < 1e-14);
    CHECK(is_orthogonal(f, 50, 7));
}

TEST_CASE("planar example matrices") {
    const CMatrix j = example24_j(RVector{2.0, 0.5});
    CHECK(std::abs(j(0, 1) - cplx(2, 0)) < 1e-15);
    CHECK(std::abs(j(1, 0) - cplx(-0.5, 0)) < 1e-15);
    CHECK(std::abs(j(0, 0)) == 0.0);
    CHECK_THROWS_AS((void)example24_j(RVector{0.0, 1.0}), std::runtime_error);

    const AcsField f = example_2_4();
    CHECK_FALSE(f.on_sphere());
    CHECK_FALSE(is_orthogonal(f, 50, 7));
    REQUIRE(static_cast<bool>(f.in_domain));
    CHECK_FALSE(f.in_domain(RVector{0.0, 0.3}));
}

TEST_CASE("stereographic polynomial structure") {
    const Poly2 one = Poly2::constant(1.0);
    const CMatrix j = stereo_fg_j(one, one, RVector{0.3, -0.7});
    CHECK(std::abs(j(0, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(j(0, 1) - cplx(-2, 0)) < 1e-15);
    CHECK(std::abs(j(1, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(j(1, 1) - cplx(-1, 0)) < 1e-15);
    CHECK(((j * j) + CMatrix::identity(2)).max_abs() < 1e-14);

    // det J = f(-f) + (1+f^2) = 1 for any admissible f, g
    const Poly2 f{{0, 0, 0.5}, {1, 0, 1.0}, {0, 2, -0.25}};
    const Poly2 g{{0, 0, 1.0}, {1, 1, 0.5}};
    const CMatrix j2 = stereo_fg_j(f, g, RVector{0.4, 0.6});
    const cplx det = j2(0, 0) * j2(1, 1) - j2(0, 1) * j2(1, 0);
    CHECK(std::abs(det - cplx(1, 0)) < 1e-13);

    CHECK_THROWS_AS((void)stereo_fg_j(one, Poly2::constant(0.0), RVector{0, 0}),
                    std::runtime_error);
}

TEST_CASE("eigenspace projectors") {
    const AcsField f = octonionic_s6();
    Rng rng(14);
    const RVector p = random_point(f, rng);
    const CMatrix pm = p_minus(f, p), pp = p_plus(f, p);
    const CMatrix pi = field_projector(f, p);
    CHECK(((pm + pp) - pi).max_abs() < 1e-13);
    CHECK((pm * pp).max_abs() < 1e-13);
    CHECK(((pm * pm) - pm).max_abs() < 1e-13);
    // a tangent z + i J z lies in the -i eigenspace
    const RVector z = random_unit_tangent(f, p, rng);
    const CVector wz = to_complex(z) + cplx(0, 1) * (f.J(p) * to_complex(z));
    CHECK(vec_norm((pm * wz) - wz) < 1e-13);
    CHECK(vec_norm(pp * wz) < 1e-13);
}

TEST_CASE("antiholomorphic frame at the poles") {
    const AcsField f = standard_s2();
    const double r = 1.0 / std::sqrt(2.0);

    const T01Basis north = t01_basis(f, RVector{0, 0, 1});
    REQUIRE(north.w.size() == 1);
    CHECK(std::abs(north.w[0][0] - cplx(r, 0)) < 1e-12);
    CHECK(std::abs(north.w[0][1] - cplx(0, r)) < 1e-12);
    CHECK(norm(north.z[0] - RVector{r, 0, 0}) < 1e-12);

    const T01Basis south = t01_basis(f, RVector{0, 0, -1});
    REQUIRE(south.w.size() == 1);
    CHECK(std::abs(south.w[0][0] - cplx(r, 0)) < 1e-12);
    CHECK(std::abs(south.w[0][1] - cplx(0, -r)) < 1e-12);
}

TEST_CASE("antiholomorphic frame on the planar example") {
    const AcsField f = example_2_4();
    const T01Basis b = t01_basis(f, RVector{2.0, 0.0});
    REQUIRE(b.w.size() == 1);
    const double s = std::sqrt(5.0);
    CHECK(std::abs(b.w[0][0] - cplx(2.0 / s, 0)) < 1e-12);
    CHECK(std::abs(b.w[0][1] - cplx(0, -1.0 / s)) < 1e-12);

    // frame dimension on the six sphere
    const AcsField o = octonionic_s6();
    Rng rng(8);
    const RVector p = random_point(o, rng);
    const T01Basis b6 = t01_basis(o, p);
    CHECK(b6.w.size() == 3);
    // scaled-metric orthonormality (scale 1 on spheres)
    for (size_t i = 0; i < b6.w.size(); ++i)
        for (size_t j = 0; j < b6.w.size(); ++j)
            CHECK(std::abs(hermitian_dot(b6.w[i], b6.w[j]) -
                           (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-12);
}

TEST_CASE("seeded sampling respects the domain") {
    const AcsField f = example_2_4();
    Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        const RVector p = random_point(f, rng);
        CHECK(p[0] >= f.sample_box[0]);
        CHECK(p[0] <= f.sample_box[1]);
        CHECK(f.in_domain(p));
    }
    const AcsField o = octonionic_s6();
    const RVector q = random_point(o, rng);
    CHECK(norm(q) == doctest::Approx(1.0));
    const RVector x = random_unit_tangent(o, q, rng);
    CHECK(norm(x) == doctest::Approx(1.0));
    CHECK(std::abs(dot(q, x)) < 1e-12);
}

TEST_CASE("metric scale") {
    const AcsField o = octonionic_s6();
    CHECK(metric_scale(o, RVector{1, 0, 0, 0, 0, 0, 0}) == 1.0);
    const AcsField e = example_2_4();
    CHECK(metric_scale(e, RVector{2.0, 0.3}) == 1.0);
    const Poly2 one = Poly2::constant(1.0);
    const AcsField s = stereo_fg(Poly2::constant(0.0), one);
    // h = (1 + x^2 + y^2)^{-2}
    CHECK(metric_scale(s, RVector{0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(metric_scale(s, RVector{1.0, 0.0}) == doctest::Approx(0.25));
}

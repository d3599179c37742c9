#include "acsgeo/fields.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace acsgeo {

double Poly2::eval(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms) {
        double m = t.c;
        for (int k = 0; k < t.dx; ++k) m *= x;
        for (int k = 0; k < t.dy; ++k) m *= y;
        s += m;
    }
    return s;
}

Poly2 Poly2::ddx() const {
    Poly2 r;
    for (const auto& t : terms)
        if (t.dx > 0) r.terms.push_back({t.dx - 1, t.dy, t.c * t.dx});
    return r;
}

Poly2 Poly2::ddy() const {
    Poly2 r;
    for (const auto& t : terms)
        if (t.dy > 0) r.terms.push_back({t.dx, t.dy - 1, t.c * t.dy});
    return r;
}

int Poly2::degree() const {
    int d = 0;
    for (const auto& t : terms)
        if (t.c != 0.0) d = std::max(d, t.dx + t.dy);
    return d;
}

std::pair<Poly2, Poly2> parse_fg_coeffs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fg-coeffs: cannot open " + path);
    Poly2 f, g;
    Poly2* cur = nullptr;
    std::string line;
    int lineno = 0;
    bool saw_f = false, saw_g = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "f" || first == "g") {
            std::string extra;
            if (ls >> extra)
                throw std::runtime_error("fg-coeffs: trailing tokens on section line " +
                                         std::to_string(lineno));
            cur = (first == "f") ? &f : &g;
            (first == "f" ? saw_f : saw_g) = true;
            continue;
        }
        if (!cur)
            throw std::runtime_error("fg-coeffs: data before a section header at line " +
                                     std::to_string(lineno));
        int dx = 0, dy = 0;
        double c = 0.0;
        std::istringstream ds(line);
        if (!(ds >> dx >> dy >> c) || dx < 0 || dy < 0)
            throw std::runtime_error("fg-coeffs: expected \"xdeg ydeg coeff\" at line " +
                                     std::to_string(lineno));
        std::string extra;
        if (ds >> extra)
            throw std::runtime_error("fg-coeffs: trailing tokens at line " +
                                     std::to_string(lineno));
        cur->terms.push_back({dx, dy, c});
    }
    if (!saw_f || !saw_g)
        throw std::runtime_error("fg-coeffs: file must contain both f and g sections");
    return {f, g};
}

namespace {

// Octonion basis multiplication table, built once via Cayley-Dickson:
// (a, b)(c, d) = (a c - conj(d) b, d a + b conj(c)) over quaternion pairs.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;
    Quaternion conj() const { return {w, -x, -y, -z}; }
    double& comp(int k) {
        switch (k) {
            case 0: return w;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    double comp(int k) const { return const_cast<Quaternion*>(this)->comp(k); }
};

Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

// The resulting table has the cyclically positive Fano triples
//   (1,2,3) (1,4,5) (2,4,6) (3,4,7) (2,5,7) (3,6,5) (1,7,6),
// i.e. e1e2 = e3, e2e5 = e7, e3e6 = e5, e1e7 = e6 and so on; a unit test
// pins a few products and checks p x (p x v) = -v + <p,v> p on random data,
// which is all the geometry downstream depends on.
struct OctonionTable {
    int index[8][8];
    int sign[8][8];
    OctonionTable() {
        auto basis = [](int i) {
            std::array<Quaternion, 2> o{};
            o[i / 4].comp(i % 4) = 1.0;
            return o;
        };
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const auto a = basis(i), b = basis(j);
                std::array<Quaternion, 2> p;
                p[0] = qmul(a[0], b[0]);
                const Quaternion t0 = qmul(b[1].conj(), a[1]);
                p[0].w -= t0.w; p[0].x -= t0.x; p[0].y -= t0.y; p[0].z -= t0.z;
                p[1] = qmul(b[1], a[0]);
                const Quaternion t1 = qmul(a[1], b[0].conj());
                p[1].w += t1.w; p[1].x += t1.x; p[1].y += t1.y; p[1].z += t1.z;
                int idx = -1, sgn = 0;
                for (int k = 0; k < 8; ++k) {
                    const double v = p[k / 4].comp(k % 4);
                    if (v > 0.5) { idx = k; sgn = 1; }
                    if (v < -0.5) { idx = k; sgn = -1; }
                }
                index[i][j] = idx;
                sign[i][j] = sgn;
            }
    }
};

const OctonionTable& oct_table() {
    static const OctonionTable t;
    return t;
}

}  // namespace

BasisProduct octonion_basis_product(int i, int j) {
    const auto& t = oct_table();
    return {t.index[i][j], t.sign[i][j]};
}

CMatrix octonionic_j(const RVector& p) {
    // matrix of v -> p x v; annihilates p itself, -Pi_p when squared
    const auto& t = oct_table();
    CMatrix m(7, 7);
    for (int i = 1; i <= 7; ++i) {
        if (p[i - 1] == 0.0) continue;
        for (int j = 1; j <= 7; ++j) {
            const int k = t.index[i][j];
            if (k >= 1) m(k - 1, j - 1) += t.sign[i][j] * p[i - 1];
        }
    }
    return m;
}

CMatrix standard_s2_j(const RVector& p) {
    CMatrix m(3, 3);
    m(0, 1) = -p[2]; m(0, 2) = p[1];
    m(1, 0) = p[2];  m(1, 2) = -p[0];
    m(2, 0) = -p[1]; m(2, 1) = p[0];
    return m;
}

CMatrix example24_j(const RVector& p) {
    if (p[0] == 0.0) throw std::runtime_error("example24_j: x = 0 not in domain");
    CMatrix m(2, 2);
    m(0, 1) = p[0];
    m(1, 0) = -1.0 / p[0];
    return m;
}

CMatrix stereo_fg_j(const Poly2& f, const Poly2& g, const RVector& p) {
    const double fv = f.eval(p[0], p[1]);
    const double gv = g.eval(p[0], p[1]);
    if (std::abs(gv) < 1e-12) throw std::runtime_error("stereo_fg_j: g vanishes at p");
    CMatrix m(2, 2);
    m(0, 0) = fv;
    m(0, 1) = -(1.0 + fv * fv) / gv;
    m(1, 0) = gv;
    m(1, 1) = -fv;
    return m;
}

RVector octonion_cross(const RVector& u, const RVector& v) {
    return mul_real(octonionic_j(u), v);
}

AcsField octonionic_s6() {
    AcsField f;
    f.name = "octonionic-s6";
    f.backend = SphereBackend{3};
    f.J = [](const RVector& q) { return octonionic_j(normalized(q)); };
    f.orthogonal_hint = true;
    return f;
}

AcsField standard_s2() {
    AcsField f;
    f.name = "standard-s2";
    f.backend = SphereBackend{1};
    f.J = [](const RVector& q) { return standard_s2_j(normalized(q)); };
    f.orthogonal_hint = true;
    return f;
}

AcsField example_2_4() {
    AcsField f;
    f.name = "example-2-4";
    f.backend = chart_flat();
    f.J = [](const RVector& p) { return example24_j(p); };
    f.dJ = [](const RVector& p) {
        CMatrix mx(2, 2), my(2, 2);
        mx(0, 1) = 1.0;
        mx(1, 0) = 1.0 / (p[0] * p[0]);
        return std::array<CMatrix, 2>{mx, my};
    };
    f.in_domain = [](const RVector& p) { return std::abs(p[0]) > 1e-6; };
    f.sample_box = {0.2, 3.0, -1.0, 1.0};
    return f;
}

AcsField stereo_fg(const Poly2& f, const Poly2& g) {
    AcsField a;
    a.name = "stereo-fg";
    a.backend = chart_stereo();
    const Poly2 fx = f.ddx(), fy = f.ddy(), gx = g.ddx(), gy = g.ddy();
    a.J = [f, g](const RVector& p) { return stereo_fg_j(f, g, p); };
    a.dJ = [f, g, fx, fy, gx, gy](const RVector& p) {
        const double x = p[0], y = p[1];
        const double fv = f.eval(x, y), gv = g.eval(x, y);
        const double fxv = fx.eval(x, y), fyv = fy.eval(x, y);
        const double gxv = gx.eval(x, y), gyv = gy.eval(x, y);
        auto d = [&](double df, double dg) {
            // d/dt of [[f, -(1+f^2)/g], [g, -f]] by the quotient rule
            CMatrix m(2, 2);
            m(0, 0) = df;
            m(0, 1) = (-2.0 * fv * df * gv + (1.0 + fv * fv) * dg) / (gv * gv);
            m(1, 0) = dg;
            m(1, 1) = -df;
            return m;
        };
        return std::array<CMatrix, 2>{d(fxv, gxv), d(fyv, gyv)};
    };
    a.in_domain = [g](const RVector& p) { return std::abs(g.eval(p[0], p[1])) > 0.05; };
    a.sample_box = {-0.4, 0.4, -0.4, 0.4};
    return a;
}

AcsField conjugated_s6(double eps, uint64_t seed) {
    AcsField base = octonionic_s6();
    Rng rng(seed);
    CMatrix A0(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) A0(i, j) = rng.gaussian();
    A0 = (1.0 / A0.frobenius_norm()) * A0;
    AcsField f;
    f.name = "conjugated-s6";
    f.backend = base.backend;
    f.J = [baseJ = base.J, A0, eps](const RVector& q) {
        const RVector p = normalized(q);
        const CMatrix Pi = tangent_projection(p);
        const CMatrix S = CMatrix::identity(7) + eps * (Pi * A0 * Pi);
        return S * baseJ(p) * inverse(S);
    };
    return f;
}

AcsField make_field(const std::string& name, const FieldOptions& opts) {
    if (name == "octonionic-s6") return octonionic_s6();
    if (name == "standard-s2") return standard_s2();
    if (name == "example-2-4") return example_2_4();
    if (name == "stereo-fg") {
        if (opts.fg) return stereo_fg(opts.fg->first, opts.fg->second);
        return stereo_fg(Poly2::constant(0.0), Poly2::constant(1.0));
    }
    if (name == "conjugated-s6") return conjugated_s6(opts.eps, 777);
    throw std::runtime_error("unknown field: " + name);
}

double metric_scale(const AcsField& f, const RVector& p) {
    if (const auto* c = std::get_if<ChartBackend>(&f.backend)) return c->h(p[0], p[1]);
    return 1.0;
}

CMatrix field_projector(const AcsField& f, const RVector& p) {
    if (f.on_sphere()) return tangent_projection(normalized(p));
    return CMatrix::identity(2);
}

CMatrix p_minus(const CMatrix& J) {
    return 0.5 * ((-1.0) * (J * J) + cplx(0.0, 1.0) * J);
}

CMatrix p_plus(const CMatrix& J) {
    return 0.5 * ((-1.0) * (J * J) - cplx(0.0, 1.0) * J);
}

CMatrix p_minus(const AcsField& f, const RVector& p) {
    return 0.5 * (field_projector(f, p) + cplx(0.0, 1.0) * f.J(p));
}

CMatrix p_plus(const AcsField& f, const RVector& p) {
    return 0.5 * (field_projector(f, p) - cplx(0.0, 1.0) * f.J(p));
}

T01Basis t01_basis(const AcsField& f, const RVector& p) {
    const CMatrix Pm = p_minus(f, p);
    const int n = f.ambient();
    std::vector<CVector> cand;
    for (int j = 0; j < n; ++j) {
        CVector e(n, cplx(0.0));
        e[j] = 1.0;
        cand.push_back(Pm * e);
    }
    auto basis = gram_schmidt_hermitian(cand, gram_schmidt_drop_tol(cand));
    // renormalize to the scaled metric s <.,.>
    const double s = metric_scale(f, p);
    const double inv_sqrt_s = 1.0 / std::sqrt(s);
    T01Basis out;
    for (auto& w : basis) {
        const CVector ws = inv_sqrt_s * w;
        out.z.push_back(real_vec(ws));
        out.w.push_back(ws);
    }
    return out;
}

ValidationResult validate(const AcsField& f, int samples, uint64_t seed, double tol) {
    Rng rng(seed);
    ValidationResult res;
    ValidationCheck j2{"j-squared", 0.0, tol, true};
    ValidationCheck tang{"tangency", 0.0, tol, true};
    ValidationCheck cont{"continuity", 0.0, 1e-3, true};
    ValidationCheck eig{"t01-dimension", 0.0, 0.0, true};
    const int n = f.ambient();
    const int expect_dim = f.on_sphere() ? n / 2 : 1;
    for (int s = 0; s < samples; ++s) {
        const RVector p = random_point(f, rng);
        const CMatrix J = f.J(p);
        const CMatrix Pi = field_projector(f, p);
        j2.max_residual = std::max(j2.max_residual, (J * J + Pi).max_abs());
        if (f.on_sphere())
            tang.max_residual = std::max(tang.max_residual, (Pi * J * Pi - J).max_abs());
        // smoothness sanity: difference quotient along a random direction
        const double h = 1e-6;
        RVector q;
        if (f.on_sphere()) {
            q = geodesic(p, random_unit_tangent(f, p, rng), h);
        } else {
            q = p + h * random_unit_tangent(f, p, rng);
            if (f.in_domain && !f.in_domain(q)) q = p;
        }
        if (q != p)
            cont.max_residual = std::max(cont.max_residual, (f.J(q) - J).max_abs());
        eig.max_residual = std::max(
            eig.max_residual,
            std::abs(static_cast<double>(t01_basis(f, p).w.size()) - expect_dim));
    }
    res.checks = {j2, tang, cont, eig};
    for (auto& c : res.checks) {
        c.pass = c.max_residual <= c.tolerance;
        res.pass = res.pass && c.pass;
    }
    return res;
}

bool is_orthogonal(const AcsField& f, int samples, uint64_t seed, double tol) {
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const RVector p = random_point(f, rng);
        const CMatrix J = f.J(p);
        if ((J.transpose() * J - field_projector(f, p)).max_abs() > tol) return false;
    }
    return true;
}

RVector random_point(const AcsField& f, Rng& rng) {
    if (f.on_sphere()) return normalized(rng.gaussian_vec(f.ambient()));
    for (int tries = 0; tries < 1000; ++tries) {
        RVector p{rng.uniform(f.sample_box[0], f.sample_box[1]),
                  rng.uniform(f.sample_box[2], f.sample_box[3])};
        if (!f.in_domain || f.in_domain(p)) return p;
    }
    throw std::runtime_error("random_point: no point in domain after 1000 draws");
}

RVector random_unit_tangent(const AcsField& f, const RVector& p, Rng& rng) {
    for (int tries = 0; tries < 100; ++tries) {
        RVector v = rng.gaussian_vec(f.ambient());
        if (f.on_sphere()) v = project_tangent(normalized(p), v);
        const double n = norm(v);
        if (n > 1e-8) return (1.0 / n) * v;
    }
    throw std::runtime_error("random_unit_tangent: degenerate draws");
}

}  // namespace acsgeo

#include "ccs/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ccs/krawczyk.hpp"

namespace ccs {

namespace {

using IVec = std::array<Interval, 3>;

Interval vdot(const IVec& a, const IVec& b, int d) {
    Interval s(0.0);
    for (int c = 0; c < d; ++c) s += a[c] * b[c];
    return s;
}

Interval vnorm2(const IVec& a, int d) {
    Interval s(0.0);
    for (int c = 0; c < d; ++c) s += sqr(a[c]);
    return s;
}

IVec vcross(const IVec& a, const IVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Box reflect_y(const ReducedSystem& sys, const Box& b) {
    Box r = b;
    r[1] = -b[1];
    for (int i = 1; i <= sys.n() - 3; ++i) {
        int idx = sys.coord_index(i, 1);
        r[idx] = -b[idx];
    }
    return r;
}

Box reflect_z(const ReducedSystem& sys, const Box& b) {
    Box r = b;
    for (int i = 1; i <= sys.n() - 3; ++i) {
        int idx = sys.coord_index(i, 2);
        r[idx] = -b[idx];
    }
    return r;
}

std::vector<std::vector<int>> cycle_decomposition(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> cycles;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            cyc.push_back(j);
            j = sigma[j];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

// Transformed reduced image of the solution in `b` under (R, sigma)^{-1}:
// W_k = R^T q^B_{sigma(k)}.  Structural coordinates of a true congruence
// image vanish exactly, so their enclosures must contain zero.
bool transformed_reduced_point(const ReducedSystem& sys, const Configuration& qb, const IntervalMatrix& R,
                               const std::vector<int>& sigma, Box& out) {
    const int n = sys.n(), d = sys.space_dim();
    std::array<IVec, kMaxBodies> w;
    for (int k = 0; k <= n - 2; ++k)
        for (int c = 0; c < d; ++c) {
            Interval s(0.0);
            for (int r = 0; r < d; ++r) s += R(r, c) * qb.q[sigma[k]][r];
            w[k][c] = s;
        }
    if (!w[n - 2][1].contains_zero()) return false;
    if (d == 3 && (!w[n - 2][2].contains_zero() || !w[0][2].contains_zero())) return false;
    out = Box(sys.reduced_dim());
    out[0] = w[0][0];
    out[1] = w[0][1];
    for (int i = 1; i <= n - 3; ++i)
        for (int c = 0; c < d; ++c) out[sys.coord_index(i, c)] = w[i][c];
    out[sys.reduced_dim() - 1] = w[n - 2][0];
    return true;
}

struct SigmaKey {
    std::vector<int> sigma;
    int tag;
    bool operator<(const SigmaKey& o) const {
        if (sigma != o.sigma) return sigma < o.sigma;
        return tag < o.tag;
    }
};

Interval matrix_det(const IntervalMatrix& R, int d) {
    if (d == 2) return R(0, 0) * R(1, 1) - R(0, 1) * R(1, 0);
    return R(0, 0) * (R(1, 1) * R(2, 2) - R(1, 2) * R(2, 1)) - R(0, 1) * (R(1, 0) * R(2, 2) - R(1, 2) * R(2, 0)) +
           R(0, 2) * (R(1, 0) * R(2, 1) - R(1, 1) * R(2, 0));
}

} // namespace

bool coplanarity_test(const ReducedSystem& sys, const Box& certified_box) {
    if (sys.space_dim() == 2) return true;
    IntervalSystem isys = make_interval_system(sys);
    return certify_unique_in_hull(isys, certified_box, reflect_z(sys, certified_box));
}

bool collinearity_test(const ReducedSystem& sys, const Box& certified_box) {
    IntervalSystem isys = make_interval_system(sys);
    if (!certify_unique_in_hull(isys, certified_box, reflect_y(sys, certified_box))) return false;
    if (sys.space_dim() == 2) return true;
    return certify_unique_in_hull(isys, certified_box, reflect_z(sys, certified_box));
}

std::vector<SymmetryElement> find_congruences(const ReducedSystem& sys, const Box& a, Geometry geom_a,
                                              const Box& b, Geometry geom_b) {
    std::vector<SymmetryElement> out;
    if (geom_a != geom_b) return out;
    const int n = sys.n(), d = sys.space_dim();
    IntervalSystem isys = make_interval_system(sys);
    Configuration qa = sys.embed(a), qb = sys.embed(b);
    std::set<SigmaKey> tried;

    // For a planar solution the same sigma is induced by two maps (R and
    // R composed with the reflection through the configuration plane), so
    // candidates are keyed by sigma plus the certified det / orientation
    // signs of the built matrix.
    auto attempt = [&](const IntervalMatrix& R, const std::vector<int>& sigma) {
        Interval det = matrix_det(R, d);
        if (det.contains_zero()) return;
        bool orient = (d == 3) ? R(2, 2).lo > 0.0 : det.lo > 0.0;
        int tag = (det.lo > 0.0 ? 2 : 0) | (orient ? 1 : 0);
        if (!tried.insert({sigma, tag}).second) return;
        Box w;
        if (!transformed_reduced_point(sys, qb, R, sigma, w)) return;
        if (!certify_unique_in_hull(isys, a, w)) return;
        SymmetryElement e;
        e.R = R;
        e.sigma = sigma;
        classify_element(sys, qa, e);
        out.push_back(std::move(e));
    };

    if (geom_a == Geometry::Collinear) {
        for (int tsign = 0; tsign < 2; ++tsign) {
            const double t = tsign == 0 ? 1.0 : -1.0;
            std::vector<int> sigma(n, -1);
            std::vector<bool> used(n, false);
            bool ok = true;
            for (int k = 0; k < n && ok; ++k) {
                int found = -1;
                for (int l = 0; l < n; ++l) {
                    Interval img = tsign == 0 ? qb.q[l][0] : -qb.q[l][0];
                    if (img.intersects(qa.q[k][0])) {
                        if (found >= 0) {
                            ok = false;
                            break;
                        }
                        found = l;
                    }
                }
                if (found < 0 || used[found]) ok = false;
                else {
                    sigma[k] = found;
                    used[found] = true;
                }
            }
            if (!ok) continue;
            IntervalMatrix R(d, d);
            R(0, 0) = Interval(t);
            R(1, 1) = Interval(t);
            if (d == 3) R(2, 2) = Interval(1.0);
            attempt(R, sigma);
        }
        return out;
    }

    const Interval& xa = a[a.dim() - 1];
    const Interval& ya = a[1];
    for (int i = 0; i < n; ++i) {
        Interval ri2 = vnorm2(qb.q[i], d);
        if (ri2.lo <= 0.0) continue;
        Interval ri = sqrt(ri2);
        if (!ri.intersects(xa)) continue;
        IVec ex;
        for (int c = 0; c < d; ++c) ex[c] = qb.q[i][c] / ri;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Interval pj = vdot(qb.q[j], ex, d);
            IVec ty;
            for (int c = 0; c < d; ++c) ty[c] = qb.q[j][c] - pj * ex[c];
            Interval t2 = vnorm2(ty, d);
            if (t2.lo <= 0.0) continue;
            Interval tn = sqrt(t2);
            if (!tn.intersects(ya)) continue;
            IVec ey;
            for (int c = 0; c < d; ++c) ey[c] = ty[c] / tn;
            IVec ez{Interval(0.0), Interval(0.0), Interval(0.0)};
            if (d == 3) ez = vcross(ex, ey);
            for (int sgn = 0; sgn < 2; ++sgn) {
                IntervalMatrix R(d, d);
                for (int c = 0; c < d; ++c) {
                    R(c, 0) = ex[c];
                    if (d == 2)
                        R(c, 1) = sgn == 0 ? ey[c] : -ey[c];
                    else {
                        R(c, 1) = ey[c];
                        R(c, 2) = sgn == 0 ? ez[c] : -ez[c];
                    }
                }
                // Extend sigma by unique image intersection; ambiguity or a
                // missing image abandons the candidate.
                std::vector<int> sigma(n, -1);
                std::vector<bool> used(n, false);
                bool ok = true;
                for (int k = 0; k < n && ok; ++k) {
                    IVec img;
                    for (int c = 0; c < d; ++c) {
                        Interval s(0.0);
                        for (int r = 0; r < d; ++r) s += R(c, r) * qa.q[k][r];
                        img[c] = s;
                    }
                    int found = -1;
                    for (int l = 0; l < n; ++l) {
                        bool inter = true;
                        for (int c = 0; c < d && inter; ++c)
                            if (!img[c].intersects(qb.q[l][c])) inter = false;
                        if (inter) {
                            if (found >= 0) {
                                ok = false;
                                break;
                            }
                            found = l;
                        }
                    }
                    if (found < 0 || used[found]) ok = false;
                    else {
                        sigma[k] = found;
                        used[found] = true;
                    }
                }
                if (!ok) continue;
                attempt(R, sigma);
            }
        }
    }
    return out;
}

SymmetryGroup find_symmetries(const ReducedSystem& sys, const Box& certified_box, Geometry geom) {
    if (geom == Geometry::Collinear)
        throw AssumptionViolated("symmetry search excludes collinear solutions");
    const int n = sys.n(), d = sys.space_dim();
    if (!(certified_box[certified_box.dim() - 1].lo > 0.0))
        throw AssumptionViolated("x_{n-2} > 0 not certified");
    if (!(certified_box[1].lo > 0.0)) throw AssumptionViolated("y_0 > 0 not certified");
    Configuration q = sys.embed(certified_box);
    for (int i = 0; i < n; ++i)
        if (q.q[i][1].mig() > certified_box[1].hi)
            throw AssumptionViolated("y_0 >= |y_i| violated");

    SymmetryGroup g;
    SymmetryElement id;
    id.R = IntervalMatrix::identity(d);
    id.sigma.resize(n);
    std::iota(id.sigma.begin(), id.sigma.end(), 0);
    id.kind = ElementKind::Identity;
    g.elements.push_back(std::move(id));

    auto found = find_congruences(sys, certified_box, geom, certified_box, geom);
    std::set<SigmaKey> keys;
    keys.insert({g.elements[0].sigma, 3});  // identity: det +1, orientation kept
    for (auto& e : found) {
        int tag = (e.det_sign > 0 ? 2 : 0) | (e.keeps_plane_orientation ? 1 : 0);
        if (!keys.insert({e.sigma, tag}).second) continue;
        g.elements.push_back(std::move(e));
    }
    return g;
}

SymmetryGroup symmetry_group_for(const ReducedSystem& sys, const Box& certified_box, Geometry geom) {
    if (geom != Geometry::Collinear) return find_symmetries(sys, certified_box, geom);
    SymmetryGroup g;
    SymmetryElement id;
    id.R = IntervalMatrix::identity(sys.space_dim());
    id.sigma.resize(sys.n());
    std::iota(id.sigma.begin(), id.sigma.end(), 0);
    id.kind = ElementKind::Identity;
    g.elements.push_back(std::move(id));
    for (auto& e : find_congruences(sys, certified_box, geom, certified_box, geom)) {
        bool is_id = true;
        for (int i = 0; i < sys.n(); ++i)
            if (e.sigma[i] != i) is_id = false;
        if (is_id) continue;
        g.elements.push_back(std::move(e));
    }
    return g;
}

void classify_element(const ReducedSystem& sys, const Configuration& q, SymmetryElement& e) {
    const int d = sys.space_dim();
    Interval det = matrix_det(e.R, d);
    if (det.lo > 0.0)
        e.det_sign = +1;
    else if (det.hi < 0.0)
        e.det_sign = -1;
    else {
        e.kind = ElementKind::Undecidable;
        return;
    }
    if (d == 3) {
        e.keeps_plane_orientation = e.R(2, 2).lo > 0.0;
    } else {
        e.keeps_plane_orientation = e.det_sign > 0;
    }

    auto cycles = cycle_decomposition(e.sigma);
    size_t max_len = 0;
    std::set<size_t> nonfixed_lens;
    for (auto& c : cycles) {
        max_len = std::max(max_len, c.size());
        if (c.size() > 1) nonfixed_lens.insert(c.size());
    }
    Interval trace(0.0);
    for (int i = 0; i < d; ++i) trace += e.R(i, i);

    auto cos_hits = [&](double ang, const Interval& target) {
        double c = std::cos(ang);
        return Interval(c - 1e-9, c + 1e-9).intersects(target);
    };
    constexpr double kTwoPi = 6.283185307179586476925286766559;

    if (e.det_sign > 0) {
        if (nonfixed_lens.empty()) {
            e.kind = ElementKind::Identity;
            e.order = 1;
            e.turns = 0;
            return;
        }
        if (nonfixed_lens.size() != 1) {
            e.kind = ElementKind::Undecidable;
            return;
        }
        int k = static_cast<int>(*nonfixed_lens.begin());
        Interval target = (d == 3) ? (trace - Interval(1.0)) / Interval(2.0) : trace / Interval(2.0);
        int hit = -1, nhits = 0;
        for (int m = 1; 2 * m <= k; ++m) {
            if (std::gcd(m, k) != 1) continue;
            if (cos_hits(kTwoPi * m / k, target)) {
                hit = m;
                ++nhits;
            }
        }
        if (nhits != 1) {
            e.kind = ElementKind::Undecidable;
            return;
        }
        e.kind = ElementKind::Rotation;
        e.order = k;
        e.turns = hit;
        return;
    }

    // det -1
    if (d == 2) {
        e.kind = ElementKind::Reflection;
        e.order = 2;
        e.turns = 1;
        for (auto& c : cycles)
            if (c.size() == 2) {
                for (int cc = 0; cc < 2; ++cc)
                    e.mirror_normal[cc] = q.q[c[0]][cc].mid() - q.q[c[1]][cc].mid();
                break;
            }
        if (e.mirror_normal[0] == 0.0 && e.mirror_normal[1] == 0.0) e.mirror_normal[1] = 1.0;
        return;
    }

    if (max_len <= 2) {
        bool lt1 = trace.hi < 1.0;   // certainly below a reflection's trace
        bool gtm3 = trace.lo > -3.0; // certainly above the inversion's trace
        if (lt1 && !gtm3) {
            e.kind = ElementKind::PointInversion;
            e.order = 2;
            e.turns = 1;
            return;
        }
        if (gtm3 && !lt1) {
            e.kind = ElementKind::Reflection;
            e.order = 2;
            e.turns = 1;
            bool set = false;
            for (auto& c : cycles)
                if (c.size() == 2) {
                    double nrm = 0.0;
                    for (int cc = 0; cc < 3; ++cc) {
                        e.mirror_normal[cc] = q.q[c[0]][cc].mid() - q.q[c[1]][cc].mid();
                        nrm += e.mirror_normal[cc] * e.mirror_normal[cc];
                    }
                    nrm = std::sqrt(nrm);
                    if (nrm > 0)
                        for (auto& v : e.mirror_normal) v /= nrm;
                    set = true;
                    break;
                }
            if (!set) e.mirror_normal = {0.0, 0.0, 1.0};  // mirror is the configuration plane
            return;
        }
        e.kind = ElementKind::Undecidable;
        return;
    }

    // Improper rotation with a non-trivial cycle: angle is 2 pi m / L or
    // 4 pi m / L; the trace picks the consistent one.
    int L = static_cast<int>(max_len);
    Interval target = (trace + Interval(1.0)) / Interval(2.0);
    int best_num = 0, best_den = 0, nhits = 0;
    double best_cos = 2.0;
    auto consider = [&](int num, int den) {
        int g = std::gcd(num, den);
        num /= g;
        den /= g;
        if (den <= 2) return;  // angle 0 or pi handled by the short-cycle cases
        double ang = kTwoPi * num / den;
        double c = std::cos(ang);
        if (!cos_hits(ang, target)) return;
        if (std::fabs(c - best_cos) < 1e-7) return;  // same geometric angle
        best_cos = c;
        best_num = num;
        best_den = den;
        ++nhits;
    };
    for (int m = 1; 2 * m <= L; ++m) consider(m, L);
    if (L % 2 == 0)
        for (int m = 1; 2 * m <= L / 2; ++m) consider(m, L / 2);
    if (nhits != 1) {
        e.kind = ElementKind::Undecidable;
        return;
    }
    e.kind = ElementKind::RotoReflection;
    e.order = best_den;
    e.turns = best_num;
}

namespace {

struct CatalogEntry {
    int n;
    const char* label;
    double u_lo, u_hi, j_lo, j_hi, x_lo, x_hi;
    int order;  // 0 = unspecified
};

// Reference enclosures for the spatial classes; planar and collinear
// classes are numbered by the report instead of named.
const CatalogEntry kCatalog[] = {
    {4, "regular tetrahedron", 0.374999, 0.375001, 0.229640, 0.229641, 0.612372, 0.612373, 24},
    {5, "diamond with triangular base", 0.406291714631756, 0.406291714631792, 0.258974467646155, 0.258974467646192,
     0.645381192132520, 0.645381192132525, 12},
    {5, "pyramid with square base", 0.406668433209057, 0.406668433209096, 0.259334737499626, 0.259334737499670,
     0.640314492896742, 0.640314492896747, 8},
    {5, "regular tetrahedron with central body", 0.422435140445300, 0.422435140445338, 0.274561764361204,
     0.274561764361248, 0.726666309633688, 0.726666309633696, 24},
    {5, "perturbed tetrahedron", 0.422231769572756, 0.422231769572783, 0.274363516846037, 0.274363516846068,
     0.777926778329678, 0.777926778329689, 6},
    {6, "diamond with square base", 0.425309618351001, 0.425309618351017, 0.277368927062174, 0.277368927062191,
     0.652157663721746, 0.652157663721751, 0},
    {6, "diamond with regular triangular base", 0.439099368866330, 0.439099368866431, 0.290967323607179,
     0.290967323607293, 0.728578780778797, 0.728578780778824, 0},
    {6, "two pyramids (item 3)", 0.439036200100984, 0.439036200101039, 0.290904538096071, 0.290904538096137,
     0.789355971631363, 0.789355971631373, 0},
    {6, "two orthogonal isosceles triangles", 0.438896104494510, 0.438896104494557, 0.290765308587179,
     0.290765308587232, 0.781521436907953, 0.781521436907963, 0},
    {6, "two pyramids (item 5)", 0.439337329879509, 0.439337329879619, 0.291203881424758, 0.291203881424879,
     0.726822370072089, 0.726822370072095, 0},
    {6, "pentagonal pyramid", 0.432755432237811, 0.432755432237842, 0.284684480412032, 0.284684480412068,
     0.662714824390013, 0.662714824390019, 0},
    {6, "prism", 0.428444021033087, 0.428444021033122, 0.280440756454764, 0.280440756454805, 0.654556354360036,
     0.654556354360042, 0},
    {6, "triangular polyhedron", 0.458387750751224, 0.458387750751244, 0.310348396299744, 0.310348396299768,
     0.884966789320403, 0.884966789320407, 0},
    {6, "diamond with isosceles triangular base", 0.439320318180620, 0.439320318180757, 0.291186967912789,
     0.291186967912943, 0.752034873173936, 0.752034873173975, 0},
};

} // namespace

std::string name_geometry(int n, Geometry g, const CCInvariants& inv, int group_order) {
    if (g == Geometry::Collinear) return "collinear";
    if (g == Geometry::Planar) return "planar";
    for (const auto& entry : kCatalog) {
        if (entry.n != n) continue;
        if (!inv.U.intersects(Interval(entry.u_lo, entry.u_hi))) continue;
        if (!inv.J.intersects(Interval(entry.j_lo, entry.j_hi))) continue;
        if (!inv.x_last.intersects(Interval(entry.x_lo, entry.x_hi))) continue;
        if (entry.order > 0 && group_order > 0 && entry.order != group_order) continue;
        return entry.label;
    }
    return "unnamed";
}

} // namespace ccs

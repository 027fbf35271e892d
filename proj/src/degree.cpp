#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "roughint/irregular.hpp"
#include "roughint/parallel.hpp"
#include "roughint/summation.hpp"
#include "roughint/young1d.hpp"

namespace roughint {

namespace {

// Image of a segment under (g1, g2) at 2^level + 1 points; the last point is
// the image of the end point itself.
std::vector<Point2> sample_image(const ScalarField& g1, const ScalarField& g2, Point2 a, Point2 b, int level,
                                 bool include_end) {
    const std::size_t n = std::size_t{1} << level;
    const std::size_t m = include_end ? n + 1 : n;
    std::vector<double> x1(m), x2(m), v1(m), v2(m);
    const double inv = std::ldexp(1.0, -level);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) * inv;
        x1[i] = a.x1 + t * (b.x1 - a.x1);
        x2[i] = a.x2 + t * (b.x2 - a.x2);
    }
    if (include_end) {
        x1[n] = b.x1;
        x2[n] = b.x2;
    }
    g1.eval_many(x1.data(), x2.data(), v1.data(), m);
    g2.eval_many(x1.data(), x2.data(), v2.data(), m);
    std::vector<Point2> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = {v1[i], v2[i]};
    return out;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double L2 = d.x1 * d.x1 + d.x2 * d.x2;
    double t = L2 > 0.0 ? ((p.x1 - a.x1) * d.x1 + (p.x2 - a.x2) * d.x2) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, {a.x1 + t * d.x1, a.x2 + t * d.x2});
}

// Closed polyline with a uniform bucket grid for distance queries and a
// row index for crossing-number winding.
class ImageCurve {
public:
    ImageCurve(std::vector<Point2> pts, Box box, int buckets) : pts_(std::move(pts)), box_(box), nb_(buckets) {
        cell_w_ = box_.width() / nb_;
        cell_h_ = box_.height() / nb_;
        grid_.resize(static_cast<std::size_t>(nb_) * nb_);
        rows_.resize(static_cast<std::size_t>(nb_));
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            const Point2 a = pts_[i], b = pts_[(i + 1) % pts_.size()];
            const int i0 = col(std::min(a.x1, b.x1)), i1 = col(std::max(a.x1, b.x1));
            const int j0 = row(std::min(a.x2, b.x2)), j1 = row(std::max(a.x2, b.x2));
            for (int j = j0; j <= j1; ++j) {
                rows_[static_cast<std::size_t>(j)].push_back(i);
                for (int k = i0; k <= i1; ++k) grid_[static_cast<std::size_t>(j) * nb_ + k].push_back(i);
            }
        }
    }

    bool within(Point2 p, double r) const {
        const int i0 = col(p.x1 - r), i1 = col(p.x1 + r), j0 = row(p.x2 - r), j1 = row(p.x2 + r);
        for (int j = j0; j <= j1; ++j)
            for (int k = i0; k <= i1; ++k)
                for (std::size_t s : grid_[static_cast<std::size_t>(j) * nb_ + k])
                    if (segment_distance(p, pts_[s], pts_[(s + 1) % pts_.size()]) <= r) return true;
        return false;
    }

    int winding(Point2 p) const {
        int w = 0;
        for (std::size_t s : rows_[static_cast<std::size_t>(row(p.x2))]) {
            const Point2 a = pts_[s], b = pts_[(s + 1) % pts_.size()];
            const double side = cross(b - a, p - a);
            if (a.x2 <= p.x2) {
                if (b.x2 > p.x2 && side > 0.0) ++w;
            } else if (b.x2 <= p.x2 && side < 0.0) {
                --w;
            }
        }
        return w;
    }

private:
    int col(double x) const { return std::clamp(static_cast<int>(std::floor((x - box_.x0) / cell_w_)), 0, nb_ - 1); }
    int row(double y) const { return std::clamp(static_cast<int>(std::floor((y - box_.y0) / cell_h_)), 0, nb_ - 1); }

    std::vector<Point2> pts_;
    Box box_;
    int nb_;
    double cell_w_ = 1.0, cell_h_ = 1.0;
    std::vector<std::vector<std::size_t>> grid_;
    std::vector<std::vector<std::size_t>> rows_;
};

struct CellSums {
    double lhs = 0.0;
    double excluded_area = 0.0;
    double excluded_mass = 0.0;
    long long cells = 0;
};

void visit_cell(const ImageCurve& curve, const std::function<double(Point2)>& phi, Point2 c, double size, int depth,
                double guard, CellSums& out) {
    const double r = std::max(guard, size * std::numbers::sqrt2 * 0.5);
    if (curve.within(c, r)) {
        if (depth == 0) {
            out.excluded_area += size * size;
            out.excluded_mass += std::abs(phi(c)) * size * size;
            return;
        }
        const double q = size * 0.25;
        for (const Point2 d : {Point2{-q, -q}, Point2{q, -q}, Point2{-q, q}, Point2{q, q}})
            visit_cell(curve, phi, c + d, size * 0.5, depth - 1, guard, out);
        return;
    }
    ++out.cells;
    const int w = curve.winding(c);
    if (w != 0) out.lhs += phi(c) * w * size * size;
}

} // namespace

int winding_number(const ScalarField& g1, const ScalarField& g2, const Chain<1>& boundary, Point2 x, int level) {
    if (level < 0 || level > kMaxSegmentLevel) throw BudgetExceeded("winding_number: level out of range");
    double total = 0.0, max_step = 0.0, min_dist = std::numeric_limits<double>::infinity();
    for (const auto& [c, seg] : boundary.terms) {
        const auto img = sample_image(g1, g2, seg.v[0], seg.v[1], level, true);
        double angle = 0.0;
        for (std::size_t i = 0; i + 1 < img.size(); ++i) {
            const Point2 u = img[i] - x, v = img[i + 1] - x;
            angle += std::atan2(cross(u, v), u.x1 * v.x1 + u.x2 * v.x2);
            max_step = std::max(max_step, distance(img[i], img[i + 1]));
            min_dist = std::min(min_dist, norm(u));
        }
        min_dist = std::min(min_dist, distance(img.back(), x));
        total += c * angle;
    }
    if (!(min_dist > 2.0 * max_step))
        throw GuardViolation("winding_number: point within the guard distance of the image curve");
    const double w = total / (2.0 * std::numbers::pi);
    const double k = std::round(w);
    if (std::abs(w - k) > 1e-6) throw GeometryError("winding_number: boundary chain is not closed");
    return static_cast<int>(k);
}

DegreeCheckResult degree_identity_check(const ComposedIntegrand& phi, const ScalarField& h1, const ScalarField& h2,
                                        const Simplex2& s, int grid_level, int sew_level, const DegreeOptions& dopt,
                                        const IntegrateOptions& opt) {
    if (grid_level < 1 || grid_level > 12) throw BudgetExceeded("degree check: grid_level out of range");
    if (dopt.boundary_level < 2 || dopt.boundary_level > 22)
        throw BudgetExceeded("degree check: boundary_level out of range");
    if (dopt.max_refine < 0 || dopt.max_refine > 10) throw BudgetExceeded("degree check: max_refine out of range");

    std::vector<Point2> pts;
    for (int i = 0; i < 3; ++i) {
        const auto side = sample_image(h1, h2, s.v[i], s.v[(i + 1) % 3], dopt.boundary_level, false);
        pts.insert(pts.end(), side.begin(), side.end());
    }
    double max_step = 0.0;
    Box bb{pts[0].x1, pts[0].x2, pts[0].x1, pts[0].x2};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        max_step = std::max(max_step, distance(pts[i], pts[(i + 1) % pts.size()]));
        bb.x0 = std::min(bb.x0, pts[i].x1);
        bb.x1 = std::max(bb.x1, pts[i].x1);
        bb.y0 = std::min(bb.y0, pts[i].x2);
        bb.y1 = std::max(bb.y1, pts[i].x2);
    }
    DegreeCheckResult out;
    out.guard = 2.0 * max_step;

    // Square grid slightly larger than the image's bounding box.
    const double L = std::max({bb.width(), bb.height(), 1e-12}) * (1.0 + 1e-6) + 2.0 * out.guard;
    const Point2 mid{0.5 * (bb.x0 + bb.x1), 0.5 * (bb.y0 + bb.y1)};
    const Box grid{mid.x1 - 0.5 * L, mid.x2 - 0.5 * L, mid.x1 + 0.5 * L, mid.x2 + 0.5 * L};
    const ImageCurve curve(std::move(pts), grid, std::min(1 << std::min(grid_level + 2, 11), 2048));

    const std::size_t n = std::size_t{1} << grid_level;
    const double hc = L / static_cast<double>(n);
    auto F = phi.F;
    const std::function<double(Point2)> phi_y = [F](Point2 y) { return F({0.0, 0.0}, y); };
    std::vector<CellSums> rows(n);
    parallel_for(n, [&](std::size_t j) {
        CellSums acc;
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 c{grid.x0 + (static_cast<double>(i) + 0.5) * hc, grid.y0 + (static_cast<double>(j) + 0.5) * hc};
            visit_cell(curve, phi_y, c, hc, dopt.max_refine, out.guard, acc);
        }
        rows[j] = acc;
    });
    std::vector<double> lhs(n), area(n), mass(n);
    for (std::size_t j = 0; j < n; ++j) {
        lhs[j] = rows[j].lhs;
        area[j] = rows[j].excluded_area;
        mass[j] = rows[j].excluded_mass;
        out.cells += rows[j].cells;
    }
    out.lhs = pairwise_sum(lhs);
    out.excluded_area = pairwise_sum(area);
    out.excluded_mass = pairwise_sum(mass);

    IntegrateOptions o = opt;
    o.mode = CertMode::Warn;
    const IntegralResult r = integrate_composed(phi, h1, h2, s, sew_level, o);
    out.rhs = r.value;
    out.rhs_error_bound = r.error_bound;
    out.gap = std::abs(out.lhs - out.rhs);
    out.certified = r.certified && out.excluded_mass <= dopt.excluded_tolerance;
    if (!out.certified && opt.mode == CertMode::Strict)
        throw CertificationError("degree check: excluded mass " + std::to_string(out.excluded_mass) +
                                 " above tolerance or right side not certified");
    return out;
}

} // namespace roughint

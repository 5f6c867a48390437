#include "ecad/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ecad/kernel.hpp"

namespace ecad {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateAxes: return "DegenerateAxes";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::DegenerateArc: return "DegenerateArc";
        case ErrorCode::DegenerateExtent: return "DegenerateExtent";
        case ErrorCode::CrossingLoops: return "CrossingLoops";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::UnsupportedPair: return "UnsupportedPair";
        case ErrorCode::UnsupportedEntity: return "UnsupportedEntity";
        case ErrorCode::TriangulationFailure: return "TriangulationFailure";
        case ErrorCode::BooleanFailure: return "BooleanFailure";
        case ErrorCode::EmptyResult: return "EmptyResult";
        case ErrorCode::EmptyMesh: return "EmptyMesh";
        case ErrorCode::InvalidReference: return "InvalidReference";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// SketchPlane

SketchPlane make_sketchplane(Vec3 origin, Vec3 x_axis, Vec3 y_axis) {
    if (!finite(origin) || !finite(x_axis) || !finite(y_axis))
        fail(ErrorCode::DegenerateAxes, "sketch plane inputs must be finite");
    double nx = norm(x_axis);
    double ny = norm(y_axis);
    if (nx <= kEpsDegenerate || ny <= kEpsDegenerate)
        fail(ErrorCode::DegenerateAxes, "sketch plane axis has zero length");
    double sin_angle = norm(cross(x_axis, y_axis)) / (nx * ny);
    if (sin_angle <= 1e-6)
        fail(ErrorCode::DegenerateAxes, "sketch plane axes are parallel");

    SketchPlane plane;
    plane.origin = origin;
    // Skip renormalization of already-clean inputs so a serialized plane
    // parses back bit-identically.
    double x2 = dot(x_axis, x_axis);
    plane.x_axis = std::abs(x2 - 1.0) <= 1e-12 ? x_axis : (1.0 / std::sqrt(x2)) * x_axis;
    Vec3 y = y_axis;
    double proj = dot(y, plane.x_axis);
    if (std::abs(proj) > 1e-12) y = y - proj * plane.x_axis;
    double y2 = dot(y, y);
    if (y2 <= kEpsDegenerate * kEpsDegenerate)
        fail(ErrorCode::DegenerateAxes, "sketch plane axes are parallel");
    plane.y_axis = std::abs(y2 - 1.0) <= 1e-12 ? y : (1.0 / std::sqrt(y2)) * y;
    return plane;
}

// ---------------------------------------------------------------------------
// Curves

bool is_degenerate(const Curve& curve, double eps) {
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Line>) {
                return dist(c.start, c.end) <= eps;
            } else if constexpr (std::is_same_v<T, Arc>) {
                double d1 = dist(c.start, c.end);
                double d2 = dist(c.start, c.mid);
                double d3 = dist(c.end, c.mid);
                if (d1 <= eps || d2 <= eps || d3 <= eps) return true;
                double area2 = std::abs(cross(c.mid - c.start, c.end - c.start));
                return area2 <= 1e-12 * d2 * d1; // collinear: no circumcircle
            } else {
                return c.radius <= eps;
            }
        },
        curve);
}

Circle2 circumcircle(Vec2 a, Vec2 b, Vec2 c) {
    double d = 2.0 * (a.u * (b.v - c.v) + b.u * (c.v - a.v) + c.u * (a.v - b.v));
    double scale = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (std::abs(d) <= 1e-12 * scale * scale)
        fail(ErrorCode::DegenerateArc, "collinear points have no circumcircle");
    double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    Vec2 center{(a2 * (b.v - c.v) + b2 * (c.v - a.v) + c2 * (a.v - b.v)) / d,
                (a2 * (c.u - b.u) + b2 * (a.u - c.u) + c2 * (b.u - a.u)) / d};
    return {center, dist(a, center)};
}

ArcGeometry arc_geometry(const Arc& arc) {
    Circle2 cc = circumcircle(arc.start, arc.end, arc.mid);
    double a0 = std::atan2(arc.start.v - cc.center.v, arc.start.u - cc.center.u);
    double a1 = std::atan2(arc.end.v - cc.center.v, arc.end.u - cc.center.u);
    double am = std::atan2(arc.mid.v - cc.center.v, arc.mid.u - cc.center.u);
    constexpr double tau = 2.0 * std::numbers::pi;
    auto wrap = [&](double x) {
        double r = std::fmod(x, tau);
        return r < 0 ? r + tau : r;
    };
    double ccw_sweep = wrap(a1 - a0);
    double mid_pos = wrap(am - a0);
    double sweep;
    if (mid_pos > 0 && mid_pos < ccw_sweep) {
        sweep = ccw_sweep; // counter-clockwise through mid
    } else {
        sweep = ccw_sweep - tau; // clockwise
    }
    if (std::abs(sweep) < 1e-9)
        fail(ErrorCode::DegenerateArc, "arc sweep is numerically zero");
    return {cc.center, cc.radius, a0, sweep};
}

std::optional<Vec2> chain_start(const Curve& curve) {
    if (const auto* l = std::get_if<Line>(&curve)) return l->start;
    if (const auto* a = std::get_if<Arc>(&curve)) return a->start;
    return std::nullopt;
}

std::optional<Vec2> chain_end(const Curve& curve) {
    if (const auto* l = std::get_if<Line>(&curve)) return l->end;
    if (const auto* a = std::get_if<Arc>(&curve)) return a->end;
    return std::nullopt;
}

void curve_bounds(const Curve& curve, Vec2& lo, Vec2& hi) {
    auto grow = [&](Vec2 p) {
        lo.u = std::min(lo.u, p.u);
        lo.v = std::min(lo.v, p.v);
        hi.u = std::max(hi.u, p.u);
        hi.v = std::max(hi.v, p.v);
    };
    if (const auto* l = std::get_if<Line>(&curve)) {
        grow(l->start);
        grow(l->end);
    } else if (const auto* c = std::get_if<Circle>(&curve)) {
        grow(c->center + Vec2{c->radius, c->radius});
        grow(c->center - Vec2{c->radius, c->radius});
    } else {
        const Arc& a = std::get<Arc>(curve);
        grow(a.start);
        grow(a.end);
        grow(a.mid);
        ArcGeometry g = arc_geometry(a);
        constexpr double half_pi = std::numbers::pi / 2.0;
        for (int k = -4; k <= 4; ++k) {
            double angle = k * half_pi;
            double t = (angle - g.start_angle) / g.sweep;
            if (t > 0.0 && t < 1.0)
                grow(g.center + Vec2{g.radius * std::cos(angle), g.radius * std::sin(angle)});
        }
    }
}

// ---------------------------------------------------------------------------
// validate_loop

LoopValidation validate_loop(const Loop& loop, double eps_join) {
    LoopValidation report;
    if (loop.curves.empty()) return report;

    for (size_t i = 0; i < loop.curves.size(); ++i)
        if (is_degenerate(loop.curves[i])) report.degenerate_curves.push_back(static_cast<int>(i));

    bool has_circle = std::any_of(loop.curves.begin(), loop.curves.end(),
                                  [](const Curve& c) { return std::holds_alternative<Circle>(c); });
    if (has_circle) {
        report.mixed_circle = loop.curves.size() > 1;
        report.closed = !report.mixed_circle;
        return report;
    }

    size_t n = loop.curves.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = *chain_end(loop.curves[i]);
        Vec2 s = *chain_start(loop.curves[(i + 1) % n]);
        double gap = dist(e, s);
        if (gap > eps_join) report.gaps.push_back({static_cast<int>(i), gap});
    }
    report.closed = report.gaps.empty();
    return report;
}

// ---------------------------------------------------------------------------
// classify_profile

namespace {

bool point_in_polyline(Vec2 p, const std::vector<Vec2>& poly) {
    bool inside = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 a = poly[j], b = poly[i];
        if ((a.v > p.v) != (b.v > p.v)) {
            double xi = a.u + (p.v - a.v) / (b.v - a.v) * (b.u - a.u);
            if (xi > p.u) inside = !inside;
        }
    }
    return inside;
}

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    double v = cross(b - a, c - a);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool proper_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

double classification_tol(const std::vector<Loop>& loops) {
    Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (const Loop& loop : loops)
        for (const Curve& c : loop.curves) curve_bounds(c, lo, hi);
    double diag = dist(lo, hi);
    return diag > 0 ? 0.002 * diag : 1e-3;
}

} // namespace

Profile classify_profile(const std::vector<Loop>& loops) {
    Profile profile;
    profile.loops = loops;
    profile.depth.assign(loops.size(), 0);
    if (loops.empty()) return profile;

    double tol = classification_tol(loops);
    std::vector<std::vector<Vec2>> polys;
    polys.reserve(loops.size());
    for (const Loop& loop : loops) {
        Polyline2 pl = tessellate_loop(loop, tol);
        polys.push_back(std::move(pl.points));
    }

    for (size_t i = 0; i < polys.size(); ++i) {
        for (size_t j = i + 1; j < polys.size(); ++j) {
            const auto& pi = polys[i];
            const auto& pj = polys[j];
            for (size_t s = 0; s < pi.size(); ++s) {
                Vec2 a = pi[s], b = pi[(s + 1) % pi.size()];
                for (size_t t = 0; t < pj.size(); ++t) {
                    Vec2 c = pj[t], d = pj[(t + 1) % pj.size()];
                    if (proper_intersect(a, b, c, d)) {
                        std::ostringstream msg;
                        msg << "loops " << i << " and " << j << " cross";
                        fail(ErrorCode::CrossingLoops, msg.str());
                    }
                }
            }
        }
    }

    for (size_t i = 0; i < polys.size(); ++i) {
        int depth = 0;
        for (size_t j = 0; j < polys.size(); ++j) {
            if (i == j) continue;
            if (point_in_polyline(polys[i][0], polys[j])) ++depth;
        }
        profile.depth[i] = depth;
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Statement resolution

namespace {

[[noreturn]] void dangling(int stmt, const char* what) {
    std::ostringstream msg;
    msg << "statement " << stmt << ": dangling " << what << " reference";
    fail(ErrorCode::DanglingReference, msg.str());
}

} // namespace

Loop resolve_loop(const CADProgram& program, int loop_stmt) {
    const auto* ls = program.get<LoopStmt>(loop_stmt);
    if (!ls) dangling(loop_stmt, "loop");
    Loop loop;
    for (int ci : ls->curves) {
        const auto* cs = program.get<CurveStmt>(ci);
        if (!cs) dangling(ci, "curve");
        loop.curves.push_back(cs->curve);
    }
    return loop;
}

Profile resolve_profile(const CADProgram& program, int profile_stmt) {
    const auto* ps = program.get<ProfileStmt>(profile_stmt);
    if (!ps) dangling(profile_stmt, "profile");
    std::vector<Loop> loops;
    for (int li : ps->loops) loops.push_back(resolve_loop(program, li));
    return classify_profile(loops);
}

Sketch resolve_sketch(const CADProgram& program, int sketch_stmt) {
    const auto* ss = program.get<SketchStmt>(sketch_stmt);
    if (!ss) dangling(sketch_stmt, "sketch");
    const auto* plane = program.get<PlaneStmt>(ss->plane);
    if (!plane) dangling(ss->plane, "plane");
    Sketch sketch;
    sketch.plane = plane->plane;
    sketch.profile = resolve_profile(program, ss->profile);
    sketch.position = ss->position;
    sketch.size = ss->size;
    return sketch;
}

std::vector<int> sketch_curve_statements(const CADProgram& program, int sketch_stmt) {
    const auto* ss = program.get<SketchStmt>(sketch_stmt);
    if (!ss) dangling(sketch_stmt, "sketch");
    const auto* ps = program.get<ProfileStmt>(ss->profile);
    if (!ps) dangling(ss->profile, "profile");
    std::vector<int> result;
    for (int li : ps->loops) {
        const auto* ls = program.get<LoopStmt>(li);
        if (!ls) dangling(li, "loop");
        result.insert(result.end(), ls->curves.begin(), ls->curves.end());
    }
    return result;
}

PairView extract_pairs(const CADProgram& program) {
    PairView view;
    for (size_t i = 0; i < program.statements.size(); ++i) {
        const auto* es = std::get_if<ExtrudeStmt>(&program.statements[i].data);
        if (!es) continue;
        const auto* ss = program.get<SketchStmt>(es->sketch);
        if (!ss) dangling(es->sketch, "sketch");
        const auto* ps = program.get<ProfileStmt>(ss->profile);
        if (!ps) dangling(ss->profile, "profile");
        int pos = 0;
        for (int li : ps->loops) {
            if (!program.get<LoopStmt>(li)) dangling(li, "loop");
            view.entries.push_back({li, es->sketch, static_cast<int>(i), pos++});
        }
    }
    return view;
}

// ---------------------------------------------------------------------------
// validate_program

namespace {

struct Validator {
    const CADProgram& program;
    double eps_join;
    std::vector<ProgramIssue> issues;

    void issue(int stmt, std::string message) { issues.push_back({stmt, std::move(message)}); }

    // Sketch statements whose profile (transitively) contains the curve statement.
    std::vector<int> sketches_of_curve(int curve_stmt) const {
        std::vector<int> result;
        for (size_t s = 0; s < program.statements.size(); ++s) {
            const auto* ss = std::get_if<SketchStmt>(&program.statements[s].data);
            if (!ss) continue;
            const auto* ps = program.get<ProfileStmt>(ss->profile);
            if (!ps) continue;
            for (int li : ps->loops) {
                const auto* ls = program.get<LoopStmt>(li);
                if (!ls) continue;
                if (std::find(ls->curves.begin(), ls->curves.end(), curve_stmt) != ls->curves.end()) {
                    result.push_back(static_cast<int>(s));
                    break;
                }
            }
        }
        return result;
    }

    void check_constraint(int idx, const Constraint& c) {
        auto curve_of = [&](int stmt) -> const Curve* {
            const auto* cs = program.get<CurveStmt>(stmt);
            return cs ? &cs->curve : nullptr;
        };
        auto require_line = [&](int stmt, const char* role) {
            const Curve* c2 = curve_of(stmt);
            if (!c2)
                issue(idx, std::string("constraint references missing curve (") + role + ")");
            else if (!std::holds_alternative<Line>(*c2))
                issue(idx, std::string(role) + " must be a line");
        };

        std::vector<int> refs;
        switch (c.kind) {
            case ConstraintKind::Horizontal:
            case ConstraintKind::Vertical:
                require_line(c.a, "line");
                refs = {c.a};
                break;
            case ConstraintKind::FixSize:
                if (!curve_of(c.a)) issue(idx, "fix_size references missing curve");
                refs = {c.a};
                break;
            case ConstraintKind::Coincident: {
                auto check_point = [&](const PointRef& p) {
                    if (p.is_anchor()) return;
                    const Curve* cc = curve_of(p.curve);
                    if (!cc) {
                        issue(idx, "coincident references missing curve");
                        return;
                    }
                    bool ok = std::visit(
                        [&](const auto& k) {
                            using T = std::decay_t<decltype(k)>;
                            if constexpr (std::is_same_v<T, Line>)
                                return p.sel == PointSel::Start || p.sel == PointSel::End;
                            else if constexpr (std::is_same_v<T, Arc>)
                                return p.sel == PointSel::Start || p.sel == PointSel::End ||
                                       p.sel == PointSel::Mid;
                            else
                                return p.sel == PointSel::Center;
                        },
                        *cc);
                    if (!ok) issue(idx, "coincident point selector does not exist on curve");
                    refs.push_back(p.curve);
                };
                check_point(c.pa);
                check_point(c.pb);
                break;
            }
            case ConstraintKind::Parallel:
            case ConstraintKind::Perpendicular:
                require_line(c.a, "line0");
                require_line(c.b, "line1");
                refs = {c.a, c.b};
                break;
            case ConstraintKind::Angle:
                require_line(c.a, "line0");
                require_line(c.b, "line1");
                refs = {c.a, c.b};
                break;
            case ConstraintKind::Tangent: {
                const Curve* ca = curve_of(c.a);
                const Curve* cb = curve_of(c.b);
                if (!ca || !cb) {
                    issue(idx, "tangent references missing curve");
                } else if (std::holds_alternative<Line>(*ca) && std::holds_alternative<Line>(*cb)) {
                    issue(idx, "tangent between two lines is unsupported");
                }
                refs = {c.a, c.b};
                break;
            }
            case ConstraintKind::Mirror: {
                const Curve* ca = curve_of(c.a);
                const Curve* cb = curve_of(c.b);
                if (!ca || !cb)
                    issue(idx, "mirror references missing curve");
                else if (ca->index() != cb->index())
                    issue(idx, "mirror requires curves of the same type");
                require_line(c.axis, "mirror axis");
                refs = {c.a, c.b, c.axis};
                break;
            }
        }

        // All referenced curves must live in one sketch.
        std::set<int> common;
        bool first = true;
        for (int r : refs) {
            if (r < 0) continue;
            auto sketches = sketches_of_curve(r);
            if (sketches.empty()) {
                issue(idx, "constraint references a curve outside any sketch");
                return;
            }
            std::set<int> s(sketches.begin(), sketches.end());
            if (first) {
                common = std::move(s);
                first = false;
            } else {
                std::set<int> inter;
                std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                                      std::inserter(inter, inter.begin()));
                common = std::move(inter);
            }
        }
        if (!first && common.empty())
            issue(idx, "constraint references curves from different sketches");
    }

    void run() {
        bool saw_extrude = false;
        for (size_t i = 0; i < program.statements.size(); ++i) {
            int idx = static_cast<int>(i);
            const StatementData& data = program.statements[i].data;
            if (const auto* ls = std::get_if<LoopStmt>(&data)) {
                bool refs_ok = true;
                for (int ci : ls->curves) {
                    if (!program.get<CurveStmt>(ci) || ci >= idx) {
                        issue(idx, "loop references invalid curve statement");
                        refs_ok = false;
                    }
                }
                if (!refs_ok) continue;
                Loop loop = resolve_loop(program, idx);
                LoopValidation v = validate_loop(loop, eps_join);
                if (loop.curves.empty()) issue(idx, "loop has no curves");
                if (v.mixed_circle) issue(idx, "circle mixed with other curves in one loop");
                for (const auto& gap : v.gaps) {
                    std::ostringstream msg;
                    msg << "loop open: gap of " << gap.distance << " after curve " << gap.after_curve;
                    issue(idx, msg.str());
                }
                for (int d : v.degenerate_curves) {
                    std::ostringstream msg;
                    msg << "degenerate curve at loop position " << d;
                    issue(idx, msg.str());
                }
            } else if (const auto* ps = std::get_if<ProfileStmt>(&data)) {
                bool refs_ok = !ps->loops.empty();
                if (ps->loops.empty()) issue(idx, "profile has no loops");
                for (int li : ps->loops) {
                    if (!program.get<LoopStmt>(li) || li >= idx) {
                        issue(idx, "profile references invalid loop statement");
                        refs_ok = false;
                    }
                }
                if (!refs_ok) continue;
                try {
                    resolve_profile(program, idx);
                } catch (const Error& e) {
                    issue(idx, e.what());
                }
            } else if (const auto* ss = std::get_if<SketchStmt>(&data)) {
                if (!program.get<PlaneStmt>(ss->plane) || ss->plane >= idx)
                    issue(idx, "sketch references invalid plane statement");
                if (!program.get<ProfileStmt>(ss->profile) || ss->profile >= idx)
                    issue(idx, "sketch references invalid profile statement");
                if (!(ss->size > 0)) issue(idx, "sketch size must be positive");
            } else if (const auto* es = std::get_if<ExtrudeStmt>(&data)) {
                if (!program.get<SketchStmt>(es->sketch) || es->sketch >= idx)
                    issue(idx, "extrusion references invalid sketch statement");
                if (!saw_extrude && es->extrusion.operation != BooleanOp::NewBody)
                    issue(idx, "first extrusion must create a new body");
                if (std::abs(es->extrusion.extent_one) <= kEpsDegenerate)
                    issue(idx, "extrusion extent is degenerate");
                if (es->extrusion.extent_type == ExtentType::TwoSided &&
                    std::abs(es->extrusion.extent_two) <= kEpsDegenerate)
                    issue(idx, "two-sided extrusion second extent is degenerate");
                saw_extrude = true;
            } else if (const auto* cs = std::get_if<ConstraintStmt>(&data)) {
                check_constraint(idx, cs->constraint);
            }
        }
    }
};

} // namespace

std::string ProgramValidation::summary() const {
    std::ostringstream out;
    for (size_t i = 0; i < issues.size(); ++i) {
        if (i) out << "; ";
        out << "stmt " << issues[i].statement << ": " << issues[i].message;
    }
    return out.str();
}

ProgramValidation validate_program(const CADProgram& program, double eps_join) {
    Validator v{program, eps_join, {}};
    v.run();
    return {std::move(v.issues)};
}

} // namespace ecad

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecad/error.hpp"
#include "ecad/geometry.hpp"

namespace ecad {

// ---------------------------------------------------------------------------
// Sketch plane

struct SketchPlane {
    Vec3 origin;
    Vec3 x_axis{1, 0, 0};
    Vec3 y_axis{0, 1, 0};

    // The normal is always derived, never stored.
    Vec3 normal() const { return cross(x_axis, y_axis); }

    // Embeds an in-plane point (no sketch position/size applied).
    Vec3 to_world(Vec2 p) const { return origin + p.u * x_axis + p.v * y_axis; }

    friend bool operator==(const SketchPlane&, const SketchPlane&) = default;
};

// Normalizes the axes and re-orthogonalizes y against x (Gram-Schmidt).
// Throws Error{DegenerateAxes} for zero or parallel inputs.
SketchPlane make_sketchplane(Vec3 origin, Vec3 x_axis, Vec3 y_axis);

// ---------------------------------------------------------------------------
// Curves

struct Line {
    Vec2 start;
    Vec2 end;
    friend bool operator==(const Line&, const Line&) = default;
};

struct Arc {
    Vec2 start;
    Vec2 end;
    Vec2 mid;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
    friend bool operator==(const Circle&, const Circle&) = default;
};

using Curve = std::variant<Line, Arc, Circle>;

bool is_degenerate(const Curve& curve, double eps = kEpsDegenerate);

// Circumcircle through three points; throws Error{DegenerateArc} when collinear.
struct Circle2 {
    Vec2 center;
    double radius = 0.0;
};
Circle2 circumcircle(Vec2 a, Vec2 b, Vec2 c);

// Center/radius/angle form of a three-point arc. sweep is signed (positive =
// counter-clockwise) and chosen so the path from start_angle passes through
// the authored mid point.
struct ArcGeometry {
    Vec2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;

    Vec2 at(double t) const {
        double a = start_angle + t * sweep;
        return center + Vec2{radius * std::cos(a), radius * std::sin(a)};
    }
};
ArcGeometry arc_geometry(const Arc& arc);

// Chain endpoints for loop-closure checks. Circles have no chain endpoints.
std::optional<Vec2> chain_start(const Curve& curve);
std::optional<Vec2> chain_end(const Curve& curve);

// Exact axis-aligned bounds of the curve itself (arcs use angular extremes).
void curve_bounds(const Curve& curve, Vec2& lo, Vec2& hi);

// ---------------------------------------------------------------------------
// Loops, profiles, sketches

struct Loop {
    std::vector<Curve> curves;
    friend bool operator==(const Loop&, const Loop&) = default;
};

struct Profile {
    std::vector<Loop> loops;
    std::vector<int> depth; // per-loop nesting depth; even = material, odd = hole
    friend bool operator==(const Profile&, const Profile&) = default;
};

struct Sketch {
    SketchPlane plane;
    Profile profile;
    Vec2 position{0, 0}; // in-plane offset
    double size = 1.0;   // uniform scale, > 0

    // Full placement: plane origin + (size*u + position.u)*x + (size*v + position.v)*y.
    Vec3 to_world(Vec2 p) const {
        return plane.to_world({size * p.u + position.u, size * p.v + position.v});
    }
    friend bool operator==(const Sketch&, const Sketch&) = default;
};

enum class BooleanOp { NewBody, Join, Cut, Intersect };
enum class ExtentType { OneSided, Symmetric, TwoSided };

struct Extrusion {
    BooleanOp operation = BooleanOp::NewBody;
    ExtentType extent_type = ExtentType::OneSided;
    double extent_one = 0.0;
    double extent_two = 0.0; // TwoSided only
    friend bool operator==(const Extrusion&, const Extrusion&) = default;
};

// ---------------------------------------------------------------------------
// Constraints

enum class ConstraintKind {
    Horizontal,
    Vertical,
    FixSize,
    Coincident,
    Parallel,
    Perpendicular,
    Tangent,
    Mirror,
    Angle,
};

enum class PointSel { Start, End, Mid, Center };

// A point reference is either (curve, endpoint selector) or a fixed anchor
// point, which is how a sketch gets pinned absolutely.
struct PointRef {
    int curve = -1; // < 0 means anchor
    PointSel sel = PointSel::Start;
    Vec2 anchor;

    bool is_anchor() const { return curve < 0; }
    static PointRef of(int curve, PointSel sel) { return {curve, sel, {}}; }
    static PointRef fixed(Vec2 p) { return {-1, PointSel::Start, p}; }
    friend bool operator==(const PointRef&, const PointRef&) = default;
};

// Curve indices are context-dependent: statement indices inside a CADProgram,
// positional curve indices inside a solver system.
struct Constraint {
    ConstraintKind kind = ConstraintKind::Horizontal;
    int a = -1;
    int b = -1;
    int axis = -1; // Mirror only
    PointRef pa;   // Coincident only
    PointRef pb;   // Coincident only
    double value = 0.0;     // FixSize size / Angle radians
    bool clockwise = false; // Angle only
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

using ConstraintSet = std::vector<Constraint>;

// ---------------------------------------------------------------------------
// Program statements
//
// A CADProgram is the ordered statement sequence the DSL parses to. Loop,
// profile, sketch, constraint and extrusion statements reference earlier
// statements by index.

struct PlaneStmt {
    SketchPlane plane;
    friend bool operator==(const PlaneStmt&, const PlaneStmt&) = default;
};

struct CurveStmt {
    Curve curve;
    friend bool operator==(const CurveStmt&, const CurveStmt&) = default;
};

struct LoopStmt {
    std::vector<int> curves; // statement indices of CurveStmt
    friend bool operator==(const LoopStmt&, const LoopStmt&) = default;
};

struct ProfileStmt {
    std::vector<int> loops; // statement indices of LoopStmt
    friend bool operator==(const ProfileStmt&, const ProfileStmt&) = default;
};

struct SketchStmt {
    int plane = -1;
    int profile = -1;
    Vec2 position{0, 0};
    double size = 1.0;
    friend bool operator==(const SketchStmt&, const SketchStmt&) = default;
};

struct ConstraintStmt {
    Constraint constraint; // curve fields hold statement indices
    friend bool operator==(const ConstraintStmt&, const ConstraintStmt&) = default;
};

struct ExtrudeStmt {
    int sketch = -1;
    Extrusion extrusion;
    friend bool operator==(const ExtrudeStmt&, const ExtrudeStmt&) = default;
};

using StatementData =
    std::variant<PlaneStmt, CurveStmt, LoopStmt, ProfileStmt, SketchStmt, ConstraintStmt, ExtrudeStmt>;

struct Statement {
    std::string annotation; // '\n'-separated comment lines, empty if none
    StatementData data;
    friend bool operator==(const Statement&, const Statement&) = default;
};

struct CADProgram {
    std::vector<Statement> statements;
    std::string trailing_annotation; // comments after the last statement

    template <typename T>
    const T* get(int index) const {
        if (index < 0 || index >= static_cast<int>(statements.size())) return nullptr;
        return std::get_if<T>(&statements[index].data);
    }
    friend bool operator==(const CADProgram&, const CADProgram&) = default;
};

// ---------------------------------------------------------------------------
// Pair view: one entry per (loop, extrusion) combination, in program order.

struct PairView {
    struct Entry {
        int loop_stmt = -1;
        int sketch_stmt = -1;
        int extrude_stmt = -1;
        int loop_in_profile = 0; // position of the loop inside its profile
    };
    std::vector<Entry> entries;
};

// ---------------------------------------------------------------------------
// Operations

struct LoopValidation {
    bool closed = false;
    // Gap distances between consecutive chain endpoints that exceed eps_join.
    struct Gap {
        int after_curve = 0;
        double distance = 0.0;
    };
    std::vector<Gap> gaps;
    std::vector<int> degenerate_curves; // indices into loop.curves
    bool mixed_circle = false;          // circle combined with other curves
};

LoopValidation validate_loop(const Loop& loop, double eps_join = kEpsJoin);

// Assigns nesting depths by containment counting; throws Error{CrossingLoops}
// when two loops properly intersect.
Profile classify_profile(const std::vector<Loop>& loops);

// Throws Error{DanglingReference} on broken statement references.
PairView extract_pairs(const CADProgram& program);

// Resolved (value) forms of statement-graph nodes.
Loop resolve_loop(const CADProgram& program, int loop_stmt);
Profile resolve_profile(const CADProgram& program, int profile_stmt);
Sketch resolve_sketch(const CADProgram& program, int sketch_stmt);

// Curve statements of a sketch in profile order (loop by loop).
std::vector<int> sketch_curve_statements(const CADProgram& program, int sketch_stmt);

// ---------------------------------------------------------------------------
// Whole-program validation (the scorer's Validate stage).

struct ProgramIssue {
    int statement = -1;
    std::string message;
};

struct ProgramValidation {
    std::vector<ProgramIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

ProgramValidation validate_program(const CADProgram& program, double eps_join = kEpsJoin);

} // namespace ecad

#include <doctest.h>

#include <random>

#include "qwave/douglas_rachford.hpp"

using namespace qwave::dr;

namespace {

Vector v2(double x, double y) { return (Vector(2) << x, y).finished(); }

bool near(const Vector& a, const Vector& b, double tol) { return (a - b).norm() <= tol; }

} // namespace

TEST_CASE("projections")
{
    const ConvexSet disc = ConvexSet::ball(v2(2, 0), 2.25);
    CHECK(near(project(disc, v2(5, 0)), v2(4.25, 0), 1e-15));
    CHECK(near(project(disc, v2(1, 1)), v2(1, 1), 0.0));
    const ConvexSet line = ConvexSet::hyperplane(v2(0, 1), 0.0);
    CHECK(near(project(line, v2(3, 7)), v2(3, 0), 1e-15));
    const ConvexSet box = ConvexSet::box(v2(0, 0), v2(1, 2));
    CHECK(near(project(box, v2(-1, 3)), v2(0, 2), 0.0));
    CHECK_THROWS(project(disc, Vector::Zero(3)));
    CHECK_THROWS(ConvexSet::ball(v2(0, 0), -1.0));
    CHECK_THROWS(ConvexSet::box(v2(1, 0), v2(0, 1)));
    CHECK_THROWS(ConvexSet::hyperplane(v2(0, 0), 1.0));
}

TEST_CASE("reflections")
{
    const ConvexSet disc = ConvexSet::ball(v2(2, 0), 2.25);
    CHECK(near(reflect(disc, v2(5, 0)), v2(3.5, 0), 1e-15));
    CHECK(near(reflect(disc, v2(2.5, 0.5)), v2(2.5, 0.5), 0.0));
    const ConvexSet plane = ConvexSet::hyperplane(v2(1, 2), 0.7);
    const Vector x = v2(-3.0, 4.5);
    CHECK(near(reflect(plane, reflect(plane, x)), x, 1e-14));
}

TEST_CASE("one Douglas-Rachford step")
{
    const ConvexSet a = ConvexSet::ball(v2(-2, 0), 1.95);
    const ConvexSet b = ConvexSet::ball(v2(2, 0), 2.25);
    CHECK(near(dr_step(a, b, v2(-0.1, 0)), v2(-0.1, 0), 1e-15));

    // the plotted geometry: radii 2.6 and 3.0 in plot units
    const Vector fig = dr_step(ConvexSet::ball(v2(-2, 0), 2.6), ConvexSet::ball(v2(2, 0), 3.0), v2(-5.23, 4.00));
    CHECK(near(fig, v2(-2.5988, 2.0094), 1e-2));

    // the same centres with radii 1.95 and 2.25, evaluated by hand:
    // P1 x0 = (-2,0) + 1.95 (-3.23,4)/|.|, R1 = 2 P1 - x0, R2 = 2 P2 R1 - R1, x1 = (x0 + R2)/2
    const Vector x1 = dr_step(a, b, v2(-5.23, 4.00));
    CHECK(x1(0) == doctest::Approx(-2.1601).epsilon(1e-3));
    CHECK(x1(1) == doctest::Approx(1.8365).epsilon(1e-3));

    // coordinate axes from (2,2): reflect over y=0 -> (2,-2), over x=0 -> (-2,-2), average -> (0,0)
    const ConvexSet yzero = ConvexSet::hyperplane(v2(0, 1), 0.0);
    const ConvexSet xzero = ConvexSet::hyperplane(v2(1, 0), 0.0);
    CHECK(near(dr_step(yzero, xzero, v2(2, 2)), v2(0, 0), 1e-15));
}

TEST_CASE("projector and operator properties on random pairs")
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 3.0);
    const std::vector<ConvexSet> sets{ConvexSet::ball(v2(-2, 0), 1.95), ConvexSet::ball(v2(2, 0), 2.25),
                                      ConvexSet::box(v2(-1, -1), v2(2, 0.5)), ConvexSet::hyperplane(v2(1, -1), 0.3)};
    for (int i = 0; i < 300; ++i) {
        const Vector x = v2(n(rng), n(rng)), y = v2(n(rng), n(rng));
        for (const auto& s : sets) {
            CHECK(near(s.project(s.project(x)), s.project(x), 1e-12));
            CHECK((s.project(x) - s.project(y)).norm() <= (x - y).norm() + 1e-12);
        }
        const Vector tx = dr_step(sets[0], sets[1], x), ty = dr_step(sets[0], sets[1], y);
        CHECK((tx - ty).squaredNorm() <= (tx - ty).dot(x - y) + 1e-10);
    }
}

TEST_CASE("two-disc solve")
{
    const std::vector<ConvexSet> sets{ConvexSet::ball(v2(-2, 0), 1.95), ConvexSet::ball(v2(2, 0), 2.25)};
    const Trace t = solve(sets, v2(-5.23, 4.00), 1e-6, 10000);
    CHECK(t.converged);
    CHECK(t.residual < 1e-6);
    CHECK(t.iterations < 1000);
    for (const auto& s : sets)
        CHECK(s.distance(t.shadows.back()) <= 1e-6);

    const Trace deep = solve(sets, v2(-5.23, 4.00), 1e-10, 10000);
    CHECK(deep.converged);

    const Trace at_start = solve(sets, v2(-0.1, 0), 1e-6, 10000);
    CHECK(at_start.converged);
    CHECK(at_start.iterations == 0);
    CHECK(at_start.iterates.size() == 1);

    const Trace forced = solve(sets, v2(-5.23, 4.00), 1e-6, 1);
    CHECK_FALSE(forced.converged);
    CHECK(forced.iterates.size() == 2);
}

TEST_CASE("three balls through the product space")
{
    const Vector common = v2(0.5, -0.25);
    const std::vector<ConvexSet> sets{ConvexSet::ball(common + v2(2.5, 0), 3.0),
                                      ConvexSet::ball(common + v2(-1.5, 2.0), 3.0),
                                      ConvexSet::ball(common + v2(-1.0, -2.6), 3.0)};
    const Trace t = solve(sets, v2(8, 8), 1e-6, 10000);
    CHECK(t.converged);
    for (const auto& s : sets)
        CHECK(s.distance(t.shadows.back()) <= 1e-6);
    CHECK(t.iterates.front().size() == 6);
    CHECK(t.shadows.front().size() == 2);
}

TEST_CASE("diagonal projection is the block mean")
{
    const Vector x = (Vector(6) << 1, 2, 3, 4, 5, 9).finished();
    const Vector d = project_diagonal(x, 3);
    CHECK(d(0) == 3.0);
    CHECK(d(1) == 5.0);
    CHECK(d(4) == 3.0);
    CHECK(d(5) == 5.0);
}

TEST_CASE("set file parsing")
{
    const Problem p = parse_problem("# two discs\nball -2 0 2.6\nball 2 0 3.0\nbox 0 0 1 1\nhyperplane 1 1 0.5\n"
                                    "x0 -5.23 4.00\n");
    CHECK(p.sets.size() == 4);
    REQUIRE(p.x0.has_value());
    CHECK((*p.x0)(0) == -5.23);
    CHECK_THROWS(parse_problem("ball 0 0\nball 1 0 0 1\n"));
    CHECK_THROWS(parse_problem("disc 0 0 1\n"));
    CHECK_THROWS(parse_problem("ball 0 zero 1\n"));
}

TEST_CASE("trace csv")
{
    const std::vector<ConvexSet> sets{ConvexSet::ball(v2(-2, 0), 1.95), ConvexSet::ball(v2(2, 0), 2.25)};
    const std::string csv = format_trace_csv(solve(sets, v2(-5.23, 4.00), 1e-6, 1));
    CHECK(csv.rfind("iter,x0,x1,s0,s1\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

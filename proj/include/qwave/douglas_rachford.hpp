#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qwave::dr {

using Vector = Eigen::VectorXd;

struct Ball {
    Vector center;
    double radius = 1.0;
};

struct Box {
    Vector lower;
    Vector upper;
};

// { x : <normal, x> = offset }
struct Hyperplane {
    Vector normal;
    double offset = 0.0;
};

/// A closed convex subset of R^n with an exact projector.
class ConvexSet {
public:
    // Throw std::invalid_argument when the invariants do not hold.
    static ConvexSet ball(Vector center, double radius);
    static ConvexSet box(Vector lower, Vector upper);
    static ConvexSet hyperplane(Vector normal, double offset);

    Eigen::Index dimension() const;
    std::string describe() const;

    Vector project(const Vector& x) const;
    Vector reflect(const Vector& x) const { return 2.0 * project(x) - x; }
    double distance(const Vector& x) const { return (x - project(x)).norm(); }

    const std::variant<Ball, Box, Hyperplane>& shape() const { return shape_; }

private:
    explicit ConvexSet(std::variant<Ball, Box, Hyperplane> s) : shape_{std::move(s)} {}
    void require_dimension(const Vector& x) const;

    std::variant<Ball, Box, Hyperplane> shape_;
};

Vector project(const ConvexSet& set, const Vector& x);
Vector reflect(const ConvexSet& set, const Vector& x);

// (x + R_{k2}(R_{k1}(x))) / 2
Vector dr_step(const ConvexSet& k1, const ConvexSet& k2, const Vector& x);

struct Trace {
    std::vector<Vector> iterates; // x_0 .. x_k; product-space vectors when r > 2
    std::vector<Vector> shadows;  // one per iterate, in R^n
    std::size_t iterations = 0;
    bool converged = false;
    double residual = 0.0; // max distance of the last shadow to the sets
};

/// Douglas-Rachford feasibility solve.
///
/// Two sets: x_{k+1} = T_{K1,K2} x_k with shadow P_{K1}(x_k).
/// More sets: the same iteration in R^{rn} between the diagonal D (first) and
/// the product set K1 x ... x Kr, started from x0 replicated; the shadow is
/// the mean block. Stops once the shadow lies within `tol` of every set, or
/// after `max_iter` steps with converged = false.
Trace solve(const std::vector<ConvexSet>& sets, const Vector& x0, double tol, std::size_t max_iter);

// Product-space helpers used by solve().
Vector replicate(const Vector& x, std::size_t copies);
Vector block_mean(const Vector& x, std::size_t copies);
Vector project_diagonal(const Vector& x, std::size_t copies);
Vector project_product(const std::vector<ConvexSet>& sets, const Vector& x);

/// Set-spec text: lines `ball c1 .. cn r`, `box lo1 .. lon hi1 .. hin`,
/// `hyperplane n1 .. nn b`, optional `x0 v1 .. vn`; `#` starts a comment.
/// Ball and hyperplane dimensions come from the token count.
struct Problem {
    std::vector<ConvexSet> sets;
    std::optional<Vector> x0;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);

// CSV: iter, x_0.., s_0.. per row.
std::string format_trace_csv(const Trace& trace);

} // namespace qwave::dr

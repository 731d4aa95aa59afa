#include "qwave/douglas_rachford.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwave::dr {

ConvexSet ConvexSet::ball(Vector center, double radius)
{
    if (center.size() == 0)
        throw std::invalid_argument("ball needs a non-empty center");
    if (!(radius > 0.0))
        throw std::invalid_argument("ball radius must be positive");
    return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::box(Vector lower, Vector upper)
{
    if (lower.size() == 0 || lower.size() != upper.size())
        throw std::invalid_argument("box bounds must be non-empty and of equal length");
    if ((lower.array() > upper.array()).any())
        throw std::invalid_argument("box lower bound exceeds upper bound");
    return ConvexSet(Box{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset)
{
    if (normal.size() == 0 || normal.squaredNorm() == 0.0)
        throw std::invalid_argument("hyperplane normal must be nonzero");
    return ConvexSet(Hyperplane{std::move(normal), offset});
}

Eigen::Index ConvexSet::dimension() const
{
    return std::visit(
        [](const auto& s) -> Eigen::Index {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ball>)
                return s.center.size();
            else if constexpr (std::is_same_v<S, Box>)
                return s.lower.size();
            else
                return s.normal.size();
        },
        shape_);
}

std::string ConvexSet::describe() const
{
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ball>)
                os << "ball center " << s.center.transpose() << " radius " << s.radius;
            else if constexpr (std::is_same_v<S, Box>)
                os << "box [" << s.lower.transpose() << "] .. [" << s.upper.transpose() << "]";
            else
                os << "hyperplane normal " << s.normal.transpose() << " offset " << s.offset;
        },
        shape_);
    return os.str();
}

void ConvexSet::require_dimension(const Vector& x) const
{
    if (x.size() != dimension())
        throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + ", set has " +
                                    std::to_string(dimension()));
}

Vector ConvexSet::project(const Vector& x) const
{
    require_dimension(x);
    return std::visit(
        [&](const auto& s) -> Vector {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ball>) {
                const Vector d = x - s.center;
                const double n = d.norm();
                if (n <= s.radius)
                    return x;
                return s.center + (s.radius / n) * d;
            } else if constexpr (std::is_same_v<S, Box>) {
                return x.cwiseMax(s.lower).cwiseMin(s.upper);
            } else {
                return x - ((s.normal.dot(x) - s.offset) / s.normal.squaredNorm()) * s.normal;
            }
        },
        shape_);
}

Vector project(const ConvexSet& set, const Vector& x) { return set.project(x); }
Vector reflect(const ConvexSet& set, const Vector& x) { return set.reflect(x); }

Vector dr_step(const ConvexSet& k1, const ConvexSet& k2, const Vector& x)
{
    return 0.5 * (x + k2.reflect(k1.reflect(x)));
}

Vector replicate(const Vector& x, std::size_t copies)
{
    return x.replicate(static_cast<Eigen::Index>(copies), 1);
}

Vector block_mean(const Vector& x, std::size_t copies)
{
    const Eigen::Index n = x.size() / static_cast<Eigen::Index>(copies);
    Vector mean = Vector::Zero(n);
    for (std::size_t j = 0; j < copies; ++j)
        mean += x.segment(static_cast<Eigen::Index>(j) * n, n);
    return mean / static_cast<double>(copies);
}

Vector project_diagonal(const Vector& x, std::size_t copies) { return replicate(block_mean(x, copies), copies); }

Vector project_product(const std::vector<ConvexSet>& sets, const Vector& x)
{
    const Eigen::Index n = sets.front().dimension();
    Vector out(x.size());
    for (std::size_t j = 0; j < sets.size(); ++j) {
        const Eigen::Index at = static_cast<Eigen::Index>(j) * n;
        out.segment(at, n) = sets[j].project(x.segment(at, n));
    }
    return out;
}

Trace solve(const std::vector<ConvexSet>& sets, const Vector& x0, double tol, std::size_t max_iter)
{
    if (sets.size() < 2)
        throw std::invalid_argument("feasibility solve needs at least two sets");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    for (const auto& s : sets)
        if (s.dimension() != x0.size())
            throw std::invalid_argument("set '" + s.describe() + "' does not match the starting point's dimension " +
                                        std::to_string(x0.size()));

    const std::size_t r = sets.size();
    const bool pierra = r > 2;

    auto shadow_of = [&](const Vector& x) -> Vector {
        return pierra ? block_mean(x, r) : sets[0].project(x);
    };
    auto step = [&](const Vector& x) -> Vector {
        if (!pierra)
            return dr_step(sets[0], sets[1], x);
        const Vector rd = 2.0 * project_diagonal(x, r) - x;
        const Vector rc = 2.0 * project_product(sets, rd) - rd;
        return 0.5 * (x + rc);
    };
    auto residual_of = [&](const Vector& s) {
        double worst = 0.0;
        for (const auto& set : sets)
            worst = std::max(worst, set.distance(s));
        return worst;
    };

    Trace trace;
    Vector x = pierra ? replicate(x0, r) : x0;
    for (;;) {
        const Vector s = shadow_of(x);
        trace.iterates.push_back(x);
        trace.shadows.push_back(s);
        trace.residual = residual_of(s);
        if (trace.residual <= tol) {
            trace.converged = true;
            break;
        }
        if (trace.iterations >= max_iter)
            break;
        x = step(x);
        ++trace.iterations;
    }
    return trace;
}

namespace {

Vector to_vector(const std::vector<double>& v, std::size_t from, std::size_t count)
{
    Vector out(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i)
        out(static_cast<Eigen::Index>(i)) = v[from + i];
    return out;
}

} // namespace

Problem parse_problem(const std::string& text)
{
    Problem p;
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind))
            continue;
        std::vector<double> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                nums.push_back(std::stod(tok, &used));
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("line " + std::to_string(no) + ": non-numeric value '" + tok + "'");
            }
        }
        const std::string where = "line " + std::to_string(no) + ": ";
        try {
            if (kind == "ball") {
                if (nums.size() < 2)
                    throw std::runtime_error("ball needs a center and a radius");
                p.sets.push_back(ConvexSet::ball(to_vector(nums, 0, nums.size() - 1), nums.back()));
            } else if (kind == "hyperplane") {
                if (nums.size() < 2)
                    throw std::runtime_error("hyperplane needs a normal and an offset");
                p.sets.push_back(ConvexSet::hyperplane(to_vector(nums, 0, nums.size() - 1), nums.back()));
            } else if (kind == "box") {
                if (nums.empty() || nums.size() % 2 != 0)
                    throw std::runtime_error("box needs matching lower and upper bounds");
                const std::size_t n = nums.size() / 2;
                p.sets.push_back(ConvexSet::box(to_vector(nums, 0, n), to_vector(nums, n, n)));
            } else if (kind == "x0") {
                if (nums.empty())
                    throw std::runtime_error("x0 needs coordinates");
                p.x0 = to_vector(nums, 0, nums.size());
            } else {
                throw std::runtime_error("unknown set kind '" + kind + "'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(where + e.what());
        }
    }
    if (!p.sets.empty())
        for (const auto& s : p.sets)
            if (s.dimension() != p.sets.front().dimension())
                throw std::runtime_error("sets have different dimensions");
    return p;
}

Problem load_problem(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open set file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string format_trace_csv(const Trace& trace)
{
    std::string out = "iter";
    if (!trace.iterates.empty()) {
        for (Eigen::Index i = 0; i < trace.iterates.front().size(); ++i)
            out += ",x" + std::to_string(i);
        for (Eigen::Index i = 0; i < trace.shadows.front().size(); ++i)
            out += ",s" + std::to_string(i);
    }
    out += '\n';
    char buf[64];
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        out += std::to_string(k);
        for (const Vector* v : {&trace.iterates[k], &trace.shadows[k]})
            for (Eigen::Index i = 0; i < v->size(); ++i) {
                std::snprintf(buf, sizeof buf, ",%.17g", (*v)(i));
                out += buf;
            }
        out += '\n';
    }
    return out;
}

} // namespace qwave::dr

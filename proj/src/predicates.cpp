#include "crackgen/predicates.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace crackgen::predicates {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

// Nonoverlapping expansion, components in increasing magnitude, zeros eliminated.
using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

Expansion grow(const Expansion& e, double b) {
    Expansion h;
    h.reserve(e.size() + 1);
    double q = b;
    for (double ei : e) {
        double sum, err;
        two_sum(q, ei, sum, err);
        if (err != 0.0) h.push_back(err);
        q = sum;
    }
    if (q != 0.0 || h.empty()) h.push_back(q);
    return h;
}

Expansion add(const Expansion& e, const Expansion& f) {
    Expansion h = e;
    for (double fi : f) h = grow(h, fi);
    return h;
}

Expansion negate(Expansion e) {
    for (double& x : e) x = -x;
    return e;
}

Expansion scale(const Expansion& e, double b) {
    Expansion h;
    h.reserve(2 * e.size());
    double q, hh;
    two_product(e[0], b, q, hh);
    if (hh != 0.0) h.push_back(hh);
    for (std::size_t i = 1; i < e.size(); ++i) {
        double p1, p0, sum;
        two_product(e[i], b, p1, p0);
        two_sum(q, p0, sum, hh);
        if (hh != 0.0) h.push_back(hh);
        two_sum(p1, sum, q, hh);
        if (hh != 0.0) h.push_back(hh);
    }
    if (q != 0.0 || h.empty()) h.push_back(q);
    return h;
}

Expansion mul(const Expansion& e, const Expansion& f) {
    Expansion h{0.0};
    for (double fi : f) h = add(h, scale(e, fi));
    return h;
}

Expansion diff(double a, double b) {
    double x, y;
    two_sum(a, -b, x, y);
    return y != 0.0 ? Expansion{y, x} : Expansion{x};
}

double most_significant(const Expansion& e) {
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        if (*it != 0.0) return *it;
    return 0.0;
}

double orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
    const Expansion left = mul(diff(a.x(), c.x()), diff(b.y(), c.y()));
    const Expansion right = mul(diff(a.y(), c.y()), diff(b.x(), c.x()));
    return most_significant(add(left, negate(right)));
}

double incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const Expansion adx = diff(a.x(), d.x()), ady = diff(a.y(), d.y());
    const Expansion bdx = diff(b.x(), d.x()), bdy = diff(b.y(), d.y());
    const Expansion cdx = diff(c.x(), d.x()), cdy = diff(c.y(), d.y());
    const Expansion alift = add(mul(adx, adx), mul(ady, ady));
    const Expansion blift = add(mul(bdx, bdx), mul(bdy, bdy));
    const Expansion clift = add(mul(cdx, cdx), mul(cdy, cdy));
    const Expansion bc = add(mul(bdx, cdy), negate(mul(bdy, cdx)));
    const Expansion ca = add(mul(cdx, ady), negate(mul(cdy, adx)));
    const Expansion ab = add(mul(adx, bdy), negate(mul(ady, bdx)));
    return most_significant(add(add(mul(alift, bc), mul(blift, ca)), mul(clift, ab)));
}

}  // namespace

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    const double left = (a.x() - c.x()) * (b.y() - c.y());
    const double right = (a.y() - c.y()) * (b.x() - c.x());
    const double det = left - right;
    const double bound = kOrientBound * (std::abs(left) + std::abs(right));
    if (det > bound || -det > bound) return det;
    return orient2d_exact(a, b, c);
}

double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double bound = kIncircleBound * permanent;
    if (det > bound || -det > bound) return det;
    return incircle_exact(a, b, c, d);
}

}  // namespace crackgen::predicates

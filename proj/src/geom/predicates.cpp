#include "ddc/geom/predicates.hpp"

#include <cfloat>
#include <cmath>

// Orientation uses the classic filtered evaluation with an exact expansion
// fallback (Shewchuk's scheme): the fast path is two multiplications, and the
// slow path computes the determinant as a sum of nonoverlapping doubles whose
// top component carries the true sign.

namespace ddc {
namespace {

constexpr double kEps = DBL_EPSILON / 2.0; // 2^-53
constexpr double kSplitter = 134217729.0;  // 2^27 + 1

constexpr double kResultErrBound = (3.0 + 8.0 * kEps) * kEps;
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;
constexpr double kCcwErrBoundB = (2.0 + 12.0 * kEps) * kEps;
constexpr double kCcwErrBoundC = (9.0 + 64.0 * kEps) * kEps * kEps;
constexpr double kIccErrBoundA = (10.0 + 96.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    const double bv = a - x;
    const double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void two_diff_tail(double a, double b, double x, double& y) {
    const double bv = a - x;
    const double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void split(double a, double& hi, double& lo) {
    const double c = kSplitter * a;
    const double big = c - a;
    hi = c - big;
    lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    double ahi, alo, bhi, blo;
    split(a, ahi, alo);
    split(b, bhi, blo);
    const double e1 = x - ahi * bhi;
    const double e2 = e1 - alo * bhi;
    const double e3 = e2 - ahi * blo;
    y = alo * blo - e3;
}

inline void two_one_diff(double a1, double a0, double b, double& x2, double& x1, double& x0) {
    double i;
    two_diff(a0, b, i, x0);
    two_sum(a1, i, x2, x1);
}

// (a1,a0) - (b1,b0) -> four-component expansion x3..x0 (increasing index =
// increasing magnitude).
inline void two_two_diff(double a1, double a0, double b1, double b0,
                         double& x3, double& x2, double& x1, double& x0) {
    double j, r0;
    two_one_diff(a1, a0, b0, j, r0, x0);
    two_one_diff(j, r0, b1, x3, x2, x1);
}

inline double estimate(int n, const double* e) {
    double q = e[0];
    for (int i = 1; i < n; ++i) q += e[i];
    return q;
}

// |a| <= |b| without fabs, as in the original.
inline bool smaller_mag(double a, double b) {
    return (b > a) == (b > -a);
}

// Merge two nonoverlapping expansions into one, dropping zero components.
// Components are consumed in order of increasing magnitude; every partial sum
// is exact, so the top output component determines the sign of the total.
int expansion_sum_zeroelim(int en, const double* e, int fn, const double* f, double* h) {
    int ei = 0, fi = 0, hn = 0;
    double q = 0.0;
    bool have_q = false;
    while (ei < en || fi < fn) {
        double now;
        if (ei < en && (fi >= fn || smaller_mag(e[ei], f[fi]))) {
            now = e[ei++];
        } else {
            now = f[fi++];
        }
        if (!have_q) {
            q = now;
            have_q = true;
            continue;
        }
        double qnew, hh;
        two_sum(q, now, qnew, hh);
        q = qnew;
        if (hh != 0.0) h[hn++] = hh;
    }
    if (q != 0.0 || hn == 0) h[hn++] = q;
    return hn;
}

double orient2d_adapt(const Point2D& a, const Point2D& b, const Point2D& c, double detsum) {
    const double acx = a.x - c.x;
    const double bcx = b.x - c.x;
    const double acy = a.y - c.y;
    const double bcy = b.y - c.y;

    double detleft, detlefttail, detright, detrighttail;
    two_product(acx, bcy, detleft, detlefttail);
    two_product(acy, bcx, detright, detrighttail);

    double B[4];
    two_two_diff(detleft, detlefttail, detright, detrighttail, B[3], B[2], B[1], B[0]);

    double det = estimate(4, B);
    double errbound = kCcwErrBoundB * detsum;
    if (det >= errbound || -det >= errbound) return det;

    double acxtail, acytail, bcxtail, bcytail;
    two_diff_tail(a.x, c.x, acx, acxtail);
    two_diff_tail(b.x, c.x, bcx, bcxtail);
    two_diff_tail(a.y, c.y, acy, acytail);
    two_diff_tail(b.y, c.y, bcy, bcytail);

    if (acxtail == 0.0 && acytail == 0.0 && bcxtail == 0.0 && bcytail == 0.0) return det;

    errbound = kCcwErrBoundC * detsum + kResultErrBound * std::fabs(det);
    det += (acx * bcytail + bcy * acxtail) - (acy * bcxtail + bcx * acytail);
    if (det >= errbound || -det >= errbound) return det;

    double s1, s0, t1, t0;
    double u[4];
    double C1[8], C2[12], D[16];

    two_product(acxtail, bcy, s1, s0);
    two_product(acytail, bcx, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    const int c1len = expansion_sum_zeroelim(4, B, 4, u, C1);

    two_product(acx, bcytail, s1, s0);
    two_product(acy, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    const int c2len = expansion_sum_zeroelim(c1len, C1, 4, u, C2);

    two_product(acxtail, bcytail, s1, s0);
    two_product(acytail, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    const int dlen = expansion_sum_zeroelim(c2len, C2, 4, u, D);

    return D[dlen - 1];
}

} // namespace

double orient2d(const Point2D& a, const Point2D& b, const Point2D& c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    double detsum;

    if (detleft > 0.0) {
        if (detright <= 0.0) return det;
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det;
        detsum = -detleft - detright;
    } else {
        return det;
    }

    const double errbound = kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return det;
    return orient2d_adapt(a, b, c, detsum);
}

double incircle(const Point2D& a, const Point2D& b, const Point2D& c, const Point2D& d) {
    const double adx = a.x - d.x;
    const double bdx = b.x - d.x;
    const double cdx = c.x - d.x;
    const double ady = a.y - d.y;
    const double bdy = b.y - d.y;
    const double cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy;
    const double cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;

    const double cdxady = cdx * ady;
    const double adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;

    const double adxbdy = adx * bdy;
    const double bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                       clift * (adxbdy - bdxady);

    const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                             (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                             (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    const double errbound = kIccErrBoundA * permanent;
    if (det > errbound || -det > errbound) return det;

    // Re-evaluate in extended precision; below the long double error bound
    // the point is reported as exactly on the circle.
    const long double ladx = (long double)a.x - d.x;
    const long double lbdx = (long double)b.x - d.x;
    const long double lcdx = (long double)c.x - d.x;
    const long double lady = (long double)a.y - d.y;
    const long double lbdy = (long double)b.y - d.y;
    const long double lcdy = (long double)c.y - d.y;

    const long double lal = ladx * ladx + lady * lady;
    const long double lbl = lbdx * lbdx + lbdy * lbdy;
    const long double lcl = lcdx * lcdx + lcdy * lcdy;

    const long double ldet = lal * (lbdx * lcdy - lcdx * lbdy) +
                             lbl * (lcdx * lady - ladx * lcdy) +
                             lcl * (ladx * lbdy - lbdx * lady);
    const long double lperm = fabsl(lbdx * lcdy) * lal + fabsl(lcdx * lbdy) * lal +
                              fabsl(lcdx * lady) * lbl + fabsl(ladx * lcdy) * lbl +
                              fabsl(ladx * lbdy) * lcl + fabsl(lbdx * lady) * lcl;
    const long double lerr = 16.0L * LDBL_EPSILON * lperm;
    if (ldet > lerr) return 1.0;
    if (ldet < -lerr) return -1.0;
    return 0.0;
}

} // namespace ddc

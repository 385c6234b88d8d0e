#include "rngperc/predicates.hpp"

#include <cmath>
#include <cstring>

namespace rngperc {

namespace {

// Error-free transformations (Dekker/Knuth/Shewchuk).

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
  // requires |a| >= |b|
  x = a + b;
  y = b - (x - a);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void split(double a, double& hi, double& lo) {
  const double c = 134217729.0 * a;  // 2^27 + 1
  const double big = c - a;
  hi = c - big;
  lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  const double e1 = x - ah * bh;
  const double e2 = e1 - al * bh;
  const double e3 = e2 - ah * bl;
  y = al * bl - e3;
}

// Nonoverlapping expansion with fixed capacity; all 2D predicate intermediates
// stay far below this bound, and overflow is trapped.
struct Expansion {
  static constexpr int kCap = 2048;
  int len = 0;
  double c[kCap];

  Expansion() = default;
  Expansion(const Expansion& o) : len(o.len) { std::memcpy(c, o.c, sizeof(double) * o.len); }
  Expansion& operator=(const Expansion& o) {
    len = o.len;
    std::memmove(c, o.c, sizeof(double) * o.len);
    return *this;
  }

  static Expansion from_two(double hi, double lo) {
    Expansion e;
    e.len = 2;
    e.c[0] = lo;
    e.c[1] = hi;
    return e;
  }
  int sign() const {
    for (int i = len - 1; i >= 0; --i) {
      if (c[i] > 0.0) return 1;
      if (c[i] < 0.0) return -1;
    }
    return 0;
  }
};

// fast_expansion_sum_zeroelim, ported with explicit bounds handling.
Expansion add(const Expansion& e, const Expansion& f) {
  Expansion h;
  double Q, Qnew, hh;
  int ei = 0, fi = 0;
  auto enext = [&]() { return ei < e.len ? e.c[ei] : 0.0; };
  auto fnext = [&]() { return fi < f.len ? f.c[fi] : 0.0; };
  double enow = enext(), fnow = fnext();
  if (e.len == 0) return f;
  if (f.len == 0) return e;
  if ((fnow > enow) == (fnow > -enow)) {
    Q = enow;
    ++ei;
    enow = enext();
  } else {
    Q = fnow;
    ++fi;
    fnow = fnext();
  }
  if (ei < e.len && fi < f.len) {
    if ((fnow > enow) == (fnow > -enow)) {
      fast_two_sum(enow, Q, Qnew, hh);
      ++ei;
      enow = enext();
    } else {
      fast_two_sum(fnow, Q, Qnew, hh);
      ++fi;
      fnow = fnext();
    }
    Q = Qnew;
    if (hh != 0.0) h.c[h.len++] = hh;
    while (ei < e.len && fi < f.len) {
      if ((fnow > enow) == (fnow > -enow)) {
        two_sum(Q, enow, Qnew, hh);
        ++ei;
        enow = enext();
      } else {
        two_sum(Q, fnow, Qnew, hh);
        ++fi;
        fnow = fnext();
      }
      Q = Qnew;
      if (hh != 0.0) h.c[h.len++] = hh;
    }
  }
  while (ei < e.len) {
    two_sum(Q, enow, Qnew, hh);
    ++ei;
    enow = enext();
    Q = Qnew;
    if (hh != 0.0) h.c[h.len++] = hh;
  }
  while (fi < f.len) {
    two_sum(Q, fnow, Qnew, hh);
    ++fi;
    fnow = fnext();
    Q = Qnew;
    if (hh != 0.0) h.c[h.len++] = hh;
  }
  if (Q != 0.0 || h.len == 0) h.c[h.len++] = Q;
  return h;
}

Expansion negate(Expansion e) {
  for (int i = 0; i < e.len; ++i) e.c[i] = -e.c[i];
  return e;
}

Expansion sub(const Expansion& e, const Expansion& f) { return add(e, negate(f)); }

// scale_expansion_zeroelim.
Expansion scale(const Expansion& e, double b) {
  Expansion h;
  if (e.len == 0 || b == 0.0) {
    h.len = 1;
    h.c[0] = 0.0;
    return h;
  }
  double Q, sum, hh, product1, product0;
  two_product(e.c[0], b, Q, hh);
  if (hh != 0.0) h.c[h.len++] = hh;
  for (int i = 1; i < e.len; ++i) {
    two_product(e.c[i], b, product1, product0);
    two_sum(Q, product0, sum, hh);
    if (hh != 0.0) h.c[h.len++] = hh;
    fast_two_sum(product1, sum, Q, hh);
    if (hh != 0.0) h.c[h.len++] = hh;
  }
  if (Q != 0.0 || h.len == 0) h.c[h.len++] = Q;
  return h;
}

Expansion mul(const Expansion& e, const Expansion& f) {
  Expansion acc;
  acc.len = 1;
  acc.c[0] = 0.0;
  for (int i = 0; i < f.len; ++i) acc = add(acc, scale(e, f.c[i]));
  return acc;
}

Expansion diff_expansion(double a, double b) {
  double x, y;
  two_diff(a, b, x, y);
  return Expansion::from_two(x, y);
}

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBoundA = (10.0 + 96.0 * kEps) * kEps;

int orient2d_exact(Point a, Point b, Point c) {
  const Expansion acx = diff_expansion(a.x, c.x);
  const Expansion acy = diff_expansion(a.y, c.y);
  const Expansion bcx = diff_expansion(b.x, c.x);
  const Expansion bcy = diff_expansion(b.y, c.y);
  const Expansion det = sub(mul(acx, bcy), mul(acy, bcx));
  return det.sign();
}

int incircle_exact(Point a, Point b, Point c, Point d) {
  const Expansion adx = diff_expansion(a.x, d.x);
  const Expansion ady = diff_expansion(a.y, d.y);
  const Expansion bdx = diff_expansion(b.x, d.x);
  const Expansion bdy = diff_expansion(b.y, d.y);
  const Expansion cdx = diff_expansion(c.x, d.x);
  const Expansion cdy = diff_expansion(c.y, d.y);

  const Expansion alift = add(mul(adx, adx), mul(ady, ady));
  const Expansion blift = add(mul(bdx, bdx), mul(bdy, bdy));
  const Expansion clift = add(mul(cdx, cdx), mul(cdy, cdy));

  const Expansion bxcy = sub(mul(bdx, cdy), mul(cdx, bdy));
  const Expansion axcy = sub(mul(adx, cdy), mul(cdx, ady));
  const Expansion axby = sub(mul(adx, bdy), mul(bdx, ady));

  const Expansion det = add(sub(mul(alift, bxcy), mul(blift, axcy)), mul(clift, axby));
  return det.sign();
}

}  // namespace

int orient2d_sign(Point a, Point b, Point c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }
  const double errbound = kCcwErrBoundA * detsum;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return orient2d_exact(a, b, c);
}

int incircle_sign(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double errbound = kIccErrBoundA * permanent;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return incircle_exact(a, b, c, d);
}

int compare_dist2_exact(Point a, Point b, Point c, Point d) {
  const Expansion abx = diff_expansion(a.x, b.x);
  const Expansion aby = diff_expansion(a.y, b.y);
  const Expansion cdx = diff_expansion(c.x, d.x);
  const Expansion cdy = diff_expansion(c.y, d.y);
  const Expansion lhs = add(mul(abx, abx), mul(aby, aby));
  const Expansion rhs = add(mul(cdx, cdx), mul(cdy, cdy));
  return sub(lhs, rhs).sign();
}

}  // namespace rngperc

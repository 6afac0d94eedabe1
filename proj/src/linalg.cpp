#include "freeconv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fc {

namespace {

double hypot2(double a, double b) {
  const double absa = std::abs(a), absb = std::abs(b);
  if (absa > absb) {
    const double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  if (absb == 0.0) return 0.0;
  const double r = absa / absb;
  return absb * std::sqrt(1.0 + r * r);
}

}  // namespace

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

SquareMatrix haar_orthogonal(int n, Rng& rng) {
  SquareMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = rng.normal();

  // Householder QR; v vectors overwrite the strict lower triangle columns.
  std::vector<double> rdiag(n, 0.0);
  std::vector<double> v(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm = hypot2(norm, a.at(i, k));
    if (norm == 0.0) {
      rdiag[k] = 0.0;
      continue;
    }
    if (a.at(k, k) > 0.0) norm = -norm;  // alpha has opposite sign of pivot
    for (int i = k; i < n; ++i) v[i] = a.at(i, k);
    v[k] -= norm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    rdiag[k] = norm;
    if (vnorm2 == 0.0) continue;
    for (int i = k; i < n; ++i) a.at(i, k) = v[i];  // store reflector
    for (int j = k + 1; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += v[i] * a.at(i, j);
      const double c = 2.0 * dot / vnorm2;
      for (int i = k; i < n; ++i) a.at(i, j) -= c * v[i];
    }
  }

  // Form Q by applying the reflectors to the identity from the left,
  // in reverse order.
  SquareMatrix q(n);
  for (int i = 0; i < n; ++i) q.at(i, i) = 1.0;
  for (int k = n - 1; k >= 0; --k) {
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = a.at(i, k);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0 || rdiag[k] == 0.0) continue;
    for (int j = k; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += v[i] * q.at(i, j);
      const double c = 2.0 * dot / vnorm2;
      for (int i = k; i < n; ++i) q.at(i, j) -= c * v[i];
    }
  }

  // Fix the R diagonal signs positive; the resulting Q is Haar on O(n).
  for (int j = 0; j < n; ++j)
    if (rdiag[j] < 0.0)
      for (int i = 0; i < n; ++i) q.at(i, j) = -q.at(i, j);
  return q;
}

void add_conjugated_diagonal(SquareMatrix& a, const SquareMatrix& q,
                             const std::vector<double>& d) {
  const int n = q.n();
  // b = q * diag(d), then a += b * q^T on the upper triangle, mirrored.
  SquareMatrix b(n);
  for (int i = 0; i < n; ++i) {
    const double* qi = q.row(i);
    double* bi = b.row(i);
    for (int j = 0; j < n; ++j) bi[j] = qi[j] * d[j];
  }
  for (int i = 0; i < n; ++i) {
    const double* bi = b.row(i);
    for (int j = i; j < n; ++j) {
      const double* qj = q.row(j);
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += bi[k] * qj[k];
      a.at(i, j) += dot;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) a.at(i, j) = a.at(j, i);
}

// Householder reduction of a symmetric matrix to tridiagonal form, without
// accumulating the transformation (eigenvalues only).
static void tridiagonalize(SquareMatrix& a, std::vector<double>& d,
                           std::vector<double>& e) {
  const int n = a.n();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(a.at(i, k));
      if (scale == 0.0) {
        e[i] = a.at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a.at(i, k) /= scale;
          h += a.at(i, k) * a.at(i, k);
        }
        double f = a.at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a.at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a.at(j, k) * a.at(i, k);
          for (int k = j + 1; k <= l; ++k) g += a.at(k, j) * a.at(i, k);
          e[j] = g / h;
          f += e[j] * a.at(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a.at(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k)
            a.at(j, k) -= f * e[k] + g * a.at(i, k);
        }
      }
    } else {
      e[i] = a.at(i, l);
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = a.at(i, i);
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-18 * dd || e[m] == 0.0) break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw std::runtime_error("tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<double> symmetric_eigenvalues(SquareMatrix a) {
  std::vector<double> d, e;
  tridiagonalize(a, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace fc

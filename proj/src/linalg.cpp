#include "tirlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tirlab/error.hpp"

namespace tirlab {

namespace {

constexpr int kMaxSweeps = 100;

void check_finite(const Matrix& m, const char* what) {
  if (!m.all_finite()) fail(Errc::invalid_argument, std::string(what) + ": non-finite entries");
}

double max_offdiag(const Matrix& a) {
  double m = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) m = std::max(m, std::abs(a(p, q)));
  return m;
}

// Cyclic Jacobi sweeps on a working copy. The diagonal converges to the
// eigenvalues; each rotation annihilates one off-diagonal pair exactly.
std::vector<double> jacobi_descending(Matrix a) {
  const std::size_t n = a.rows();
  if (n == 1) return {a(0, 0)};

  // The 1e-12 target is an absolute threshold at unit scale; for larger
  // matrices it is scaled by the Frobenius norm, since double precision
  // cannot push the off-diagonal below roughly eps * |A|.
  const double tol = 1e-12 * std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_offdiag(a) <= tol) {
      std::vector<double> ev;
      ev.reserve(n);
      for (std::size_t i = 0; i < n; ++i) ev.push_back(a(i, i));
      std::sort(ev.begin(), ev.end(), std::greater<>());
      return ev;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  fail(Errc::no_convergence, "eigensolver did not converge within the sweep cap");
}

Matrix gram_smaller(const Matrix& p) {
  if (p.cols() <= p.rows()) {
    Matrix g(p.cols(), p.cols());
    for (std::size_t i = 0; i < p.cols(); ++i) {
      for (std::size_t j = i; j < p.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < p.rows(); ++r) acc += p(r, i) * p(r, j);
        g(i, j) = g(j, i) = acc;
      }
    }
    return g;
  }
  Matrix g(p.rows(), p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = i; j < p.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < p.cols(); ++c) acc += p(i, c) * p(j, c);
      g(i, j) = g(j, i) = acc;
    }
  }
  return g;
}

}  // namespace

std::vector<double> sym_eigenvalues(const Matrix& g) {
  require(g.rows() == g.cols(), Errc::dimension_mismatch, "sym_eigenvalues: matrix not square");
  check_finite(g, "sym_eigenvalues");
  const double sym_tol = 1e-12 * std::max(1.0, g.max_abs());
  for (std::size_t r = 0; r + 1 < g.rows(); ++r)
    for (std::size_t c = r + 1; c < g.cols(); ++c)
      require(std::abs(g(r, c) - g(c, r)) <= sym_tol, Errc::invalid_argument,
              "sym_eigenvalues: matrix not symmetric");

  auto ev = jacobi_descending(g);
  for (double& v : ev) {
    if (v < -1e-9)
      fail(Errc::invalid_argument,
           "sym_eigenvalues: negative eigenvalue on input expected to be PSD");
    if (v < 0.0) v = 0.0;
  }
  return ev;
}

SingularSpectrum singular_values(const Matrix& p) {
  check_finite(p, "singular_values");
  const auto ev = sym_eigenvalues(gram_smaller(p));
  SingularSpectrum spectrum;
  spectrum.values.reserve(ev.size());
  for (double v : ev) spectrum.values.push_back(std::sqrt(v));
  return spectrum;
}

double nuclear_norm(const Matrix& p) {
  double sum = 0.0;
  for (double s : singular_values(p).values) sum += s;
  return sum;
}

double frobenius_norm(const Matrix& p) {
  check_finite(p, "frobenius_norm");
  double sum = 0.0;
  for (double v : p.data()) sum += v * v;
  return std::sqrt(sum);
}

double weighted_nuclear_norm(const Matrix& p, double k) {
  require(k >= 1.0, Errc::invalid_argument, "weighted_nuclear_norm: k must be >= 1");
  double sum = 0.0;
  for (double s : singular_values(p).values) {
    if (s > 0.0) sum += std::pow(s, 1.0 / k);
  }
  return sum;
}

double k_schedule(long round, long total_rounds, double k_ini) {
  require(total_rounds >= 1, Errc::invalid_argument, "k_schedule: total_rounds must be >= 1");
  require(round >= 0 && round <= total_rounds, Errc::invalid_argument,
          "k_schedule: round must lie in [0, total_rounds]");
  require(k_ini >= 1.0, Errc::invalid_argument, "k_schedule: k_ini must be >= 1");
  if (round == 0) return k_ini;
  if (round == total_rounds) return 1.0;
  return k_ini - (static_cast<double>(round) / static_cast<double>(total_rounds)) * (k_ini - 1.0);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), Errc::dimension_mismatch, "matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double arK = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += arK * b(k, c);
    }
  return out;
}

}  // namespace tirlab

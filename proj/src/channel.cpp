#include "dfakit/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfakit {

namespace {

constexpr double kIsometryTol = 1e-10;

ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
  const ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> random_weights(Eigen::Index k, Rng& rng) {
  // bounded below by 1/(3k): no operator carries vanishing mass
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& x : w) {
    x = 0.5 + u(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

KrausChannel random_mixed_unitary(Eigen::Index n, Eigen::Index k, Rng& rng) {
  const auto w = random_weights(k, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    kraus.push_back(std::sqrt(w[static_cast<std::size_t>(i)]) * haar_unitary(n, rng));
  }
  return KrausChannel(n, std::move(kraus));
}

KrausChannel random_luders(Eigen::Index n, Eigen::Index k, Rng& rng) {
  std::vector<ComplexMatrix> parts;
  parts.reserve(static_cast<std::size_t>(k));
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < k; ++i) {
    const ComplexMatrix g = ginibre(n, n, rng);
    parts.push_back(g * g.adjoint());
    total += parts.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::runtime_error("degenerate sample while building a POVM");
  }
  const ComplexMatrix inv_sqrt = es.eigenvectors() *
                                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(parts.size());
  for (const auto& p : parts) {
    kraus.push_back(sqrt_psd(inv_sqrt * p * inv_sqrt));
  }
  return KrausChannel(n, std::move(kraus));
}

}  // namespace

KrausChannel::KrausChannel(Eigen::Index dim, std::vector<ComplexMatrix> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim_ < 1) throw std::invalid_argument("channel dimension must be positive");
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  for (const auto& a : kraus_) {
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw std::invalid_argument("Kraus operator shape does not match channel dimension");
    }
    if (!a.allFinite()) {
      throw std::invalid_argument("Kraus operator has non-finite entries");
    }
  }
}

ChannelFlags validate(const KrausChannel& ch, double tol) {
  const Eigen::Index n = ch.dim();
  ComplexMatrix unital_sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix trace_sum = ComplexMatrix::Zero(n, n);
  for (const auto& a : ch.kraus()) {
    unital_sum += a.adjoint() * a;
    trace_sum += a * a.adjoint();
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ChannelFlags flags{};
  flags.unital_residual = (unital_sum - id).norm();
  flags.trace_residual = (trace_sum - id).norm();
  flags.unital = flags.unital_residual < tol;
  flags.trace_preserving = flags.trace_residual < tol;
  return flags;
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.dim() || x.cols() != ch.dim()) {
    throw std::invalid_argument("matrix shape does not match channel dimension");
  }
  ComplexMatrix acc = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& a : ch.kraus()) {
    acc += a.adjoint() * x * a;
  }
  return acc;
}

ComplexMatrix dissipation(const KrausChannel& ch, const ComplexMatrix& x) {
  const ComplexMatrix phi_x = dfakit::apply(ch, x);
  return dfakit::apply(ch, (x.adjoint() * x).eval()) - phi_x.adjoint() * phi_x;
}

ComplexMatrix dilation_kron(const ComplexMatrix& sys_op, const ComplexMatrix& env_op) {
  // env-major layout: row index = env * n + sys
  return Eigen::kroneckerProduct(env_op, sys_op).eval();
}

StinespringDilation stinespring(const KrausChannel& ch) {
  const Eigen::Index n = ch.dim();
  const Eigen::Index m = ch.num_kraus();
  ComplexMatrix v(n * m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    v.block(i * n, 0, n, n) = ch.kraus()[static_cast<std::size_t>(i)];
  }

  const ComplexMatrix env_id = ComplexMatrix::Identity(m, m);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      ComplexMatrix unit = ComplexMatrix::Zero(n, n);
      unit(k, l) = 1.0;
      const ComplexMatrix lhs = v.adjoint() * dilation_kron(unit, env_id) * v;
      worst = std::max(worst, (lhs - dfakit::apply(ch, unit)).norm());
    }
  }
  if (worst > 1e-12) {
    throw std::logic_error("dilation does not reproduce the channel action");
  }
  return {n, m, std::move(v)};
}

RangeProjector range_projector(const KrausChannel& ch, double tol,
                               const RankPolicy& policy) {
  const StinespringDilation dil = stinespring(ch);
  const Eigen::Index n = dil.n;
  const Eigen::Index m = dil.m;

  // column (k,l,s): the vector (E_kl (x) 1) V e_s, which has environment
  // block i equal to V(i*n + l, s) * e_k
  ComplexMatrix cols = ComplexMatrix::Zero(n * m, n * n * n);
  Eigen::Index c = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index s = 0; s < n; ++s, ++c) {
        for (Eigen::Index i = 0; i < m; ++i) {
          cols(i * n + k, c) = dil.v(i * n + l, s);
        }
      }
    }
  }

  // JacobiSVD for the same reason as in nullspace: these columns carry many
  // repeated singular values and BDCSVD deflation is not trustworthy here
  Eigen::JacobiSVD<ComplexMatrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index r = 0;
  if (sigma_max > 0.0) {
    const double tau = policy.threshold(sigma_max, cols.rows(), cols.cols());
    while (r < sv.size() && sv(r) >= tau) ++r;
  }
  const ComplexMatrix u = svd.matrixU().leftCols(r);

  RangeProjector out{};
  out.p_tilde = u * u.adjoint();

  out.p_env = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index s = 0; s < n; ++s) acc += out.p_tilde(i * n + s, j * n + s);
      out.p_env(i, j) = acc / static_cast<double>(n);
    }
  }

  out.factorization_residual =
      (out.p_tilde - dilation_kron(ComplexMatrix::Identity(n, n), out.p_env)).norm();
  if (out.factorization_residual >= tol) {
    throw std::runtime_error("range projector does not factor through the environment");
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.p_env, Eigen::EigenvaluesOnly);
  out.rank = (es.eigenvalues().array() > 0.5).count();
  return out;
}

ReducedKraus reduce_kraus(const KrausChannel& ch, double rel_tol) {
  const Eigen::Index n = ch.dim();
  const Eigen::Index m = ch.num_kraus();

  ComplexMatrix gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      gram(i, j) = hs_inner(ch.kraus()[static_cast<std::size_t>(i)],
                            ch.kraus()[static_cast<std::size_t>(j)]);
    }
  }
  gram = ((gram + gram.adjoint()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  // rank cut on the Gram spectrum itself: eigenvalue noise sits near machine
  // epsilon relative to lambda_max, while square roots would lift it to 1e-8
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  const double lambda_max = lambda(m - 1);  // ascending order
  if (lambda_max <= 0.0) {
    throw std::invalid_argument("every Kraus operator is zero");
  }

  const RankPolicy policy{rel_tol};
  const double tau = policy.threshold(lambda_max, m, m);
  Eigen::Index l = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (lambda(j) >= tau) ++l;
  }

  if (l == m) {
    return {ch, ComplexMatrix::Identity(m, m)};
  }

  ComplexMatrix mixing(m, l);
  std::vector<ComplexMatrix> reduced;
  reduced.reserve(static_cast<std::size_t>(l));
  for (Eigen::Index j = 0; j < l; ++j) {
    const ComplexVector col = es.eigenvectors().col(m - 1 - j);  // largest first
    mixing.col(j) = col;
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      b += col(i) * ch.kraus()[static_cast<std::size_t>(i)];
    }
    reduced.push_back(std::move(b));
  }
  return {KrausChannel(n, std::move(reduced)), std::move(mixing)};
}

KrausChannel equivalent_rep(const KrausChannel& ch, const ComplexMatrix& w) {
  const Eigen::Index m = ch.num_kraus();
  if (w.cols() != m) {
    throw std::invalid_argument("mixing matrix needs one column per Kraus operator");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  if ((w.adjoint() * w - id).norm() > kIsometryTol) {
    throw std::invalid_argument("mixing matrix is not an isometry on coefficient space");
  }
  const Eigen::Index n = ch.dim();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index p = 0; p < w.rows(); ++p) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      a += w(p, i) * ch.kraus()[static_cast<std::size_t>(i)];
    }
    kraus.push_back(std::move(a));
  }
  return KrausChannel(n, std::move(kraus));
}

KrausChannel random_channel(RandomKind kind, Eigen::Index n, Eigen::Index k,
                            std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (k < 1) throw std::invalid_argument("operator count must be positive");
  Rng rng(seed);
  switch (kind) {
    case RandomKind::MixedUnitary:
      return random_mixed_unitary(n, k, rng);
    case RandomKind::Luders:
      return random_luders(n, k, rng);
    case RandomKind::Padded: {
      const KrausChannel base = random_mixed_unitary(n, k, rng);
      const ComplexMatrix w = random_isometry(k + 2, k, rng);
      return equivalent_rep(base, w);
    }
  }
  throw std::invalid_argument("unknown channel kind");
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

namespace {

ComplexMatrix qr_orthonormal(const ComplexMatrix& g, Eigen::Index cols) {
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), cols);
  // fold the R-diagonal phases into Q; this makes the distribution Haar
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

}  // namespace

ComplexMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  return qr_orthonormal(ginibre(n, n, rng), n);
}

ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  if (rows < cols) throw std::invalid_argument("isometry needs rows >= cols");
  return qr_orthonormal(ginibre(rows, cols, rng), cols);
}

}  // namespace dfakit

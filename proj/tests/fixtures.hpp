#pragma once

#include <dfakit/channel.hpp>
#include <dfakit/matrix.hpp>

namespace fixtures {

inline dfakit::ComplexMatrix identity2() { return dfakit::ComplexMatrix::Identity(2, 2); }

inline dfakit::ComplexMatrix pauli_x() {
  dfakit::ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline dfakit::ComplexMatrix pauli_y() {
  dfakit::ComplexMatrix m(2, 2);
  m << dfakit::Complex(0, 0), dfakit::Complex(0, -1), dfakit::Complex(0, 1), dfakit::Complex(0, 0);
  return m;
}

inline dfakit::ComplexMatrix pauli_z() {
  dfakit::ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline dfakit::ComplexMatrix unit(int n, int k, int l) {
  dfakit::ComplexMatrix m = dfakit::ComplexMatrix::Zero(n, n);
  m(k, l) = 1.0;
  return m;
}

// Projective measurement in the computational basis: x -> P0 x P0 + P1 x P1.
inline dfakit::KrausChannel dephasing() {
  return dfakit::KrausChannel(2, {unit(2, 0, 0), unit(2, 1, 1)});
}

// Uniform mixture of identity and bit flip: x -> (x + XxX)/2.
inline dfakit::KrausChannel bitflip_mix() {
  const double s = 1.0 / std::sqrt(2.0);
  return dfakit::KrausChannel(2, {s * identity2(), s * pauli_x()});
}

inline dfakit::KrausChannel identity_channel(int n) {
  return dfakit::KrausChannel(n, {dfakit::ComplexMatrix::Identity(n, n)});
}

}  // namespace fixtures

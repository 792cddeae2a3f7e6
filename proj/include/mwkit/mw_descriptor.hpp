// mw_descriptor.hpp — data of a twisted-symbol (Mehlig-Wilkinson) operator:
// the symbol is a_sigma(z) = (2*pi)^{-n} i^nu |det(S-I)|^{-1/2}
// exp((i/2) <M_S z, z>), defined when det(S - I) != 0.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/maslov.hpp"
#include "mwkit/symplectic.hpp"

namespace mwkit {

struct MWDescriptor {
  int n = 0;
  SymplecticMatrix S;
  Mat M_S;                  // (1/2) J (S+I)(S-I)^{-1}
  int nu = 0;               // mod 4
  double norm_factor = 0;   // (2*pi)^{-n} |det(S-I)|^{-1/2}
  double det_s_minus_i = 0;
};

inline MWDescriptor make_descriptor(const SymplecticMatrix& S, int nu) {
  MWDescriptor d{S.dof(), S, cayley_ms(S), mod4(nu), 0.0, 0.0};
  const Mat SmI = S.entries() - Mat::Identity(S.dim(), S.dim());
  d.det_s_minus_i = SmI.determinant();
  d.norm_factor = std::pow(2.0 * kPi, -d.n) / std::sqrt(std::abs(d.det_s_minus_i));
  return d;
}

// nu fixed by the index formula so that the operator equals the quadratic
// Fourier transform of the generator (not just up to a phase)
inline MWDescriptor descriptor_from_generator(const FreeGenerator& g) {
  return make_descriptor(free_from_generator(g), mw_index(g).nu);
}

}  // namespace mwkit

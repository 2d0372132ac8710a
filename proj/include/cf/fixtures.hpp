#pragma once

#include <string>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/bilinear.hpp"

namespace cf {

// Commutative unital ring on a cyclic-sum module with the given products of basis elements.
AlgebraPresentation commutative_ring(const Scalars& s, const std::vector<Integer>& orders,
                                     const std::vector<std::vector<std::vector<long long>>>& products,
                                     const std::vector<long long>& one);

AlgebraPresentation integer_ring();                 // Z
AlgebraPresentation cyclic_ring(long long n);       // Z/n over Z
AlgebraPresentation prime_field(long long p);       // Z/p over Z/p
AlgebraPresentation gaussian_integers();            // Z[i] on 1, i
AlgebraPresentation root_two_integers();            // Z[sqrt 2] on 1, r
AlgebraPresentation f2_product();                   // F2 x F2 over Z/2 on e1, e2
AlgebraPresentation f4();                           // F4 over Z/2 on 1, w with w^2 = w + 1
AlgebraPresentation f2_truncated_polynomial(int k); // F2[t]/t^k on 1, t, .., t^(k-1)
AlgebraPresentation component_ring(Index n);        // Z^n with componentwise product
AlgebraPresentation z_plus_z2();                    // Z + Z/2, (a,b)(c,d) = (0, ac mod 2)
AlgebraPresentation matrix_ring_f2();              // M_2(F2) on matrix units
AlgebraPresentation upper_triangular_f2();         // upper triangular 2 x 2 over F2
AlgebraPresentation gaussian_mod(long long n);     // (Z/n)[i] on 1, i
AlgebraPresentation cyclic_square(long long n);    // Z/n x Z/n on e1, e2

BilinearTensor multiplication(const AlgebraPresentation& a);

}  // namespace cf

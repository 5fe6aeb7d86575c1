#pragma once

#include <utility>
#include <vector>

#include "pmod/presentation.hpp"

namespace pmod {

/// Block-diagonal sum. Clashing labels of q get primes appended.
Presentation direct_sum(const Presentation& p, const Presentation& q);

/// phi(F_P) + i_Q(G_Q) modulo i_Q(G_Q), together with its inclusion into Q.
struct ImageResult {
    Presentation module;
    PresentationMorphism inclusion;
};
ImageResult image_data(const PresentationMorphism& f);
Presentation image(const PresentationMorphism& f);

/// Generators F_Q, relations [i_Q | phi].
Presentation cokernel(const PresentationMorphism& f);

struct KernelResult {
    Presentation module;
    PresentationMorphism inclusion;  // into f.src
};
/// Throws ValidationError for an incompatible morphism.
KernelResult kernel(const PresentationMorphism& f);
/// Same construction without checking compatibility.
KernelResult kernel_unchecked(const PresentationMorphism& f);

struct FreePullback {
    BasisPtr basis;
    GradedMatrix proj_a;
    GradedMatrix proj_b;
};
/// Free basis of ker [f | -g] on A + B with both projections.
FreePullback free_pullback(const GradedMatrix& f, const GradedMatrix& g);

struct PullbackResult {
    Presentation module;
    PresentationMorphism proj_p;
    PresentationMorphism proj_q;
};
PullbackResult pullback(const PresentationMorphism& f, const PresentationMorphism& g);

/// Cokernel of r -> (f(r), -g(r)) into P + Q.
Presentation pushout(const PresentationMorphism& f, const PresentationMorphism& g);

/// Generators are pairs of SNF generators, labelled `a|b`. A pair carries the
/// smaller of the two annihilator exponents; two free factors give a free pair.
Presentation tensor(const Presentation& p, const Presentation& q);

enum class Side { left, right };

/// Tensor over k where t acts on one factor only (p for left, q for right).
/// The other factor must have finite k-dimension.
Presentation tensor_over_k(const Presentation& p, const Presentation& q, Side acting);

/// All degrees raised by k.
Presentation shift(const Presentation& p, int k);

/// Generator x of degree b and annihilator t^a becomes x* of degree -b with
/// the same annihilator.
Presentation dual(const Presentation& p);

Presentation hom(const Presentation& p, const Presentation& q);

/// The degree-0 element of hom(f.src, f.dst) representing f.
struct HomElement {
    Presentation module;
    HomogeneousElement element;
};
HomElement hom_element(const PresentationMorphism& f);

/// Sorts indices in place; returns the sign of the sorting permutation,
/// or 0 if an index repeats.
int normalize_wedge(std::vector<std::size_t>& indices);

/// Generators are m-subsets of SNF generators, labelled `a&b`.
Presentation exterior_power(const Presentation& p, int m);

/// Generators are m-multisets of SNF generators, labelled `a.b`.
Presentation symmetric_power(const Presentation& p, int m);

}  // namespace pmod

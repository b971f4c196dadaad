#ifndef QTORUS_ERRORS_HPP
#define QTORUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtorus {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QTORUS_DEFINE_ERROR(Name)                                             \
    struct Name : Error {                                                     \
        using Error::Error;                                                   \
    }

QTORUS_DEFINE_ERROR(InvalidPrime);        // p not an odd prime in [5, 499]
QTORUS_DEFINE_ERROR(ZeroParameter);       // b = 0 outside the big Bruhat cell
QTORUS_DEFINE_ERROR(NotUnimodular);       // integral matrix with det != 1
QTORUS_DEFINE_ERROR(NotHyperbolic);       // |tr| <= 2 where a hyperbolic element is required
QTORUS_DEFINE_ERROR(RamifiedPrime);       // p divides tr(A)^2 - 4: centralizer is not a torus
QTORUS_DEFINE_ERROR(NotInTorus);          // element outside the enumerated torus
QTORUS_DEFINE_ERROR(EigenvectorInput);    // frequency is an eigenvector of A mod p
QTORUS_DEFINE_ERROR(ZeroFrequency);       // xi = 0 where a nonzero frequency is required
QTORUS_DEFINE_ERROR(DegenerateTorusPoint);// a in {0, 1} in the torus closed form
QTORUS_DEFINE_ERROR(SingularShift);       // det(g - I) = 0 in the invariant closed form
QTORUS_DEFINE_ERROR(NoConsistentSign);    // no single epsilon fits the Heisenberg relation
QTORUS_DEFINE_ERROR(NotGeneralPosition);  // coincident lines in a Lagrangian triple
QTORUS_DEFINE_ERROR(NotOneDimensional);   // Hecke eigenspace rank != 1
QTORUS_DEFINE_ERROR(ZeroProduct);         // lambda * mu = 0 in the split closed sum
QTORUS_DEFINE_ERROR(TooLarge);            // tuple enumeration guard tripped

#undef QTORUS_DEFINE_ERROR

} // namespace qtorus

#endif

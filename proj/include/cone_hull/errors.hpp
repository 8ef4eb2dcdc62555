#ifndef CONE_HULL_ERRORS_HPP
#define CONE_HULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cone_hull {

/** Base class for every error raised by the library. */
class ConeHullError : public std::runtime_error {
public:
    explicit ConeHullError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A mathematical hypothesis of an operation does not hold for the input
 * (lower-dimensional S where a convex body is needed, missing torus piece, ...).
 * The CLI maps these to exit status 2.
 */
class PreconditionViolated : public ConeHullError {
public:
    explicit PreconditionViolated(const std::string& what) : ConeHullError(what) {}
};

class DimensionMismatch : public PreconditionViolated {
public:
    explicit DimensionMismatch(const std::string& what) : PreconditionViolated(what) {}
};

class InvalidPolytope : public PreconditionViolated {
public:
    explicit InvalidPolytope(const std::string& what) : PreconditionViolated(what) {}
};

class EmptyInterior : public PreconditionViolated {
public:
    explicit EmptyInterior(const std::string& what) : PreconditionViolated(what) {}
};

class NoFullSupportPiece : public PreconditionViolated {
public:
    explicit NoFullSupportPiece(const std::string& what) : PreconditionViolated(what) {}
};

class IdenticalPoints : public PreconditionViolated {
public:
    explicit IdenticalPoints(const std::string& what) : PreconditionViolated(what) {}
};

class ZeroCoordinate : public PreconditionViolated {
public:
    explicit ZeroCoordinate(const std::string& what) : PreconditionViolated(what) {}
};

class EmptyKernel : public PreconditionViolated {
public:
    explicit EmptyKernel(const std::string& what) : PreconditionViolated(what) {}
};

class SingularMatrix : public PreconditionViolated {
public:
    explicit SingularMatrix(const std::string& what) : PreconditionViolated(what) {}
};

/** The exponent lies in the cone, so no escape direction exists. */
class BetaInCone : public PreconditionViolated {
public:
    explicit BetaInCone(const std::string& what) : PreconditionViolated(what) {}
};

class DivergentOnSample : public PreconditionViolated {
public:
    explicit DivergentOnSample(const std::string& what) : PreconditionViolated(what) {}
};

/** Malformed input document; `what()` carries the JSON path of the offending field. */
class SchemaError : public ConeHullError {
public:
    explicit SchemaError(const std::string& what) : ConeHullError(what) {}
};

/** Lattice enumeration would exceed the candidate budget. Exit status 3. */
class BudgetExceeded : public ConeHullError {
public:
    explicit BudgetExceeded(const std::string& what) : ConeHullError(what) {}
};

/** Solver reached a state its invariants rule out. */
class NumericalFailure : public ConeHullError {
public:
    explicit NumericalFailure(const std::string& what) : ConeHullError(what) {}
};

}  // namespace cone_hull

#endif

#ifndef CONE_HULL_SCALAR_HPP
#define CONE_HULL_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace cone_hull {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;
using VectorZ = Vector<BigInt>;
using MatrixZ = Matrix<BigInt>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Lattice vector in Z^n (exponents, kernel generators). Small entries only.
using LatticeVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

/**
 * Comparison policy for a scalar type. Exact types compare exactly; `double`
 * uses an absolute tolerance that callers can tighten or loosen.
 */
template <typename Scalar>
struct ScalarTraits {
    static constexpr bool exact = true;
    static bool is_zero(const Scalar& x) { return x == 0; }
    static bool is_positive(const Scalar& x) { return x > 0; }
    static bool is_negative(const Scalar& x) { return x < 0; }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static inline double tolerance = 1e-11;
    static bool is_zero(double x) { return std::abs(x) <= tolerance; }
    static bool is_positive(double x) { return x > tolerance; }
    static bool is_negative(double x) { return x < -tolerance; }
};

/// Parses "p/q", "p", or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

VectorXd to_double(const VectorQ& v);
MatrixXd to_double(const MatrixQ& m);

/// Exact rational image of a double (every finite double is a dyadic rational).
Rational exact_rational(double x);
VectorQ exact_rational(const VectorXd& v);

template <typename Scalar>
Scalar scalar_cast(const Rational& q);
template <>
inline Rational scalar_cast<Rational>(const Rational& q) { return q; }
template <>
inline double scalar_cast<double>(const Rational& q) { return to_double(q); }

/// Least common multiple of the denominators of `v`.
BigInt common_denominator(const VectorQ& v);

/// Scales `v` to the primitive integer vector on the same ray (zero stays zero).
VectorZ primitive_direction(const VectorQ& v);

LatticeVector to_lattice(const VectorZ& v);
VectorQ to_rational(const LatticeVector& v);
VectorQ to_rational(const VectorZ& v);

}  // namespace cone_hull

#endif

#pragma once

// Exact lattice and rational linear algebra shared by the fan and polytope code.
// Everything here uses arbitrary-precision integers; nothing is fixed width.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricabel {

// Expression templates are off so results can be passed straight to numerator() etc.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;
/// Row-major dense matrices; each inner vector is one row.
using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<RatVec>;

IntVec make_int_vec(std::initializer_list<long long> values);
RatVec to_rational(const IntVec& v);
/// Throws std::domain_error if some entry is not an integer.
IntVec to_integer(const RatVec& v);
bool is_integral(const RatVec& v);

Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const RatVec& a, const RatVec& b);
Rational dot(const RatVec& a, const IntVec& b);

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
RatVec scale(const RatVec& a, const Rational& s);

Integer gcd_of(const IntVec& v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVec primitive(const IntVec& v);
/// Smallest positive integer multiple of `v` that is integral and primitive.
IntVec clear_denominators(const RatVec& v);
Integer common_denominator(const RatVec& v);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

std::size_t rank(RatMatrix rows);
/// Unique solution of the square system A x = b, or nullopt if A is singular.
std::optional<RatVec> solve_square(RatMatrix a, RatVec b);
/// Basis of {x : A x = 0}; `cols` gives the ambient dimension when A has no rows.
RatMatrix nullspace(const RatMatrix& a, std::size_t cols);
/// Indices of pivot columns of the reduced row echelon form of `rows`.
std::vector<std::size_t> pivot_columns(RatMatrix rows);
/// Fraction-free (Bareiss) determinant.
Integer determinant(IntMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Integer basis of the saturated lattice {z in Z^n : A z = 0}, obtained from
/// unimodular column reduction of A. Returned vectors are rows.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);
/// Basis of span(vectors) intersected with Z^n; `n` is the ambient dimension.
IntMatrix lattice_basis_of_span(const RatMatrix& vectors, std::size_t n);

std::string to_string(const Rational& q);
std::string to_string(const RatVec& v);
std::string to_string(const IntVec& v);
/// Parses "p/q" or an integer literal.
Rational parse_rational(const std::string& text);

long long to_int64(const Integer& z);
double to_double(const Rational& q);

}  // namespace toricabel

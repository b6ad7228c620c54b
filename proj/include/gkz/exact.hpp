#pragma once

// Exact integer and rational linear algebra used by the polytope layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<BigInt>;

IntVector to_int_vector(const std::vector<std::int64_t>& v);
std::vector<std::int64_t> to_int64_vector(const IntVector& v);
std::int64_t to_int64(const BigInt& v);

BigInt dot(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
BigInt gcd_of(const IntVector& v);
/// Divides out the content; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
BigInt determinant(std::vector<IntVector> rows);

/// Result of reducing `rows * U = H` by unimodular column operations, with H
/// in column echelon form. Columns `rank..n-1` of U span the integer kernel.
struct ColumnReduction {
    std::vector<IntVector> h;   // r x n
    std::vector<IntVector> u;   // n x n, unimodular
    std::size_t rank = 0;
};

ColumnReduction column_reduce(const std::vector<IntVector>& rows, std::size_t n);

std::size_t rank_of(const std::vector<IntVector>& rows, std::size_t n);

/// Basis of { w in Z^n : <r, w> = 0 for every row r } (a saturated lattice).
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n);

/// Basis of Z^n ∩ span_Q(vectors).
std::vector<IntVector> saturated_basis(const std::vector<IntVector>& vectors, std::size_t n);

/// Integer coordinates y with sum_k y_k basis[k] = v, if they exist.
std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis,
                                             const IntVector& v);

/// Diagonal of the Smith normal form of the matrix whose rows are `rows`.
std::vector<BigInt> smith_diagonal(const std::vector<IntVector>& rows, std::size_t n);

/// "p/q" (or "p") in lowest terms.
std::string to_string(const Rational& r);
/// Parses "p/q", "p", or a finite decimal such as "-0.125" or "1e-3" exactly.
std::optional<Rational> parse_rational(const std::string& text);

bool is_integer(const Rational& r);

}  // namespace gkz

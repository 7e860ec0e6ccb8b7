#pragma once

// Matrices over K and over the residue field k, and the elementwise maps
// between them (conjugation, reduction, valuation bounds).

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ldesc/field.hpp"
#include "ldesc/matrix.hpp"

namespace ldesc {

using KMatrix = Matrix<FieldElement>;
using ResMatrix = Matrix<ResidueElement>;

KMatrix identity(const Field& F, std::size_t n);
KMatrix zeros(const Field& F, std::size_t rows, std::size_t cols);
KMatrix diagonal(const Field& F, const std::vector<FieldElement>& d);
// Integer entries, given row by row.
KMatrix integer_matrix(const Field& F, std::initializer_list<std::initializer_list<long>> rows);
ResMatrix residue_identity(const ResidueFieldPtr& k, std::size_t n);

KMatrix conj(const Field& F, const KMatrix& m);
// sigma(m)^T
KMatrix conj_transpose(const Field& F, const KMatrix& m);
ResMatrix conj(const ResMatrix& m);
ResMatrix conj_transpose(const ResMatrix& m);

// Minimum valuation over the entries (kInfiniteValuation for a zero matrix).
std::int64_t min_valuation(const Field& F, const KMatrix& m);
bool is_integral(const Field& F, const KMatrix& m);
ResMatrix reduce(const Field& F, const KMatrix& m);

// Polynomials as coefficient vectors, lowest degree first.
std::vector<ResidueElement> reduce(const Field& F, const std::vector<FieldElement>& poly);

}  // namespace ldesc

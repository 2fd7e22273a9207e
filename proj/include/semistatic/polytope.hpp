#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "semistatic/linalg.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

struct MartingaleRow {
    std::size_t k;     // 1..K
    std::size_t cell;  // cell of P_{k-1}
    std::size_t asset;
};
struct CalibrationRow {
    std::size_t claim;
};
struct NormalizationRow {};

using RowLabel = std::variant<MartingaleRow, CalibrationRow, NormalizationRow>;
std::string describe(const RowLabel& label);

// Equality rows over atoms, plus q >= 0 and q = 0 off the allowed mask.
struct ConstraintSystem {
    std::vector<RowLabel> labels;
    Matrix matrix;
    Vector rhs;
    std::vector<bool> allowed;

    std::size_t atoms() const { return matrix.cols(); }
};

ConstraintSystem build_constraints(const FilteredModel& model);

struct ExtremalityCertificate {
    bool extreme = false;
    Cell support;
    std::size_t rank = 0;                    // rank of the support columns
    std::vector<std::size_t> witness_rows;   // rows giving a nonsingular minor when extreme
    Vector direction;                        // nonzero, A d = 0, supp d within supp Q, when not extreme
};

struct Vertex {
    Measure measure;
    ExtremalityCertificate certificate;
};

struct VertexSet {
    std::vector<Vertex> vertices;

    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
    std::vector<Measure> measures() const;
};

// Canonical order: support as an ascending index list, then weights, both lexicographic.
bool canonical_less(const Vector& a, const Vector& b);

bool member(const Vector& q, const ConstraintSystem& cs);
bool member(const Measure& q, const ConstraintSystem& cs);

// Throws ConstraintViolation when q is not in the polytope.
ExtremalityCertificate is_extreme(const Measure& q, const ConstraintSystem& cs);

VertexSet enumerate_extreme_points(const ConstraintSystem& cs);

}  // namespace semistatic

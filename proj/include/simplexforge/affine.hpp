#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/geometry.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// Exact-rational affine transformation x -> M x + offset between coordinate
// spaces.
struct AffineMap {
    RationalMatrix matrix;   // rows x cols
    RationalPoint offset;    // length rows

    AffineMap() = default;

    AffineMap(RationalMatrix m, RationalPoint off)
        : matrix(std::move(m)), offset(std::move(off)) {
        if (offset.dim() != matrix.size())
            throw domain_error("affine map: offset length mismatch");
        for (const auto& row : matrix)
            if (row.size() != cols())
                throw domain_error("affine map: ragged matrix");
    }

    std::size_t rows() const { return matrix.size(); }
    std::size_t cols() const { return matrix.empty() ? 0 : matrix[0].size(); }

    static AffineMap identity(std::size_t n) {
        return AffineMap(linalg::identity(n), RationalPoint(std::vector<Rational>(n, Rational(0))));
    }

    RationalPoint apply(const RationalPoint& x) const {
        if (x.dim() != cols()) throw domain_error("affine map: input dimension mismatch");
        RationalRow y = linalg::mat_vec(matrix, x.coords);
        for (std::size_t r = 0; r < y.size(); ++r) y[r] += offset[r];
        return RationalPoint(std::move(y));
    }

    // this o other
    AffineMap compose(const AffineMap& other) const {
        if (cols() != other.rows()) throw domain_error("affine map: compose dimension mismatch");
        RationalMatrix m = linalg::mat_mul(matrix, other.matrix);
        RationalPoint off = apply(other.offset);
        return AffineMap(std::move(m), std::move(off));
    }

    std::optional<AffineMap> inverse() const {
        if (rows() != cols()) return std::nullopt;
        auto inv = linalg::invert(matrix);
        if (!inv) return std::nullopt;
        RationalRow t = linalg::mat_vec(*inv, offset.coords);
        for (auto& v : t) v = -v;
        return AffineMap(std::move(*inv), RationalPoint(std::move(t)));
    }
};

// Image polytope with vertex labels carried over; affineness guarantees
// hull(f(V)) = f(hull(V)).
inline VPolytope apply_affine(const AffineMap& f, const VPolytope& p) {
    if (f.cols() != p.dim) throw domain_error("apply_affine: dimension mismatch");
    std::vector<RationalPoint> verts;
    verts.reserve(p.size());
    for (const auto& v : p.vertices) verts.push_back(f.apply(v));
    return VPolytope(f.rows(), std::move(verts), p.labels);
}

// The affine map determined by finitely many input/output pairs, when one
// exists. Underdetermined directions get zero coefficients (deterministic);
// affinely dependent inputs with inconsistent images yield nullopt.
inline std::optional<AffineMap> affine_from_images(const std::vector<RationalPoint>& inputs,
                                                   const std::vector<RationalPoint>& outputs) {
    if (inputs.empty() || inputs.size() != outputs.size())
        throw domain_error("affine_from_images: bad image list");
    std::size_t in_dim = inputs[0].dim();
    std::size_t out_dim = outputs[0].dim();
    for (const auto& x : inputs)
        if (x.dim() != in_dim) throw domain_error("affine_from_images: input dim mismatch");
    for (const auto& y : outputs)
        if (y.dim() != out_dim) throw domain_error("affine_from_images: output dim mismatch");

    // One linear solve per output row: unknowns are that row of the matrix
    // plus the offset entry.
    RationalMatrix sys = linalg::zeros(inputs.size(), in_dim + 1);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (std::size_t j = 0; j < in_dim; ++j) sys[i][j] = inputs[i][j];
        sys[i][in_dim] = 1;
    }

    RationalMatrix m = linalg::zeros(out_dim, in_dim);
    RationalPoint off(std::vector<Rational>(out_dim, Rational(0)));
    for (std::size_t r = 0; r < out_dim; ++r) {
        RationalRow rhs(inputs.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) rhs[i] = outputs[i][r];
        auto row = linalg::solve(sys, rhs);
        if (!row) return std::nullopt;
        for (std::size_t j = 0; j < in_dim; ++j) m[r][j] = (*row)[j];
        off[r] = (*row)[in_dim];
    }
    return AffineMap(std::move(m), std::move(off));
}

} // namespace simplexforge

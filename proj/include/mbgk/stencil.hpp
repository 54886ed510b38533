#pragma once

#include <vector>

#include <Eigen/Core>

namespace mbgk {

/// Neighbor lists in CSR form with cached displacements dx_ij = x_j - x_i.
/// Displacements are stored (rather than recomputed from positions) so that
/// periodic minimum-image wrapping is decided in exactly one place.
struct StencilTable {
    std::vector<int> start;  // size points+1
    std::vector<int> nbr;    // size nnz
    std::vector<double> dx;  // size nnz
    std::vector<double> dy;  // size nnz (zero in 1D)

    int points() const { return static_cast<int>(start.size()) - 1; }
    int begin(int i) const { return start[i]; }
    int end(int i) const { return start[i + 1]; }
    int size(int i) const { return start[i + 1] - start[i]; }
    int nnz() const { return static_cast<int>(nbr.size()); }

    void clear() {
        start.clear();
        nbr.clear();
        dx.clear();
        dy.clear();
    }
};

/// Undirected edge list (i < j) derived from a symmetric stencil table;
/// the MUSCL kernels visit each pair once and scatter to both endpoints.
/// eab / eba are the CSR entry indices of (a -> b) and (b -> a).
struct EdgeList {
    std::vector<int> a, b;       // endpoints, a < b
    std::vector<double> dx, dy;  // x_b - x_a
    std::vector<int> eab, eba;

    int size() const { return static_cast<int>(a.size()); }
    void buildFrom(const StencilTable& st);
};

}  // namespace mbgk

#pragma once

#include <cmath>
#include <vector>

#include "mbgk/stencil.hpp"

namespace mbgk::test {

/// All-pairs stencil table of a small point set (radius rule, no blocking).
inline StencilTable makeStencil(const std::vector<double>& xs, const std::vector<double>& ys,
                                double hmax) {
    const int n = static_cast<int>(xs.size());
    StencilTable st;
    st.start.assign(n + 1, 0);
    std::vector<std::vector<int>> nb(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dx = xs[j] - xs[i];
            const double dy = ys.empty() ? 0.0 : ys[j] - ys[i];
            if (dx * dx + dy * dy < hmax * hmax) nb[i].push_back(j);
        }
    for (int i = 0; i < n; ++i) st.start[i + 1] = st.start[i] + static_cast<int>(nb[i].size());
    st.nbr.resize(st.start[n]);
    st.dx.resize(st.start[n]);
    st.dy.resize(st.start[n]);
    for (int i = 0; i < n; ++i) {
        int e = st.start[i];
        for (int j : nb[i]) {
            st.nbr[e] = j;
            st.dx[e] = xs[j] - xs[i];
            st.dy[e] = ys.empty() ? 0.0 : ys[j] - ys[i];
            ++e;
        }
    }
    return st;
}

}  // namespace mbgk::test

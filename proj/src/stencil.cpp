#include "mbgk/stencil.hpp"

#include <algorithm>
#include <stdexcept>

namespace mbgk {

void EdgeList::buildFrom(const StencilTable& st) {
    a.clear();
    b.clear();
    dx.clear();
    dy.clear();
    eab.clear();
    eba.clear();
    const int n = st.points();
    for (int i = 0; i < n; ++i) {
        for (int e = st.begin(i); e < st.end(i); ++e) {
            const int j = st.nbr[e];
            if (j <= i) continue;  // symmetric table: keep each pair once
            // locate the reciprocal entry (neighbor lists are sorted)
            const auto lo = st.nbr.begin() + st.begin(j);
            const auto hi = st.nbr.begin() + st.end(j);
            const auto it = std::lower_bound(lo, hi, i);
            if (it == hi || *it != i)
                throw std::logic_error("EdgeList: stencil table is not symmetric");
            a.push_back(i);
            b.push_back(j);
            dx.push_back(st.dx[e]);
            dy.push_back(st.dy[e]);
            eab.push_back(e);
            eba.push_back(static_cast<int>(it - st.nbr.begin()));
        }
    }
}

}  // namespace mbgk

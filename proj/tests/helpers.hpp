#pragma once

// Shared builders for the test suite.

#include "tiltcover/matrix.hpp"
#include "tiltcover/quiver.hpp"

#include <string>
#include <vector>

namespace th {

using tiltcover::QMat;
using tiltcover::Quiver;
using tiltcover::Rational;

inline QMat qm(const std::vector<std::vector<long>>& rows, int cols = -1) {
    int r = static_cast<int>(rows.size());
    int c = cols >= 0 ? cols : (r ? static_cast<int>(rows[0].size()) : 0);
    QMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < static_cast<int>(rows[i].size()); ++j)
            m.set(i, j, Rational(rows[i][j]));
    return m;
}

inline Quiver make_quiver(const std::vector<std::string>& vs,
                          const std::vector<std::tuple<std::string, std::string, std::string>>& as) {
    Quiver q;
    q.vertices = vs;
    for (const auto& [name, from, to] : as) {
        tiltcover::Arrow a;
        a.name = name;
        a.src = q.vertex_index(from);
        a.tgt = q.vertex_index(to);
        q.arrows.push_back(a);
    }
    q.validate();
    return q;
}

inline Quiver a2() { return make_quiver({"1", "2"}, {{"a", "1", "2"}}); }

inline Quiver a3() {
    return make_quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
}

inline Quiver kronecker() {
    return make_quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
}

}  // namespace th

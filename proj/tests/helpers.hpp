#pragma once

#include "projposet/matrix.hpp"

#include <initializer_list>

namespace testing_helpers {

inline projposet::Matrix mat(projposet::FieldPtr f, std::initializer_list<std::initializer_list<int>> rows)
{
    std::size_t r = rows.size(), c = rows.begin()->size();
    std::vector<projposet::Elem> e;
    for (const auto & row : rows)
        for (int x : row)
            e.push_back(static_cast<projposet::Elem>(x));
    return projposet::Matrix(std::move(f), r, c, std::move(e));
}

} // namespace testing_helpers

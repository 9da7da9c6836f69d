#include "projposet/json_io.hpp"

#include "projposet/error.hpp"

namespace projposet {

nlohmann::json element_to_json(const Field & field, Elem e)
{
    if (field.degree() == 1)
        return static_cast<unsigned>(e);
    return field.coefficients(e);
}

Elem element_from_json(const Field & field, const nlohmann::json & j)
{
    if (j.is_number_unsigned() || j.is_number_integer()) {
        auto v = j.get<long long>();
        if (v < 0)
            throw InvalidArgument("negative field element");
        return field.element(static_cast<unsigned>(v));
    }
    if (j.is_array())
        return field.from_coefficients(j.get<std::vector<unsigned>>());
    throw InvalidArgument("field element must be an integer or a coefficient vector");
}

nlohmann::json matrix_to_json(const Matrix & m)
{
    const Field & f = *m.field();
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (auto x : m.row(r))
            row.push_back(element_to_json(f, x));
        rows.push_back(std::move(row));
    }
    nlohmann::json j {{"field", f.name()}, {"rows", std::move(rows)}};
    if (m.rows() == 0)
        j["cols"] = m.cols();
    return j;
}

Matrix matrix_from_json(const nlohmann::json & j)
{
    try {
        auto field = Field::parse(j.at("field").get<std::string>());
        const auto & rows = j.at("rows");
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? j.at("cols").get<std::size_t>() : rows.at(0).size();
        std::vector<Elem> entries;
        entries.reserve(r * c);
        for (const auto & row : rows) {
            if (row.size() != c)
                throw InvalidArgument("ragged matrix rows");
            for (const auto & e : row)
                entries.push_back(element_from_json(*field, e));
        }
        return Matrix(field, r, c, std::move(entries));
    } catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
    }
}

} // namespace projposet

// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#include "protondlra/analysis/volume_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "protondlra/errors.hpp"

namespace pdlra::analysis
{
namespace
{
static_assert(std::endian::native == std::endian::little,
              "raw volume I/O assumes a little-endian host");

char const* const axis_names = "xyz";

std::ofstream open_out(std::string const& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out)
    {
        throw Error("cannot write " + path);
    }
    return out;
}

std::ifstream open_in(std::string const& path, std::ios::openmode mode = std::ios::in)
{
    std::ifstream in(path, mode);
    if (!in)
    {
        throw Error("cannot read " + path);
    }
    return in;
}

std::string expect_word(std::istream& in, std::string const& word)
{
    std::string got;
    in >> got;
    if (got != word)
    {
        throw ParseError(fmt::format("expected '{}', found '{}'", word, got), 0);
    }
    return got;
}
}  // namespace

void write_vtk(std::ostream& out, domain::Grid3 const& grid, std::vector<NamedField> const& fields)
{
    auto const& n = grid.counts();
    auto const& h = grid.spacing();
    auto const& o = grid.origin();
    out << "# vtk DataFile Version 3.0\n";
    out << "protondlra dose\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << fmt::format("DIMENSIONS {} {} {}\n", n[0] + 1, n[1] + 1, n[2] + 1);
    out << fmt::format("ORIGIN {:.17g} {:.17g} {:.17g}\n", o[0], o[1], o[2]);
    out << fmt::format("SPACING {:.17g} {:.17g} {:.17g}\n", h[0], h[1], h[2]);
    out << fmt::format("CELL_DATA {}\n", grid.size());
    for (auto const& f : fields)
    {
        if (static_cast<std::size_t>(f.values.size()) != grid.size())
        {
            throw ValidationError(fmt::format("field {} has {} values for {} cells", f.name,
                                              f.values.size(), grid.size()));
        }
        out << fmt::format("SCALARS {} double 1\nLOOKUP_TABLE default\n", f.name);
        for (double v : f.values)
        {
            out << fmt::format("{:.17g}\n", v);
        }
    }
}

void write_vtk(std::string const& path,
               domain::Grid3 const& grid,
               std::vector<NamedField> const& fields)
{
    auto out = open_out(path);
    write_vtk(out, grid, fields);
}

std::pair<domain::Grid3, std::vector<NamedField>> read_vtk(std::istream& in)
{
    std::string line;
    for (int i = 0; i < 3; ++i)
    {
        std::getline(in, line);
    }
    if (line.rfind("ASCII", 0) != 0)
    {
        throw ParseError("only ASCII legacy volumes are supported", 3);
    }
    expect_word(in, "DATASET");
    expect_word(in, "STRUCTURED_POINTS");
    std::array<std::size_t, 3> dims{};
    std::array<double, 3> origin{};
    std::array<double, 3> spacing{};
    expect_word(in, "DIMENSIONS");
    in >> dims[0] >> dims[1] >> dims[2];
    expect_word(in, "ORIGIN");
    in >> origin[0] >> origin[1] >> origin[2];
    expect_word(in, "SPACING");
    in >> spacing[0] >> spacing[1] >> spacing[2];
    std::size_t cells = 0;
    expect_word(in, "CELL_DATA");
    in >> cells;
    if (!in || dims[0] < 2 || dims[1] < 2 || dims[2] < 2)
    {
        throw ParseError("malformed volume header", 0);
    }
    domain::Grid3 grid({dims[0] - 1, dims[1] - 1, dims[2] - 1}, spacing, origin);
    if (cells != grid.size())
    {
        throw ParseError("CELL_DATA count does not match DIMENSIONS", 0);
    }
    std::vector<NamedField> fields;
    std::string word;
    while (in >> word)
    {
        if (word != "SCALARS")
        {
            throw ParseError(fmt::format("unexpected '{}'", word), 0);
        }
        NamedField f;
        std::string type;
        int components = 0;
        in >> f.name >> type >> components;
        expect_word(in, "LOOKUP_TABLE");
        in >> word;
        f.values.resize(static_cast<Eigen::Index>(cells));
        for (auto& v : f.values)
        {
            in >> v;
        }
        if (!in)
        {
            throw ParseError("truncated field " + f.name, 0);
        }
        fields.push_back(std::move(f));
    }
    return {grid, std::move(fields)};
}

void write_raw(std::string const& base, domain::Grid3 const& grid, NamedField const& field)
{
    if (static_cast<std::size_t>(field.values.size()) != grid.size())
    {
        throw ValidationError(fmt::format("field {} has {} values for {} cells", field.name,
                                          field.values.size(), grid.size()));
    }
    {
        auto out = open_out(base + ".f64", std::ios::out | std::ios::binary);
        out.write(reinterpret_cast<char const*>(field.values.data()),
                  static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    }
    nlohmann::json meta;
    meta["field"] = field.name;
    meta["dtype"] = "float64";
    meta["endianness"] = "little";
    meta["order"] = "x-fastest";
    meta["dims"] = grid.counts();
    meta["spacing"] = grid.spacing();
    meta["origin"] = grid.origin();
    auto out = open_out(base + ".json");
    out << meta.dump(2) << '\n';
}

std::pair<domain::Grid3, NamedField> read_raw(std::string const& base)
{
    nlohmann::json meta;
    {
        auto in = open_in(base + ".json");
        try
        {
            in >> meta;
        }
        catch (nlohmann::json::exception const& e)
        {
            throw ParseError(fmt::format("{}.json: {}", base, e.what()), 0);
        }
    }
    if (meta.value("dtype", "") != "float64" || meta.value("endianness", "") != "little")
    {
        throw ValidationError(base + ": only little-endian float64 volumes are supported");
    }
    domain::Grid3 grid(meta.at("dims").get<std::array<std::size_t, 3>>(),
                       meta.at("spacing").get<std::array<double, 3>>(),
                       meta.at("origin").get<std::array<double, 3>>());
    NamedField field;
    field.name = meta.at("field").get<std::string>();
    field.values.resize(static_cast<Eigen::Index>(grid.size()));
    auto in = open_in(base + ".f64", std::ios::in | std::ios::binary);
    in.read(reinterpret_cast<char*>(field.values.data()),
            static_cast<std::streamsize>(grid.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(grid.size() * sizeof(double)))
    {
        throw ValidationError(base + ".f64 is shorter than its header declares");
    }
    return {grid, std::move(field)};
}

void write_dose(std::string const& directory, DoseGrid const& dose)
{
    write_raw(directory + "/dose_total", dose.grid, {"total", dose.total});
    write_raw(directory + "/dose_collided", dose.grid, {"collided", dose.collided});
    write_raw(directory + "/dose_uncollided", dose.grid, {"uncollided", dose.uncollided});
    write_vtk(directory + "/dose.vtk", dose.grid,
              {{"total", dose.total}, {"collided", dose.collided}, {"uncollided", dose.uncollided}});
}

DoseGrid read_dose(std::string const& directory)
{
    auto [grid, collided] = read_raw(directory + "/dose_collided");
    auto [grid_u, uncollided] = read_raw(directory + "/dose_uncollided");
    if (!(grid == grid_u))
    {
        throw ValidationError(directory + ": collided and uncollided grids differ");
    }
    return DoseGrid::combine(grid, std::move(collided.values), std::move(uncollided.values));
}

void write_cut(std::ostream& out, Cut const& cut)
{
    for (int axis : cut.axes)
    {
        out << axis_names[axis] << ',';
    }
    out << "dose\n";
    std::size_t const n0 = cut.coordinates[0].size();
    for (std::size_t i = 0; i < cut.values.size(); ++i)
    {
        out << fmt::format("{:.17g},", cut.coordinates[0][i % n0]);
        if (cut.axes.size() > 1)
        {
            out << fmt::format("{:.17g},", cut.coordinates[1][i / n0]);
        }
        out << fmt::format("{:.17g}\n", cut.values[i]);
    }
}

void write_profile(std::ostream& out,
                   std::vector<double> const& coordinates,
                   std::vector<double> const& values,
                   std::string const& header)
{
    if (coordinates.size() != values.size())
    {
        throw ValidationError("profile coordinates and values differ in length");
    }
    out << header << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        out << fmt::format("{:.17g},{:.17g}\n", coordinates[i], values[i]);
    }
}

}  // namespace pdlra::analysis

#include "painleve/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace painleve {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json axis_json(const std::string& name, const Grid1D& g) {
    return ordered_json{{"name", name}, {"start", g.start()}, {"end", g.end()}, {"count", g.count()}};
}

ordered_json meta_json(const ExportMeta& meta) {
    return ordered_json{{"n", meta.n}, {"tolerance", meta.tolerance}, {"residual", meta.residual}, {"config", meta.config}};
}

Grid1D axis_from_json(const ordered_json& j) {
    return build_grid1(j.at("start").get<double>(), j.at("end").get<double>(), j.at("count").get<Index>());
}

ordered_json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw InvalidArgument("unknown format '" + name + "' (expected csv or json)");
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string field_to_csv(const Field1D& field, const std::string& axis_name, const std::string& value_name) {
    std::string out = axis_name + "," + value_name + "\n";
    const Grid1D& g = field.grid();
    for (Index i = 0; i < g.count(); ++i) out += format_double(g.node(i)) + "," + format_double(field[i]) + "\n";
    return out;
}

std::string field_to_csv(const Field2D& field) {
    std::string out = "x1,sigma,value\n";
    const Grid2D& g = field.grid();
    for (Index i = 0; i < g.axis1.count(); ++i) {
        const std::string x = format_double(g.axis1.node(i)) + ",";
        for (Index j = 0; j < g.axis2.count(); ++j)
            out += x + format_double(g.axis2.node(j)) + "," + format_double(field(i, j)) + "\n";
    }
    return out;
}

std::string field_to_json(const Field1D& field, const ExportMeta& meta, const std::string& axis_name) {
    ordered_json j;
    j["grid"] = {{"axes", ordered_json::array({axis_json(axis_name, field.grid())})}};
    j["values"] = std::vector<double>(field.values().begin(), field.values().end());
    j["meta"] = meta_json(meta);
    return j.dump(1) + "\n";
}

std::string field_to_json(const Field2D& field, const ExportMeta& meta) {
    ordered_json j;
    j["grid"] = {{"axes", ordered_json::array({axis_json("x1", field.grid().axis1), axis_json("sigma", field.grid().axis2)})}};
    const auto& v = field.values();
    j["values"] = std::vector<double>(v.data(), v.data() + v.size());
    j["meta"] = meta_json(meta);
    return j.dump(1) + "\n";
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw IoError("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into " + path.string());
    }
}

void export_field(const Field1D& field, Format format, const std::filesystem::path& path, const ExportMeta& meta,
                  const std::string& axis_name, const std::string& value_name) {
    write_atomically(path, format == Format::csv ? field_to_csv(field, axis_name, value_name)
                                                 : field_to_json(field, meta, axis_name));
}

void export_field(const Field2D& field, Format format, const std::filesystem::path& path, const ExportMeta& meta) {
    write_atomically(path, format == Format::csv ? field_to_csv(field) : field_to_json(field, meta));
}

Field1D import_field1d_json(const std::filesystem::path& path) {
    const ordered_json j = read_json(path);
    try {
        const auto& axes = j.at("grid").at("axes");
        if (axes.size() != 1) throw IoError(path.string() + " does not hold a 1D field");
        const Grid1D g = axis_from_json(axes.at(0));
        const auto values = j.at("values").get<std::vector<double>>();
        return Field1D(g, Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size())));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad field layout in " + path.string() + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw IoError("bad field in " + path.string() + ": " + e.what());
    }
}

Field2D import_field2d_json(const std::filesystem::path& path) {
    const ordered_json j = read_json(path);
    try {
        const auto& axes = j.at("grid").at("axes");
        if (axes.size() != 2) throw IoError(path.string() + " does not hold a 2D field");
        const Grid2D g{axis_from_json(axes.at(0)), axis_from_json(axes.at(1))};
        const auto values = j.at("values").get<std::vector<double>>();
        if (static_cast<Index>(values.size()) != g.size()) throw IoError("value count mismatch in " + path.string());
        return Field2D(g, Eigen::Map<const Field2D::Matrix>(values.data(), g.axis1.count(), g.axis2.count()));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad field layout in " + path.string() + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw IoError("bad field in " + path.string() + ": " + e.what());
    }
}

}  // namespace painleve

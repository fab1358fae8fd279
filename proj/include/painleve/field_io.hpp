#ifndef PAINLEVE_FIELD_IO_HPP
#define PAINLEVE_FIELD_IO_HPP

#include <filesystem>
#include <string>

#include "painleve/grid.hpp"

namespace painleve {

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// Metadata carried in the JSON "meta" object.
struct ExportMeta {
    int n = 0;
    double tolerance = 0.0;
    double residual = 0.0;
    /// Canonical description of the run configuration.
    std::string config;
};

/// CSV: header "<axis>,<value>" then one row per node, 17 significant digits.
/// JSON: {"grid": {"axes": [...]}, "values": [...], "meta": {...}}, values row-major.
/// Files are written to a temporary sibling and renamed into place. Throws IoError.
void export_field(const Field1D& field, Format format, const std::filesystem::path& path,
                  const ExportMeta& meta = {}, const std::string& axis_name = "x",
                  const std::string& value_name = "value");
void export_field(const Field2D& field, Format format, const std::filesystem::path& path,
                  const ExportMeta& meta = {});

std::string field_to_csv(const Field1D& field, const std::string& axis_name = "x",
                         const std::string& value_name = "value");
std::string field_to_csv(const Field2D& field);
std::string field_to_json(const Field1D& field, const ExportMeta& meta = {}, const std::string& axis_name = "x");
std::string field_to_json(const Field2D& field, const ExportMeta& meta = {});

/// Inverse of the JSON export. Throws IoError on unreadable or malformed files.
Field1D import_field1d_json(const std::filesystem::path& path);
Field2D import_field2d_json(const std::filesystem::path& path);

/// Writes `contents` via a temporary file and rename. Throws IoError.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

/// 17 significant digits, enough to read back the same double.
std::string format_double(double value);

}  // namespace painleve

#endif  // PAINLEVE_FIELD_IO_HPP

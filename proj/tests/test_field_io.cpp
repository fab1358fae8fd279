#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "painleve/field_io.hpp"

using namespace painleve;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "painleve_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Index count_lines(const std::string& s) { return static_cast<Index>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("CSV shape") {
    const Field1D z = Field1D::zeros(build_grid1(0.0, 1.0, 3));
    const std::string csv = field_to_csv(z);
    CHECK(count_lines(csv) == 4);
    CHECK(csv.rfind("x,value\n", 0) == 0);
    CHECK(field_to_csv(z, "x", "h").rfind("x,h\n", 0) == 0);

    const Grid2D g{build_grid1(-1.0, 1.0, 7), build_grid1(0.0, 2.0, 5)};
    const Field2D f = Field2D::sample(g, [](double a, double b) { return a * b; });
    const std::string csv2 = field_to_csv(f);
    CHECK(count_lines(csv2) == 7 * 5 + 1);
    CHECK(csv2.rfind("x1,sigma,value\n", 0) == 0);
    // row-major: second data row is (x1_0, sigma_1)
    std::istringstream in(csv2);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "-1,0.5,-0.5");
}

TEST_CASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("JSON round trip is bit-exact") {
    const Grid1D g1 = build_grid1(-3.0, 5.0, 17);
    const Field1D f1 = Field1D::sample(g1, [](double x) { return std::exp(x) / 3.0; });
    const fs::path p1 = scratch("f1.json");
    export_field(f1, Format::json, p1, {3, 1e-8, 2e-9, "cfg"});
    const Field1D back1 = import_field1d_json(p1);
    CHECK(back1.grid() == f1.grid());
    for (Index i = 0; i < f1.size(); ++i) CHECK(back1[i] == f1[i]);

    const Grid2D g2{build_grid1(-8.0, 8.0, 9), build_grid1(0.0, 12.0, 7)};
    const Field2D f2 = Field2D::sample(g2, [](double a, double b) { return std::sin(a) * std::sqrt(b) + 1e-300; });
    const fs::path p2 = scratch("f2.json");
    export_field(f2, Format::json, p2);
    const Field2D back2 = import_field2d_json(p2);
    CHECK(back2.grid() == f2.grid());
    CHECK((back2.values().array() == f2.values().array()).all());
}

TEST_CASE("exports are byte-stable") {
    const Field2D f = Field2D::sample(Grid2D{build_grid1(0.0, 1.0, 5), build_grid1(0.0, 1.0, 4)},
                                      [](double a, double b) { return a / 3.0 + b / 7.0; });
    for (Format fmt : {Format::csv, Format::json}) {
        const fs::path a = scratch("a.out"), b = scratch("b.out");
        export_field(f, fmt, a, {3, 1e-8, 1e-9, "same"});
        export_field(f, fmt, b, {3, 1e-8, 1e-9, "same"});
        CHECK(slurp(a) == slurp(b));
        CHECK_FALSE(fs::exists(fs::path(a.string() + ".tmp")));
    }
}

TEST_CASE("format parsing and I/O errors") {
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("json") == Format::json);
    CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);

    const Field1D z = Field1D::zeros(build_grid1(0.0, 1.0, 3));
    CHECK_THROWS_AS(export_field(z, Format::csv, "/nonexistent-dir/x/y.csv"), IoError);
    CHECK_THROWS_AS(import_field1d_json(scratch("missing.json")), IoError);
    std::ofstream(scratch("bad.json")) << "{\"grid\": 3}";
    CHECK_THROWS_AS(import_field1d_json(scratch("bad.json")), IoError);
    CHECK_THROWS_AS(import_field2d_json(scratch("bad.json")), IoError);
}

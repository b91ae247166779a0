#include <sstream>

#include "doctest.h"
#include "hlo/errors.hpp"
#include "hlo/mesh_io.hpp"
#include "hlo/shapes.hpp"
#include "test_support.hpp"

using namespace hlo;

TEST_CASE("OBJ: minimal triangle") {
    std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    TriMesh m = read_mesh(in, MeshFormat::obj);
    REQUIRE(m.vertex_count() == 3);
    REQUIRE(m.face_count() == 1);
    CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("OBJ: texture/normal indices are ignored, positions kept") {
    std::istringstream in(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nvt 0 0\nf 1/1/1 2/2/2 3/3/3\n");
    TriMesh m = read_mesh(in, MeshFormat::obj);
    REQUIRE(m.face_count() == 1);
    CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
    CHECK(m.positions[1] == Vec3{1, 0, 0});
}

TEST_CASE("OBJ: quads are fan-triangulated") {
    std::istringstream in("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    TriMesh m = read_mesh(in, MeshFormat::obj);
    REQUIRE(m.face_count() == 2);
    CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
    CHECK(m.faces[1] == std::array<int, 3>{0, 2, 3});
}

TEST_CASE("OBJ: negative indices resolve relative to the current count") {
    std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n");
    TriMesh m = read_mesh(in, MeshFormat::obj);
    CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("OBJ: parse errors carry line numbers") {
    std::istringstream bad_number("v 0 0 zero\n");
    CHECK_THROWS_AS(read_mesh(bad_number, MeshFormat::obj), ParseError);
    std::istringstream bad_index("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
    try {
        read_mesh(bad_index, MeshFormat::obj);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("OFF: counted header octahedron") {
    std::ostringstream out;
    write_mesh(shapes::octahedron(), out, MeshFormat::off);
    std::istringstream in(out.str());
    TriMesh m = read_mesh(in, MeshFormat::autodetect);  // sniffed from the OFF token
    CHECK(m.vertex_count() == 6);
    CHECK(m.face_count() == 8);
}

TEST_CASE("OFF: counts may share the header line") {
    std::istringstream in("OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    TriMesh m = read_mesh(in, MeshFormat::off);
    CHECK(m.vertex_count() == 3);
    CHECK(m.face_count() == 1);
}

TEST_CASE("round trip: positions to 1e-9 relative, faces exact") {
    for (MeshFormat format : {MeshFormat::obj, MeshFormat::off}) {
        TriMesh m = shapes::icosphere(2);
        // Stress the formatter with awkward digits.
        std::vector<Vec3> pos = m.positions;
        for (std::size_t i = 0; i < pos.size(); ++i)
            pos[i] = pos[i] * (1.0 + 1e-13 * static_cast<double>(i % 7)) +
                     Vec3{0.123456789012345, -9.87654321098765e-4, 3.14159265358979};
        m = with_positions(m, std::move(pos));

        std::ostringstream out;
        write_mesh(m, out, format);
        std::istringstream in(out.str());
        TriMesh back = read_mesh(in, format);

        REQUIRE(back.vertex_count() == m.vertex_count());
        REQUIRE(back.faces == m.faces);
        const double scale = m.bbox_diagonal;
        for (int v = 0; v < m.vertex_count(); ++v)
            CHECK(norm(back.positions[v] - m.positions[v]) <= 1e-9 * scale);
    }
}

TEST_CASE("write_mesh refuses an empty-face mesh") {
    TriMesh empty;
    empty.positions = {{0, 0, 0}};
    std::ostringstream out;
    CHECK_THROWS_AS(write_mesh(empty, out, MeshFormat::obj), IoError);
}

TEST_CASE("read_mesh: missing file is an IoError") {
    CHECK_THROWS_AS(read_mesh("/nonexistent/mesh.obj"), IoError);
}

TEST_CASE("write_mesh: unknown extension is an UnsupportedFormat") {
    CHECK_THROWS_AS(write_mesh(shapes::octahedron(), "/tmp/mesh.xyz"), UnsupportedFormat);
}

TEST_CASE("scalar field CSV") {
    TriMesh m = shapes::octahedron();
    SUBCASE("vertex field rows") {
        ScalarField f{FieldTarget::vertex, {0, 1, 2, 3, 4, 5}, "test"};
        std::ostringstream out;
        write_scalar_field(f, m, out);
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        CHECK(line == "index,value");
        int rows = 0;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 6);
    }
    SUBCASE("face field rows") {
        ScalarField f{FieldTarget::face, std::vector<double>(8, 1.5), "areas"};
        std::ostringstream out;
        write_scalar_field(f, m, out);
        std::string text = out.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 9);  // header + 8 rows
    }
    SUBCASE("length mismatch") {
        ScalarField f{FieldTarget::vertex, {1.0, 2.0}, "broken"};
        std::ostringstream out;
        CHECK_THROWS_AS(write_scalar_field(f, m, out), LengthMismatch);
    }
}

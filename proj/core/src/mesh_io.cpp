#include "hlo/mesh_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hlo/errors.hpp"

namespace hlo {

namespace {

// Locale-independent scalar formatting, 15 significant digits.
std::string format_double(double v) {
    std::array<char, 64> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                             std::chars_format::general, 15);
    return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, int line) {
    double value = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
    return value;
}

long parse_long(std::string_view tok, int line) {
    long value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

void fan_triangulate(const std::vector<int>& poly, std::vector<std::array<int, 3>>& faces) {
    for (std::size_t k = 1; k + 1 < poly.size(); ++k)
        faces.push_back({poly[0], poly[static_cast<int>(k)], poly[k + 1]});
}

TriMesh read_obj(std::istream& in) {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view sv = trim(raw);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
        if (sv.empty()) continue;
        const auto tokens = split_ws(sv);
        if (tokens[0] == "v") {
            if (tokens.size() < 4) throw ParseError(line, "vertex record needs 3 coordinates");
            positions.push_back({parse_double(tokens[1], line), parse_double(tokens[2], line),
                                 parse_double(tokens[3], line)});
        } else if (tokens[0] == "f") {
            if (tokens.size() < 4) throw ParseError(line, "face record needs at least 3 vertices");
            std::vector<int> poly;
            poly.reserve(tokens.size() - 1);
            for (std::size_t t = 1; t < tokens.size(); ++t) {
                std::string_view ref = tokens[t];
                if (auto slash = ref.find('/'); slash != std::string_view::npos)
                    ref = ref.substr(0, slash);
                long idx = parse_long(ref, line);
                if (idx < 0) idx = static_cast<long>(positions.size()) + idx + 1;
                if (idx < 1 || idx > static_cast<long>(positions.size()))
                    throw ParseError(line, "face references vertex " + std::string(tokens[t]) +
                                               " out of range");
                poly.push_back(static_cast<int>(idx - 1));
            }
            fan_triangulate(poly, faces);
        }
        // Every other record type (vn, vt, g, usemtl, ...) carries no geometry.
    }
    if (positions.empty()) throw ParseError(line, "no vertex records found");
    return build_mesh(std::move(positions), std::move(faces));
}

TriMesh read_off(std::istream& in) {
    std::string raw;
    int line = 0;

    auto next_tokens = [&](std::vector<std::string>& out) {
        out.clear();
        while (std::getline(in, raw)) {
            ++line;
            std::string_view sv = trim(raw);
            if (auto hash = sv.find('#'); hash != std::string_view::npos)
                sv = trim(sv.substr(0, hash));
            if (sv.empty()) continue;
            for (auto t : split_ws(sv)) out.emplace_back(t);
            return true;
        }
        return false;
    };

    std::vector<std::string> tokens;
    if (!next_tokens(tokens)) throw ParseError(line, "empty OFF stream");
    if (tokens[0] != "OFF") throw ParseError(line, "missing OFF header");
    tokens.erase(tokens.begin());

    // Counts either follow on the header line or come next.
    while (tokens.size() < 3) {
        std::vector<std::string> more;
        if (!next_tokens(more)) throw ParseError(line, "missing OFF element counts");
        tokens.insert(tokens.end(), more.begin(), more.end());
    }
    const long nv = parse_long(tokens[0], line);
    const long nf = parse_long(tokens[1], line);
    if (nv < 0 || nf < 0) throw ParseError(line, "negative OFF element count");

    std::vector<Vec3> positions;
    positions.reserve(nv);
    std::vector<std::string> rec;
    for (long i = 0; i < nv; ++i) {
        if (!next_tokens(rec) || rec.size() < 3)
            throw ParseError(line, "expected vertex " + std::to_string(i));
        positions.push_back(
            {parse_double(rec[0], line), parse_double(rec[1], line), parse_double(rec[2], line)});
    }

    std::vector<std::array<int, 3>> faces;
    faces.reserve(nf);
    for (long i = 0; i < nf; ++i) {
        if (!next_tokens(rec)) throw ParseError(line, "expected face " + std::to_string(i));
        const long k = parse_long(rec[0], line);
        if (k < 3 || static_cast<long>(rec.size()) < 1 + k)
            throw ParseError(line, "face " + std::to_string(i) + " has too few vertices");
        std::vector<int> poly;
        poly.reserve(k);
        for (long t = 1; t <= k; ++t) {
            const long idx = parse_long(rec[t], line);
            if (idx < 0 || idx >= nv)
                throw ParseError(line, "face references vertex " + std::to_string(idx) +
                                           " out of range");
            poly.push_back(static_cast<int>(idx));
        }
        fan_triangulate(poly, faces);
    }
    return build_mesh(std::move(positions), std::move(faces));
}

MeshFormat format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".obj") return MeshFormat::obj;
    if (ext == ".off") return MeshFormat::off;
    return MeshFormat::autodetect;
}

MeshFormat sniff_format(std::istream& in) {
    // OFF files start with the literal token; anything else we treat as OBJ.
    const auto start = in.tellg();
    std::string word;
    in >> word;
    in.clear();
    in.seekg(start);
    return word == "OFF" ? MeshFormat::off : MeshFormat::obj;
}

}  // namespace

TriMesh read_mesh(std::istream& in, MeshFormat format) {
    if (format == MeshFormat::autodetect) format = sniff_format(in);
    return format == MeshFormat::obj ? read_obj(in) : read_off(in);
}

TriMesh read_mesh(const std::filesystem::path& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("IoError: cannot open '" + path.string() + "' for reading");
    if (format == MeshFormat::autodetect) {
        format = format_from_extension(path);
        if (format == MeshFormat::autodetect) format = sniff_format(in);
    }
    return read_mesh(in, format);
}

void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format) {
    if (format == MeshFormat::autodetect)
        throw UnsupportedFormat("write_mesh: stream output needs an explicit format");
    if (mesh.faces.empty()) throw IoError("IoError: refusing to write a mesh with no faces");

    if (format == MeshFormat::obj) {
        for (const Vec3& p : mesh.positions)
            out << "v " << format_double(p.x) << ' ' << format_double(p.y) << ' '
                << format_double(p.z) << '\n';
        for (const auto& [a, b, c] : mesh.faces)
            out << "f " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << '\n';
    } else {
        out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
        for (const Vec3& p : mesh.positions)
            out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z)
                << '\n';
        for (const auto& [a, b, c] : mesh.faces) out << "3 " << a << ' ' << b << ' ' << c << '\n';
    }
    if (!out) throw IoError("IoError: stream write failed");
}

void write_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format) {
    if (format == MeshFormat::autodetect) {
        format = format_from_extension(path);
        if (format == MeshFormat::autodetect)
            throw UnsupportedFormat("write_mesh: cannot infer format from '" + path.string() +
                                    "'");
    }
    std::ofstream out(path);
    if (!out) throw IoError("IoError: cannot open '" + path.string() + "' for writing");
    write_mesh(mesh, out, format);
}

void write_scalar_field(const ScalarField& field, const TriMesh& mesh, std::ostream& out) {
    const std::size_t expected = field.target == FieldTarget::vertex
                                     ? mesh.positions.size()
                                     : mesh.faces.size();
    if (field.values.size() != expected)
        throw LengthMismatch("write_scalar_field: field '" + field.label + "' has " +
                             std::to_string(field.values.size()) + " values, mesh expects " +
                             std::to_string(expected));
    out << "index,value\n";
    for (std::size_t i = 0; i < field.values.size(); ++i)
        out << i << ',' << format_double(field.values[i]) << '\n';
    if (!out) throw IoError("IoError: stream write failed");
}

void write_scalar_field(const ScalarField& field, const TriMesh& mesh,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("IoError: cannot open '" + path.string() + "' for writing");
    write_scalar_field(field, mesh, out);
}

}  // namespace hlo

#include "hullbench/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "hullbench/errors.hpp"

namespace hullbench {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
}

// Accepts "7", "7/2", "7//3"; OBJ indices are 1-based.
int parse_obj_index(const std::string& token, const std::string& path, std::size_t line) {
    std::size_t end = token.find('/');
    const std::string head = token.substr(0, end);
    try {
        std::size_t used = 0;
        const int idx = std::stoi(head, &used);
        if (used != head.size()) throw std::invalid_argument("trailing chars");
        if (idx < 1) fail(path, line, "face index must be positive (1-based), got '" + token + "'");
        return idx;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(path, line, "invalid face index '" + token + "'");
    }
}

void check_face(TriangleMesh& mesh, const std::array<int, 3>& face,
                const std::string& path, std::size_t line) {
    const int n = static_cast<int>(mesh.vertices.size());
    for (int idx : face) {
        if (idx >= n)
            fail(path, line,
                 "face " + std::to_string(mesh.faces.size()) + " references vertex " +
                     std::to_string(idx + 1) + " but only " + std::to_string(n) +
                     " vertices are defined");
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
        fail(path, line,
             "face " + std::to_string(mesh.faces.size()) + " is degenerate (repeated vertex index)");
    mesh.faces.push_back(face);
}

TriangleMesh load_obj(const std::string& path, std::istream& in) {
    TriangleMesh mesh;
    bool any_color = false;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        std::istringstream line(text);
        std::string tag;
        if (!(line >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z;
            if (!(line >> x >> y >> z))
                fail(path, line_no, "expected 3 coordinates after 'v'");
            double r, g, b;
            if (line >> r) {
                if (!(line >> g >> b))
                    fail(path, line_no, "expected 3 color components after coordinates");
                any_color = true;
                mesh.vertex_colors.resize(mesh.vertices.size(), {0.7, 0.7, 0.7});
                mesh.vertex_colors.push_back({r, g, b});
            } else if (any_color) {
                mesh.vertex_colors.push_back({0.7, 0.7, 0.7});
            }
            if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
                fail(path, line_no, "non-finite vertex coordinate");
            mesh.vertices.push_back({x, y, z});
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string token;
            while (line >> token) idx.push_back(parse_obj_index(token, path, line_no) - 1);
            if (idx.size() < 3)
                fail(path, line_no, "face needs at least 3 indices");
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                check_face(mesh, {idx[0], idx[k], idx[k + 1]}, path, line_no);
        }
        // Other tags (vn, vt, o, g, s, usemtl, ...) are ignored.
    }
    return mesh;
}

struct PlyProperty {
    std::string type;
    std::string name;
};

TriangleMesh load_ply(const std::string& path, std::istream& in) {
    std::string text;
    std::size_t line_no = 0;

    auto next_line = [&]() -> std::string {
        if (!std::getline(in, text)) fail(path, line_no, "unexpected end of file");
        ++line_no;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        return text;
    };

    if (next_line() != "ply") fail(path, line_no, "not a PLY file (missing 'ply' magic)");

    struct Element {
        std::string name;
        std::size_t count = 0;
        std::vector<PlyProperty> properties;
        bool list = false;
    };
    std::vector<Element> elements;
    bool ascii = false;

    for (;;) {
        std::istringstream line(next_line());
        std::string tag;
        line >> tag;
        if (tag == "comment" || tag.empty()) continue;
        if (tag == "format") {
            std::string fmt;
            line >> fmt;
            if (fmt != "ascii")
                fail(path, line_no,
                     "binary PLY is not supported; re-export as 'format ascii 1.0'");
            ascii = true;
        } else if (tag == "element") {
            Element e;
            if (!(line >> e.name >> e.count)) fail(path, line_no, "malformed element line");
            elements.push_back(e);
        } else if (tag == "property") {
            if (elements.empty()) fail(path, line_no, "property before any element");
            std::string type;
            line >> type;
            if (type == "list") {
                std::string count_type, value_type, name;
                if (!(line >> count_type >> value_type >> name))
                    fail(path, line_no, "malformed list property");
                elements.back().list = true;
                elements.back().properties.push_back({"list", name});
            } else {
                std::string name;
                if (!(line >> name)) fail(path, line_no, "malformed property");
                elements.back().properties.push_back({type, name});
            }
        } else if (tag == "end_header") {
            break;
        } else {
            fail(path, line_no, "unrecognized header line '" + tag + "'");
        }
    }
    if (!ascii) fail(path, line_no, "missing 'format ascii 1.0' line");

    TriangleMesh mesh;
    for (const auto& element : elements) {
        if (element.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
            std::string color_type;
            for (std::size_t p = 0; p < element.properties.size(); ++p) {
                const auto& prop = element.properties[p];
                if (prop.name == "x") ix = static_cast<int>(p);
                else if (prop.name == "y") iy = static_cast<int>(p);
                else if (prop.name == "z") iz = static_cast<int>(p);
                else if (prop.name == "red") { ir = static_cast<int>(p); color_type = prop.type; }
                else if (prop.name == "green") ig = static_cast<int>(p);
                else if (prop.name == "blue") ib = static_cast<int>(p);
            }
            if (ix < 0 || iy < 0 || iz < 0)
                fail(path, line_no, "vertex element lacks x/y/z properties");
            const bool has_color = ir >= 0 && ig >= 0 && ib >= 0;
            const double color_scale =
                (color_type == "float" || color_type == "double") ? 1.0 : 1.0 / 255.0;
            for (std::size_t v = 0; v < element.count; ++v) {
                std::istringstream line(next_line());
                std::vector<double> values;
                double value;
                while (line >> value) values.push_back(value);
                if (values.size() < element.properties.size())
                    fail(path, line_no, "vertex line has too few values");
                mesh.vertices.push_back({values[ix], values[iy], values[iz]});
                if (!mesh.vertices.back().finite())
                    fail(path, line_no, "non-finite vertex coordinate");
                if (has_color)
                    mesh.vertex_colors.push_back({values[ir] * color_scale,
                                                  values[ig] * color_scale,
                                                  values[ib] * color_scale});
            }
        } else if (element.name == "face") {
            for (std::size_t f = 0; f < element.count; ++f) {
                std::istringstream line(next_line());
                int count;
                if (!(line >> count) || count < 3)
                    fail(path, line_no, "face line must start with an index count >= 3");
                std::vector<int> idx(count);
                for (int k = 0; k < count; ++k) {
                    if (!(line >> idx[k])) fail(path, line_no, "face line has too few indices");
                    if (idx[k] < 0) fail(path, line_no, "negative face index");
                }
                for (int k = 1; k + 1 < count; ++k)
                    check_face(mesh, {idx[0], idx[k], idx[k + 1]}, path, line_no);
            }
        } else {
            for (std::size_t skip = 0; skip < element.count; ++skip) next_line();
        }
    }
    return mesh;
}

}  // namespace

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

TriangleMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mesh file '" + path + "'");
    const std::string ext = lower_ext(path);
    TriangleMesh mesh;
    if (ext == "obj") mesh = load_obj(path, in);
    else if (ext == "ply") mesh = load_ply(path, in);
    else throw ConfigError("unsupported mesh extension '." + ext + "' (use .obj or .ply)");
    validate_mesh(mesh);
    return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
    validate_mesh(mesh);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    const std::string ext = lower_ext(path);
    if (ext == "obj") {
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            const auto& v = mesh.vertices[i];
            out << "v " << format_g9(v.x) << ' ' << format_g9(v.y) << ' ' << format_g9(v.z);
            if (mesh.has_colors()) {
                const auto& c = mesh.vertex_colors[i];
                out << ' ' << format_g9(c[0]) << ' ' << format_g9(c[1]) << ' '
                    << format_g9(c[2]);
            }
            out << '\n';
        }
        for (const auto& f : mesh.faces)
            out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    } else if (ext == "ply") {
        out << "ply\nformat ascii 1.0\n";
        out << "element vertex " << mesh.vertices.size() << "\n";
        out << "property float x\nproperty float y\nproperty float z\n";
        if (mesh.has_colors())
            out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
        out << "element face " << mesh.faces.size() << "\n";
        out << "property list uchar int vertex_indices\n";
        out << "end_header\n";
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            const auto& v = mesh.vertices[i];
            out << format_g9(v.x) << ' ' << format_g9(v.y) << ' ' << format_g9(v.z);
            if (mesh.has_colors()) {
                const auto& c = mesh.vertex_colors[i];
                for (double channel : c)
                    out << ' ' << static_cast<int>(std::lround(channel * 255.0));
            }
            out << '\n';
        }
        for (const auto& f : mesh.faces)
            out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    } else {
        throw ConfigError("unsupported mesh extension '." + ext + "' (use .obj or .ply)");
    }
    if (!out) throw ConfigError("write failure on '" + path + "'");
}

}  // namespace hullbench

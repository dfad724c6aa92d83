#include "krf/ply.hpp"

#include "krf/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace krf {

namespace {

enum class Scalar { int8, uint8, int16, uint16, int32, uint32, float32, float64 };

std::optional<Scalar> parse_scalar(std::string_view t) {
    if (t == "char" || t == "int8") return Scalar::int8;
    if (t == "uchar" || t == "uint8") return Scalar::uint8;
    if (t == "short" || t == "int16") return Scalar::int16;
    if (t == "ushort" || t == "uint16") return Scalar::uint16;
    if (t == "int" || t == "int32") return Scalar::int32;
    if (t == "uint" || t == "uint32") return Scalar::uint32;
    if (t == "float" || t == "float32") return Scalar::float32;
    if (t == "double" || t == "float64") return Scalar::float64;
    return std::nullopt;
}

std::size_t scalar_size(Scalar s) {
    switch (s) {
        case Scalar::int8:
        case Scalar::uint8: return 1;
        case Scalar::int16:
        case Scalar::uint16: return 2;
        case Scalar::int32:
        case Scalar::uint32:
        case Scalar::float32: return 4;
        case Scalar::float64: return 8;
    }
    return 0;
}

struct Property {
    std::string name;
    Scalar type = Scalar::float32;
    bool is_list = false;
};

struct Element {
    std::string name;
    std::uint64_t count = 0;
    std::vector<Property> properties;
};

template <typename T>
T load_le(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        auto* b = reinterpret_cast<unsigned char*>(&v);
        std::reverse(b, b + sizeof(T));
    }
    return v;
}

template <typename T>
void store_le(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(buf, sizeof(T));
}

double load_scalar(Scalar s, const char* p) {
    switch (s) {
        case Scalar::int8: return static_cast<double>(load_le<std::int8_t>(p));
        case Scalar::uint8: return static_cast<double>(load_le<std::uint8_t>(p));
        case Scalar::int16: return static_cast<double>(load_le<std::int16_t>(p));
        case Scalar::uint16: return static_cast<double>(load_le<std::uint16_t>(p));
        case Scalar::int32: return static_cast<double>(load_le<std::int32_t>(p));
        case Scalar::uint32: return static_cast<double>(load_le<std::uint32_t>(p));
        case Scalar::float32: return static_cast<double>(load_le<float>(p));
        case Scalar::float64: return load_le<double>(p);
    }
    return 0.0;
}

class AsciiCursor {
public:
    AsciiCursor(std::string_view data, std::size_t offset) : data_(data), pos_(offset) {}

    std::size_t offset() const { return pos_; }

    std::optional<std::string_view> token() {
        while (pos_ < data_.size() && std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        if (pos_ >= data_.size()) return std::nullopt;
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        return data_.substr(start, pos_ - start);
    }

    double number(const char* what) {
        const std::size_t at = pos_;
        const auto tok = token();
        if (!tok) throw ParseError(std::string("unexpected end of file reading ") + what, at);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok->data(), tok->data() + tok->size(), v);
        if (ec != std::errc{} || ptr != tok->data() + tok->size()) {
            throw ParseError(std::string("malformed number for ") + what + ": '" + std::string(*tok) + "'",
                             static_cast<std::uint64_t>(tok->data() - data_.data()));
        }
        return v;
    }

    void skip_line() {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
        if (pos_ < data_.size()) ++pos_;
    }

private:
    std::string_view data_;
    std::size_t pos_;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open PLY file: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

}  // namespace

ColoredPointCloud ply_read(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    const std::string_view view(data);
    const std::string where = " in " + path.string();

    // Header
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string> {
        if (pos >= view.size()) return std::nullopt;
        std::size_t end = view.find('\n', pos);
        if (end == std::string_view::npos) end = view.size();
        std::string line(view.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = std::min(view.size(), end + 1);
        return line;
    };

    auto first = next_line();
    if (!first || *first != "ply") throw ParseError("missing 'ply' magic" + where, 0);

    std::optional<PlyFormat> format;
    std::vector<Element> elements;
    bool header_done = false;
    while (!header_done) {
        const std::size_t line_start = pos;
        auto line = next_line();
        if (!line) throw ParseError("header not terminated by end_header" + where, line_start);
        std::istringstream ls(*line);
        std::string kw;
        ls >> kw;
        if (kw.empty() || kw == "comment" || kw == "obj_info") continue;
        if (kw == "end_header") {
            header_done = true;
        } else if (kw == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") {
                format = PlyFormat::ascii;
            } else if (fmt == "binary_little_endian") {
                format = PlyFormat::binary_le;
            } else {
                throw ParseError("unsupported PLY format '" + fmt + "'" + where, line_start);
            }
        } else if (kw == "element") {
            Element e;
            long long count = -1;
            ls >> e.name >> count;
            if (!ls || count < 0) throw ParseError("malformed element line" + where, line_start);
            e.count = static_cast<std::uint64_t>(count);
            elements.push_back(std::move(e));
        } else if (kw == "property") {
            if (elements.empty()) throw ParseError("property before any element" + where, line_start);
            std::string type;
            ls >> type;
            Property p;
            if (type == "list") {
                std::string count_type, item_type;
                ls >> count_type >> item_type >> p.name;
                if (!parse_scalar(count_type) || !parse_scalar(item_type)) {
                    throw ParseError("unsupported list property types" + where, line_start);
                }
                p.is_list = true;
                p.type = *parse_scalar(item_type);
            } else {
                const auto s = parse_scalar(type);
                if (!s) throw ParseError("unsupported property type '" + type + "'" + where, line_start);
                ls >> p.name;
                p.type = *s;
            }
            if (p.name.empty()) throw ParseError("property without a name" + where, line_start);
            elements.back().properties.push_back(std::move(p));
        } else {
            throw ParseError("unknown header keyword '" + kw + "'" + where, line_start);
        }
    }
    if (!format) throw ParseError("missing format line" + where, 0);

    const auto vertex_it = std::find_if(elements.begin(), elements.end(), [](const Element& e) { return e.name == "vertex"; });
    if (vertex_it == elements.end()) throw ParseError("no vertex element" + where, pos);
    const Element& vertex = *vertex_it;

    int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
    for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
        const Property& p = vertex.properties[i];
        if (p.is_list) throw ParseError("list property '" + p.name + "' on vertex element is unsupported" + where, pos);
        const int idx = static_cast<int>(i);
        const bool is_float = p.type == Scalar::float32 || p.type == Scalar::float64;
        if (p.name == "x" || p.name == "y" || p.name == "z") {
            if (!is_float) throw ParseError("vertex property '" + p.name + "' must be float or double" + where, pos);
            (p.name == "x" ? ix : p.name == "y" ? iy : iz) = idx;
        } else if (p.name == "red" || p.name == "green" || p.name == "blue") {
            if (p.type != Scalar::uint8) throw ParseError("color property '" + p.name + "' must be uchar" + where, pos);
            (p.name == "red" ? ir : p.name == "green" ? ig : ib) = idx;
        }
    }
    if (ix < 0 || iy < 0 || iz < 0) throw ParseError("vertex element lacks x, y or z" + where, pos);
    const int color_props = (ir >= 0) + (ig >= 0) + (ib >= 0);
    if (color_props != 0 && color_props != 3) throw ParseError("partial color properties" + where, pos);
    const bool colored = color_props == 3;

    ColoredPointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(vertex.count, 1u << 24)));
    std::vector<double> row(vertex.properties.size());

    auto emit = [&](std::uint64_t at) {
        ColoredPoint p;
        p.position = Vec3(row[ix], row[iy], row[iz]);
        if (!p.position.allFinite()) throw ParseError("non-finite vertex position" + where, at);
        if (colored) p.color = Rgb(row[ir] / 255.0, row[ig] / 255.0, row[ib] / 255.0);
        cloud.points.push_back(p);
    };

    const bool vertex_is_last = (vertex_it + 1) == elements.end();

    if (*format == PlyFormat::binary_le) {
        for (auto it = elements.begin(); it != vertex_it; ++it) {
            std::size_t row_size = 0;
            for (const auto& p : it->properties) {
                if (p.is_list) throw ParseError("list property before vertex element is unsupported" + where, pos);
                row_size += scalar_size(p.type);
            }
            const std::uint64_t skip = row_size * it->count;
            if (view.size() - pos < skip) throw ParseError("truncated element '" + it->name + "'" + where, view.size());
            pos += static_cast<std::size_t>(skip);
        }
        std::vector<std::size_t> offs;
        std::size_t row_size = 0;
        for (const auto& p : vertex.properties) {
            offs.push_back(row_size);
            row_size += scalar_size(p.type);
        }
        for (std::uint64_t v = 0; v < vertex.count; ++v) {
            if (view.size() - pos < row_size) {
                throw ParseError("truncated vertex data: expected " + std::to_string(vertex.count) + " vertices, got " +
                                     std::to_string(v) + where,
                                 view.size());
            }
            for (std::size_t i = 0; i < row.size(); ++i) row[i] = load_scalar(vertex.properties[i].type, view.data() + pos + offs[i]);
            emit(pos);
            pos += row_size;
        }
        if (vertex_is_last && pos != view.size()) {
            throw ParseError("trailing bytes after declared vertex count" + where, pos);
        }
    } else {
        AsciiCursor cur(view, pos);
        for (auto it = elements.begin(); it != vertex_it; ++it) {
            for (std::uint64_t k = 0; k < it->count; ++k) cur.skip_line();
        }
        for (std::uint64_t v = 0; v < vertex.count; ++v) {
            const std::uint64_t at = cur.offset();
            for (std::size_t i = 0; i < row.size(); ++i) row[i] = cur.number(vertex.properties[i].name.c_str());
            if (colored) {
                for (int c : {ir, ig, ib}) {
                    if (row[c] < 0 || row[c] > 255 || row[c] != std::floor(row[c])) {
                        throw ParseError("color value out of uchar range" + where, at);
                    }
                }
            }
            emit(at);
        }
        if (vertex_is_last) {
            const std::size_t at = cur.offset();
            if (cur.token()) throw ParseError("extra data after declared vertex count" + where, at);
        }
    }
    return cloud;
}

void ply_write(const ColoredPointCloud& cloud, const std::filesystem::path& path, PlyFormat format) {
    if (cloud.empty()) throw InvalidInput("ply_write: refusing to write an empty cloud");
    const auto n_colored = std::count_if(cloud.points.begin(), cloud.points.end(), [](const ColoredPoint& p) { return p.colored(); });
    if (n_colored != 0 && static_cast<std::size_t>(n_colored) != cloud.size()) {
        throw InvalidInput("ply_write: cloud mixes colored and uncolored points");
    }
    const bool colored = n_colored != 0;

    std::string out;
    out += "ply\n";
    out += format == PlyFormat::ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
    out += "element vertex " + std::to_string(cloud.size()) + "\n";
    out += "property double x\nproperty double y\nproperty double z\n";
    if (colored) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out += "end_header\n";

    auto to_byte = [](double c) { return static_cast<std::uint8_t>(std::lround(c * 255.0)); };
    for (const auto& p : cloud.points) {
        if (format == PlyFormat::ascii) {
            out += format_double(p.position.x()) + ' ' + format_double(p.position.y()) + ' ' + format_double(p.position.z());
            if (colored) {
                out += ' ' + std::to_string(to_byte(p.color->r())) + ' ' + std::to_string(to_byte(p.color->g())) + ' ' +
                       std::to_string(to_byte(p.color->b()));
            }
            out += '\n';
        } else {
            store_le(out, p.position.x());
            store_le(out, p.position.y());
            store_le(out, p.position.z());
            if (colored) {
                store_le(out, to_byte(p.color->r()));
                store_le(out, to_byte(p.color->g()));
                store_le(out, to_byte(p.color->b()));
            }
        }
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace krf

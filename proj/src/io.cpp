#include "scx/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scx {

using ordered_json = nlohmann::ordered_json;

void write_wsc(std::ostream& os, const WeightedComplex& cx) {
    ordered_json header;
    header["format"] = "wsc-v1";
    header["dimension"] = cx.max_degree();
    header["include_empty"] = cx.include_empty();
    header["count"] = cx.total_size();
    os << header.dump() << '\n';
    for (int k = cx.min_degree(); k <= cx.max_degree(); ++k) {
        for (std::size_t i = 0; i < cx.size(k); ++i) {
            ordered_json line;
            line["s"] = cx.simplex(k, i).vertices();
            line["m"] = cx.mass(k, i);
            line["interior"] = cx.interior(k, i);
            os << line.dump() << '\n';
        }
    }
}

void write_wsc_file(const std::string& path, const WeightedComplex& cx) {
    std::ofstream os(path);
    if (!os) throw ComplexError("cannot open for writing: " + path);
    write_wsc(os, cx);
}

WeightedComplex read_wsc(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> ComplexError {
        return ComplexError("wsc line " + std::to_string(lineno) + ": " + msg);
    };

    if (!std::getline(is, line)) throw ComplexError("wsc: empty input");
    lineno = 1;
    ordered_json header;
    try {
        header = ordered_json::parse(line);
    } catch (const std::exception& e) {
        throw fail(std::string("bad JSON: ") + e.what());
    }
    if (!header.is_object() || header.value("format", "") != "wsc-v1")
        throw fail("missing wsc-v1 header");

    ComplexBuilder b;
    bool any = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json rec;
        try {
            rec = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw fail(std::string("bad JSON: ") + e.what());
        }
        if (!rec.is_object() || !rec.contains("s") || !rec.contains("m"))
            throw fail("record must have \"s\" and \"m\"");
        if (!rec["s"].is_array()) throw fail("\"s\" must be an array");
        std::vector<vertex_id> verts;
        vertex_id prev = 0;
        bool first = true;
        for (const auto& v : rec["s"]) {
            if (!v.is_number_integer()) throw fail("vertex ids must be integers");
            vertex_id id = v.get<vertex_id>();
            if (!first && id <= prev) throw fail("vertex list must be strictly increasing");
            verts.push_back(id);
            prev = id;
            first = false;
        }
        if (!rec["m"].is_number()) throw fail("\"m\" must be a number");
        double m = rec["m"].get<double>();
        if (!(m > 0.0)) throw fail("mass must be positive");
        bool interior = rec.value("interior", true);
        try {
            b.add(Simplex(std::span<const vertex_id>(verts)), m, interior);
        } catch (const ComplexError& e) {
            throw fail(e.what());
        }
        any = true;
    }
    if (!any) throw ComplexError("wsc: no simplex records");
    try {
        return b.finalize();
    } catch (const ComplexError& e) {
        throw ComplexError(std::string("wsc: ") + e.what());
    }
}

WeightedComplex read_wsc_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ComplexError("cannot open: " + path);
    return read_wsc(is);
}

} // namespace scx

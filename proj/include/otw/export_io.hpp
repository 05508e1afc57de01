// Serialization of the block-diagonalization data.  Nested structures go to
// JSON, flat tables to CSV (or JSON on request).  All rationals are written
// in the canonical "p/q" text form; output is byte-deterministic for a fixed
// m: canonical orderings everywhere and no timestamps.
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "otw/decomp.hpp"
#include "otw/orbit_basis.hpp"
#include "otw/spectral.hpp"

namespace otw {

using Json = nlohmann::ordered_json;

enum class TableFormat { csv, json };

inline TableFormat parse_format(const std::string& s) {
    if (s == "csv") return TableFormat::csv;
    if (s == "json") return TableFormat::json;
    throw std::invalid_argument("unknown format '" + s + "' (want json|csv)");
}

namespace detail {

inline void write_file(const std::filesystem::path& path,
                       const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

struct UpsilonRow {
    int mu = 0, d = 0, block_dim = 0;
    long long multiplicity = 0;
    bool operator==(const UpsilonRow&) const = default;
};

struct StructureConstantRow {
    TripleType a, b, c;
    long long count = 0;
    bool operator==(const StructureConstantRow&) const = default;
};

inline std::vector<UpsilonRow> upsilon_rows(const Decomposition& dec) {
    std::vector<UpsilonRow> rows;
    for (std::size_t i = 0; i < dec.report.pairs.size(); ++i)
        rows.push_back({dec.report.pairs[i].first, dec.report.pairs[i].second,
                        dec.report.pairs[i].second + 1,
                        dec.report.multiplicities[i]});
    return rows;
}

inline std::vector<StructureConstantRow> structure_constant_rows(
    const OrbitBasis& ob, const StructureConstants& sc) {
    std::vector<StructureConstantRow> rows;
    for (int a = 0; a < sc.ntypes; ++a)
        for (int b = 0; b < sc.ntypes; ++b)
            for (const auto& [c, k] : sc.table[a][b])
                rows.push_back({ob.types.types[a], ob.types.types[b],
                                ob.types.types[c], k});
    return rows;
}

inline Json type_json(const TripleType& tt) {
    return Json::array({tt.i, tt.j, tt.t, tt.p});
}

struct ExportPaths {
    std::filesystem::path manifest, upsilon, structure, basis, blocks;
};

inline ExportPaths export_paths(const std::filesystem::path& dir,
                                TableFormat fmt) {
    const std::string ext = fmt == TableFormat::csv ? ".csv" : ".json";
    return {dir / "manifest.json", dir / ("upsilon" + ext),
            dir / ("structure_constants" + ext), dir / "basis.json",
            dir / "blocks.json"};
}

/// Write the full bundle; `blocks` must come from verify_block_structure on
/// the same decomposition.
inline ExportPaths write_export_bundle(const std::filesystem::path& dir,
                                       TableFormat fmt,
                                       const GraphContext& ctx,
                                       const SpectralData& sd,
                                       const OrbitBasis& ob,
                                       const StructureConstants& sc,
                                       const Decomposition& dec,
                                       const BlockStructureResult& blocks) {
    std::filesystem::create_directories(dir);
    const ExportPaths paths = export_paths(dir, fmt);

    long long b_count = 0;
    for (const auto& comp : dec.components)
        b_count += comp.multiplicity * (comp.d + 1);

    Json manifest;
    manifest["m"] = ctx.m;
    manifest["vertex_count"] = ctx.vertex_count;
    manifest["dim_t"] = dec.report.dim_t;
    manifest["upsilon_count"] = static_cast<long long>(dec.upsilon.pairs.size());
    manifest["center_dimension"] = blocks.center_dimension;
    manifest["b_vector_count"] = b_count;
    manifest["eigenvalues"] = sd.eigenvalues;
    manifest["eigenvalue_multiplicities"] = sd.multiplicities;
    manifest["q_ordering"] = sd.q_ordering;
    manifest["q_orderings_found"] =
        static_cast<long long>(sd.valid_orderings.size());
    detail::write_file(paths.manifest, manifest.dump(2) + "\n");

    const auto urows = upsilon_rows(dec);
    if (fmt == TableFormat::csv) {
        std::ostringstream csv;
        csv << "mu,d,block_dim,multiplicity\n";
        for (const auto& r : urows)
            csv << r.mu << ',' << r.d << ',' << r.block_dim << ','
                << r.multiplicity << '\n';
        detail::write_file(paths.upsilon, csv.str());
    } else {
        Json arr = Json::array();
        for (const auto& r : urows)
            arr.push_back({{"mu", r.mu},
                           {"d", r.d},
                           {"block_dim", r.block_dim},
                           {"multiplicity", r.multiplicity}});
        detail::write_file(paths.upsilon, arr.dump(2) + "\n");
    }

    const auto srows = structure_constant_rows(ob, sc);
    if (fmt == TableFormat::csv) {
        std::ostringstream csv;
        csv << "a_i,a_j,a_t,a_p,b_i,b_j,b_t,b_p,c_i,c_j,c_t,c_p,count\n";
        for (const auto& r : srows)
            csv << r.a.i << ',' << r.a.j << ',' << r.a.t << ',' << r.a.p << ','
                << r.b.i << ',' << r.b.j << ',' << r.b.t << ',' << r.b.p << ','
                << r.c.i << ',' << r.c.j << ',' << r.c.t << ',' << r.c.p << ','
                << r.count << '\n';
        detail::write_file(paths.structure, csv.str());
    } else {
        Json arr = Json::array();
        for (const auto& r : srows)
            arr.push_back({{"a", type_json(r.a)},
                           {"b", type_json(r.b)},
                           {"c", type_json(r.c)},
                           {"count", r.count}});
        detail::write_file(paths.structure, arr.dump(2) + "\n");
    }

    // change-of-basis columns grouped by component
    Json basis;
    basis["m"] = ctx.m;
    basis["components"] = Json::array();
    for (const auto& comp : dec.components) {
        Json jc;
        jc["mu"] = comp.mu;
        jc["d"] = comp.d;
        jc["nu"] = comp.nu;
        jc["multiplicity"] = comp.multiplicity;
        jc["modules"] = Json::array();
        for (std::size_t s = 0; s < comp.modules.size(); ++s) {
            Json jm;
            jm["seed"] = s;
            jm["vectors"] = Json::array();
            for (std::size_t k = 0; k < comp.modules[s].size(); ++k) {
                const QVec& v = comp.modules[s][k];
                Json jv;
                jv["k"] = comp.nu + static_cast<int>(k);
                jv["squared_norm"] = rat_to_string(comp.module_norms[s][k]);
                Json entries = Json::array();
                for (std::size_t y = 0; y < v.size(); ++y)
                    if (v[y] != 0)
                        entries.push_back(Json::array(
                            {static_cast<long long>(y), rat_to_string(v[y])}));
                jv["entries"] = std::move(entries);
                jm["vectors"].push_back(std::move(jv));
            }
            jc["modules"].push_back(std::move(jm));
        }
        basis["components"].push_back(std::move(jc));
    }
    detail::write_file(paths.basis, basis.dump(2) + "\n");

    // representation blocks per basis element, row-major sorted triplets
    Json jblocks;
    jblocks["m"] = ctx.m;
    jblocks["elements"] = Json::array();
    for (std::size_t e = 0; e < ob.types.types.size(); ++e) {
        Json je;
        je["type"] = type_json(ob.types.types[e]);
        je["blocks"] = Json::array();
        for (std::size_t c = 0; c < dec.components.size(); ++c) {
            const DenseMat& b = blocks.blocks[e][c];
            Json jb;
            jb["mu"] = dec.components[c].mu;
            jb["d"] = dec.components[c].d;
            Json entries = Json::array();
            for (std::size_t r = 0; r < b.size(); ++r)
                for (std::size_t s = 0; s < b[r].size(); ++s)
                    if (b[r][s] != 0)
                        entries.push_back(Json::array(
                            {static_cast<long long>(r),
                             static_cast<long long>(s), rat_to_string(b[r][s])}));
            jb["entries"] = std::move(entries);
            je["blocks"].push_back(std::move(jb));
        }
        jblocks["elements"].push_back(std::move(je));
    }
    detail::write_file(paths.blocks, jblocks.dump(2) + "\n");
    return paths;
}

inline std::vector<UpsilonRow> read_upsilon(const std::filesystem::path& path) {
    std::vector<UpsilonRow> rows;
    if (path.extension() == ".json") {
        const Json arr = Json::parse(detail::read_file(path));
        for (const auto& r : arr)
            rows.push_back({r.at("mu").get<int>(), r.at("d").get<int>(),
                            r.at("block_dim").get<int>(),
                            r.at("multiplicity").get<long long>()});
        return rows;
    }
    std::istringstream in(detail::read_file(path));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        UpsilonRow r;
        char comma;
        std::istringstream ls(line);
        ls >> r.mu >> comma >> r.d >> comma >> r.block_dim >> comma >>
            r.multiplicity;
        if (!ls) throw std::runtime_error("bad upsilon row: " + line);
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<StructureConstantRow> read_structure_constants(
    const std::filesystem::path& path) {
    std::vector<StructureConstantRow> rows;
    if (path.extension() == ".json") {
        const Json arr = Json::parse(detail::read_file(path));
        for (const auto& r : arr) {
            StructureConstantRow row;
            auto get = [](const Json& j) {
                return TripleType{j.at(0).get<int>(), j.at(1).get<int>(),
                                  j.at(2).get<int>(), j.at(3).get<int>()};
            };
            row.a = get(r.at("a"));
            row.b = get(r.at("b"));
            row.c = get(r.at("c"));
            row.count = r.at("count").get<long long>();
            rows.push_back(row);
        }
        return rows;
    }
    std::istringstream in(detail::read_file(path));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<long long> vals;
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stoll(cell));
        if (vals.size() != 13)
            throw std::runtime_error("bad structure-constant row: " + line);
        StructureConstantRow r;
        r.a = {int(vals[0]), int(vals[1]), int(vals[2]), int(vals[3])};
        r.b = {int(vals[4]), int(vals[5]), int(vals[6]), int(vals[7])};
        r.c = {int(vals[8]), int(vals[9]), int(vals[10]), int(vals[11])};
        r.count = vals[12];
        rows.push_back(r);
    }
    return rows;
}

}  // namespace otw

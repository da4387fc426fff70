#pragma once

#include <bit>
#include <cstring>
#include <fstream>
#include <variant>

#include <json.hpp>

#include "field.hpp"

namespace halfspace {

static_assert(std::endian::native == std::endian::little,
              "HSFIELD1 assumes a little-endian host");

// HSFIELD1 field files: 8-byte magic, a u64 header length, a JSON header
// (grid parameters, domain tag, representation), then the samples as
// interleaved (re, im) little-endian doubles in row-major storage order.
inline constexpr char kFieldMagic[8] = {'H', 'S', 'F', 'I', 'E', 'L', 'D', '1'};

namespace detail {

inline nlohmann::json grid_to_json(const Grid& g) {
    return {{"d", g.d},           {"Lx", g.Lx}, {"Nx", g.Nx}, {"Ly", g.Ly},
            {"Ny", g.Ny},         {"Lt", g.Lt}, {"Nt", g.Nt}, {"offset_x", g.offset_x},
            {"offset_t", g.offset_t}};
}

inline Grid grid_from_json(const nlohmann::json& j) {
    Grid g;
    g.d = j.at("d").get<int>();
    g.Lx = j.at("Lx").get<double>();
    g.Nx = j.at("Nx").get<int>();
    g.Ly = j.at("Ly").get<double>();
    g.Ny = j.at("Ny").get<int>();
    g.Lt = j.at("Lt").get<double>();
    g.Nt = j.at("Nt").get<int>();
    g.offset_x = j.at("offset_x").get<double>();
    g.offset_t = j.at("offset_t").get<double>();
    g.validate();
    return g;
}

inline void write_field_file(const std::string& path, const nlohmann::json& header,
                             const std::vector<cx>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw structural_error("cannot open for writing: " + path);
    out.write(kFieldMagic, 8);
    std::string h = header.dump();
    std::uint64_t len = h.size();
    out.write(reinterpret_cast<const char*>(&len), 8);
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(cx)));
    if (!out) throw structural_error("short write: " + path);
}

inline nlohmann::json read_field_header(std::ifstream& in, const std::string& path) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kFieldMagic, 8) != 0)
        throw structural_error("not an HSFIELD1 file: " + path);
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 8);
    if (!in || len > (1u << 20)) throw structural_error("corrupt header: " + path);
    std::string h(len, '\0');
    in.read(h.data(), static_cast<std::streamsize>(len));
    if (!in) throw structural_error("truncated header: " + path);
    return nlohmann::json::parse(h);
}

}  // namespace detail

inline void write_field(const std::string& path, const BoundaryField& f) {
    nlohmann::json h = {{"format", "HSFIELD1"},
                        {"kind", "boundary"},
                        {"grid", detail::grid_to_json(f.grid)},
                        {"domain_tag", "boundary-spacetime"},
                        {"representation", to_string(f.rep)}};
    detail::write_field_file(path, h, f.v);
}

inline void write_field(const std::string& path, const SampledField& f) {
    nlohmann::json h = {{"format", "HSFIELD1"},
                        {"kind", "volume"},
                        {"grid", detail::grid_to_json(f.grid)},
                        {"domain_tag", to_string(f.tag)},
                        {"representation", to_string(f.rep)}};
    detail::write_field_file(path, h, f.v);
}

using AnyField = std::variant<BoundaryField, SampledField>;

inline AnyField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw structural_error("cannot open: " + path);
    nlohmann::json h = detail::read_field_header(in, path);
    Grid g = detail::grid_from_json(h.at("grid"));
    std::string rep = h.at("representation").get<std::string>();
    Rep r = rep == "physical" ? Rep::physical
            : rep == "frequency" ? Rep::frequency
                                 : Rep::semidiscrete;
    std::string tag = h.at("domain_tag").get<std::string>();

    auto read_payload = [&](std::vector<cx>& v, std::size_t expected) {
        v.resize(expected);
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(expected * sizeof(cx)));
        if (!in) throw structural_error("truncated payload: " + path);
    };

    if (h.at("kind") == "boundary") {
        BoundaryField f(g, r);
        read_payload(f.v, g.n_boundary());
        f.require_finite("read_field");
        return f;
    }
    DomainTag t = tag == "volume-spacetime" ? DomainTag::volume_spacetime
                  : tag == "volume-snapshot" ? DomainTag::volume_snapshot
                                             : DomainTag::boundary_spacetime;
    SampledField f(g, t, r);
    read_payload(f.v, f.v.size());
    f.require_finite("read_field");
    return f;
}

}  // namespace halfspace

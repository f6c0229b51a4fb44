#include "pitfdtd/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pit {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw analysis_error("cannot write file: " + path);
    return out;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    long line_no = 0;

    explicit CsvReader(const std::string& p) : in(p), path(p) {
        if (!in) throw analysis_error("cannot open file: " + path);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw analysis_error(path + ":" + std::to_string(line_no) + ": " + what);
    }

    void expect_header(const std::string& header) {
        std::string line;
        ++line_no;
        if (!std::getline(in, line)) fail("empty file");
        if (line != header) fail("expected header '" + header + "'");
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (line.empty()) fail("blank line");
        fields.clear();
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        return true;
    }

    double num(const std::string& field) const {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') fail("not a number: '" + field + "'");
        return v;
    }
};

} // namespace

void write_spectrum(const std::string& path, const Spectrum& s) {
    s.validate();
    auto out = open_out(path);
    out << "wavelength_nm,value\n";
    for (size_t i = 0; i < s.values.size(); ++i)
        out << fmt(s.wavelengths_nm[i]) << ',' << fmt(s.values[i]) << '\n';
}

Spectrum read_spectrum(const std::string& path, Spectrum::Kind kind) {
    CsvReader r(path);
    r.expect_header("wavelength_nm,value");
    Spectrum s;
    s.kind = kind;
    std::vector<std::string> f;
    while (r.next(f)) {
        if (f.size() != 2) r.fail("expected 2 columns");
        s.wavelengths_nm.push_back(r.num(f[0]));
        s.values.push_back(r.num(f[1]));
    }
    if (s.values.empty()) r.fail("no data rows");
    s.validate();
    return s;
}

void write_features(const std::string& path, const std::vector<ResonanceFeature>& features) {
    auto out = open_out(path);
    out << "wavelength_nm,kind,prominence,width_nm\n";
    for (const ResonanceFeature& f : features)
        out << fmt(f.wavelength_nm) << ',' << (f.kind == ResonanceFeature::Kind::peak ? "peak" : "dip")
            << ',' << fmt(f.prominence) << ',' << fmt(f.width_nm) << '\n';
}

std::vector<ResonanceFeature> read_features(const std::string& path) {
    CsvReader r(path);
    r.expect_header("wavelength_nm,kind,prominence,width_nm");
    std::vector<ResonanceFeature> out;
    std::vector<std::string> f;
    while (r.next(f)) {
        if (f.size() != 4) r.fail("expected 4 columns");
        ResonanceFeature feat;
        feat.wavelength_nm = r.num(f[0]);
        if (f[1] == "peak")
            feat.kind = ResonanceFeature::Kind::peak;
        else if (f[1] == "dip")
            feat.kind = ResonanceFeature::Kind::dip;
        else
            r.fail("kind must be peak or dip");
        feat.prominence = r.num(f[2]);
        feat.width_nm = r.num(f[3]);
        out.push_back(feat);
    }
    return out;
}

void write_scores(const std::string& path, const std::vector<double>& wavelengths_nm,
                  const std::vector<double>& scores) {
    if (wavelengths_nm.size() != scores.size()) throw analysis_error("score list length mismatch");
    auto out = open_out(path);
    out << "wavelength_nm,score\n";
    for (size_t i = 0; i < scores.size(); ++i)
        out << fmt(wavelengths_nm[i]) << ',' << fmt(scores[i]) << '\n';
}

void write_branches(const std::string& path, const BranchResult& br) {
    auto out = open_out(path);
    out << "delta_nm,branch1_nm,branch2_nm\n";
    for (size_t i = 0; i < br.deltas_nm.size(); ++i)
        out << fmt(br.deltas_nm[i]) << ',' << fmt(br.branch1_nm[i]) << ',' << fmt(br.branch2_nm[i])
            << '\n';
}

void write_field_map(const std::string& base_path, const FieldMapData& map) {
    if (map.values.size() != static_cast<size_t>(map.nx) * map.ny)
        throw analysis_error("field map size mismatch");
    {
        auto out = open_out(base_path + ".csv");
        out << "x_nm,y_nm,re,im\n";
        for (int i = 0; i < map.nx; ++i)
            for (int j = 0; j < map.ny; ++j) {
                const std::complex<double>& z = map.values[static_cast<size_t>(i) * map.ny + j];
                out << fmt(map.x0_nm + i * map.dx_nm) << ',' << fmt(map.y0_nm + j * map.dy_nm) << ','
                    << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
            }
    }
    nlohmann::json j = {{"nx", map.nx},
                        {"ny", map.ny},
                        {"x0_nm", map.x0_nm},
                        {"y0_nm", map.y0_nm},
                        {"dx_nm", map.dx_nm},
                        {"dy_nm", map.dy_nm},
                        {"wavelength_nm", map.wavelength_nm},
                        {"plane_z_nm", map.plane_z_nm},
                        {"component", map.component}};
    auto out = open_out(base_path + ".json");
    out << j.dump(2) << '\n';
}

FieldMapData read_field_map(const std::string& base_path) {
    FieldMapData map;
    {
        std::ifstream in(base_path + ".json");
        if (!in) throw analysis_error("cannot open file: " + base_path + ".json");
        nlohmann::json j;
        try {
            in >> j;
            map.nx = j.at("nx").get<int>();
            map.ny = j.at("ny").get<int>();
            map.x0_nm = j.at("x0_nm").get<double>();
            map.y0_nm = j.at("y0_nm").get<double>();
            map.dx_nm = j.at("dx_nm").get<double>();
            map.dy_nm = j.at("dy_nm").get<double>();
            map.wavelength_nm = j.at("wavelength_nm").get<double>();
            map.plane_z_nm = j.at("plane_z_nm").get<double>();
            map.component = j.at("component").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw analysis_error(base_path + ".json: " + e.what());
        }
    }
    if (map.nx < 1 || map.ny < 1) throw analysis_error(base_path + ".json: empty map");
    CsvReader r(base_path + ".csv");
    r.expect_header("x_nm,y_nm,re,im");
    map.values.reserve(static_cast<size_t>(map.nx) * map.ny);
    std::vector<std::string> f;
    while (r.next(f)) {
        if (f.size() != 4) r.fail("expected 4 columns");
        map.values.emplace_back(r.num(f[2]), r.num(f[3]));
    }
    if (map.values.size() != static_cast<size_t>(map.nx) * map.ny)
        throw analysis_error(base_path + ".csv: row count does not match metadata");
    return map;
}

} // namespace pit

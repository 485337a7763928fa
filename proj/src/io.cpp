#include "wavemap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wavemap {

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string format_series(const std::vector<DiagnosticsRecord>& records) {
    std::string out = kSeriesHeader;
    out += '\n';
    for (const DiagnosticsRecord& r : records) {
        out += format_double(r.t) + ',' + format_double(r.phi_max) + ',' + format_double(r.psi_max) + ',' +
               format_double(r.origin_dev) + ',' + format_double(r.energy) + ',' + format_double(r.energy_rel) + ',' +
               format_double(r.delta_e) + ',' + (r.s ? format_double(*r.s) : std::string()) + ',' +
               format_double(r.min_w) + '\n';
    }
    return out;
}

namespace {

double cell_to_double(const std::string& cell, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used == cell.size()) return v;
    } catch (const std::exception&) {
    }
    throw IoError("series line " + std::to_string(line) + ": bad number '" + cell + "'");
}

} // namespace

std::vector<DiagnosticsRecord> parse_series(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader) throw IoError("series: missing or unexpected header");
    std::vector<DiagnosticsRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 9) throw IoError("series line " + std::to_string(line_no) + ": expected 9 columns");
        DiagnosticsRecord r;
        r.t = cell_to_double(cells[0], line_no);
        r.phi_max = cell_to_double(cells[1], line_no);
        r.psi_max = cell_to_double(cells[2], line_no);
        r.origin_dev = cell_to_double(cells[3], line_no);
        r.energy = cell_to_double(cells[4], line_no);
        r.energy_rel = cell_to_double(cells[5], line_no);
        r.delta_e = cell_to_double(cells[6], line_no);
        if (!cells[7].empty()) r.s = cell_to_double(cells[7], line_no);
        r.min_w = cell_to_double(cells[8], line_no);
        out.push_back(r);
    }
    return out;
}

void write_series(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
    write_text(path, format_series(records));
}

std::vector<DiagnosticsRecord> read_series(const std::filesystem::path& path) { return parse_series(read_text(path)); }

std::string format_field_csv(const ScalarField& f) {
    std::string out;
    for (int k = 0; k < f.n(); ++k) {
        for (int j = 0; j < f.n(); ++j) {
            if (j) out += ',';
            out += format_double(f(j, k));
        }
        out += '\n';
    }
    return out;
}

std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                                  const FieldState& state, const RunConfig& cfg, const Grid2D& grid) {
    static constexpr const char* names[] = {"u", "v", "w", "ut", "vt", "wt"};
    std::vector<std::filesystem::path> written;
    const auto fields = state.all();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        auto p = dir / (stem + "_" + names[i] + ".csv");
        write_text(p, format_field_csv(*fields[i]));
        written.push_back(std::move(p));
    }
    nlohmann::ordered_json meta;
    meta["time"] = state.time;
    meta["grid"] = {{"domain", to_string(grid.domain)}, {"n", grid.n}, {"h", grid.h},
                    {"x_min", grid.x_min},              {"y_min", grid.y_min}};
    meta["fields"] = {"u", "v", "w", "ut", "vt", "wt"};
    meta["layout"] = "rows are y indices, columns are x indices, interior nodes only";
    meta["config"] = format_config(cfg);
    auto p = dir / (stem + ".json");
    write_text(p, meta.dump(2) + "\n");
    written.push_back(std::move(p));
    return written;
}

} // namespace wavemap

#include "rsz/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "rsz/errors.hpp"
#include "rsz/text.hpp"

namespace rsz {

using ojson = nlohmann::ordered_json;

void Table::add(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw ParameterError("table: row width does not match the header");
    rows.push_back(std::move(row));
}

std::string Table::csv() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) out << (j ? "," : "") << cells[j];
        out << '\n';
    };
    line(columns);
    for (const auto& r : rows) line(r);
    return out.str();
}

std::string Table::dat() const {
    std::ostringstream out;
    out << '#';
    for (const auto& c : columns) out << ' ' << c;
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
        out << '\n';
    }
    return out.str();
}

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

double cell_value(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ParameterError("svg_chart: non-numeric cell '" + s + "'");
    return v;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

std::string svg_chart(const Table& t, std::size_t x_col, const std::vector<std::size_t>& y_cols,
                      const std::string& title) {
    for (auto c : y_cols)
        if (c >= t.columns.size()) throw ParameterError("svg_chart: column out of range");
    if (x_col >= t.columns.size()) throw ParameterError("svg_chart: column out of range");

    // extreme cells, kept as strings for the axis labels
    std::string xmin_s, xmax_s, ymin_s, ymax_s;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& r : t.rows) {
        const double x = cell_value(r[x_col]);
        if (!any || x < xmin) xmin = x, xmin_s = r[x_col];
        if (!any || x > xmax) xmax = x, xmax_s = r[x_col];
        for (auto c : y_cols) {
            const double y = cell_value(r[c]);
            if (!any || y < ymin) ymin = y, ymin_s = r[c];
            if (!any || y > ymax) ymax = y, ymax_s = r[c];
            any = true;
        }
    }
    const double xspan = xmax > xmin ? xmax - xmin : 1;
    const double yspan = ymax > ymin ? ymax - ymin : 1;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    out << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    out << "<text x=\"320\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(title) << "</text>\n";
    out << "<rect x=\"70\" y=\"30\" width=\"540\" height=\"320\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"340\" y=\"390\" text-anchor=\"middle\" font-size=\"12\">" << escape_xml(t.columns[x_col])
        << "</text>\n";
    if (any) {
        out << "<text x=\"70\" y=\"366\" font-size=\"11\">" << xmin_s << "</text>\n";
        out << "<text x=\"610\" y=\"366\" text-anchor=\"end\" font-size=\"11\">" << xmax_s << "</text>\n";
        out << "<text x=\"64\" y=\"350\" text-anchor=\"end\" font-size=\"11\">" << ymin_s << "</text>\n";
        out << "<text x=\"64\" y=\"38\" text-anchor=\"end\" font-size=\"11\">" << ymax_s << "</text>\n";
    }
    // data coordinates: x right, y up
    out << "<svg x=\"70\" y=\"30\" width=\"540\" height=\"320\" preserveAspectRatio=\"none\" viewBox=\""
        << format_double(xmin) << ' ' << format_double(-(ymin + yspan)) << ' ' << format_double(xspan) << ' '
        << format_double(yspan) << "\">\n";
    out << "<g transform=\"scale(1,-1)\">\n";
    for (std::size_t s = 0; s < y_cols.size(); ++s) {
        const char* colour = kPalette[s % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << colour
            << "\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" data-series=\""
            << escape_xml(t.columns[y_cols[s]]) << "\" points=\"";
        for (std::size_t j = 0; j < t.rows.size(); ++j)
            out << (j ? " " : "") << t.rows[j][x_col] << ',' << t.rows[j][y_cols[s]];
        out << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    for (std::size_t s = 0; s < y_cols.size(); ++s)
        out << "<text x=\"80\" y=\"" << 48 + 14 * s << "\" font-size=\"11\" fill=\""
            << kPalette[s % std::size(kPalette)] << "\">" << escape_xml(t.columns[y_cols[s]]) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string certificates_json(const std::vector<SizeCertificate>& certs) {
    std::string out = "[";
    for (std::size_t j = 0; j < certs.size(); ++j) {
        ojson c;
        c["scale_index"] = certs[j].scale_index;
        c["vertices"] = certs[j].vertices.members();
        c["order"] = certs[j].order;
        c["size"] = certs[j].size;
        out += (j ? ",\n " : "\n ") + c.dump();
    }
    out += certs.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<SizeCertificate> parse_certificates_json(std::string_view text, std::size_t universe) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError(std::string("certificates: ") + e.what());
    }
    if (!doc.is_array()) throw ParameterError("certificates: expected a JSON array");
    std::vector<SizeCertificate> out;
    for (std::size_t j = 0; j < doc.size(); ++j) {
        const auto& c = doc[j];
        try {
            SizeCertificate sc;
            sc.scale_index = c.at("scale_index").get<std::int64_t>();
            sc.order = c.at("order").get<std::int64_t>();
            sc.size = c.at("size").get<std::int64_t>();
            sc.vertices = VertexSet(universe);
            for (const auto& v : c.at("vertices")) {
                const auto id = v.get<std::int64_t>();
                if (id < 0 || static_cast<std::size_t>(id) >= universe)
                    throw ParameterError("certificates: entry " + std::to_string(j) + " has vertex " +
                                         std::to_string(id) + " out of range");
                sc.vertices.insert(static_cast<Vertex>(id));
            }
            out.push_back(std::move(sc));
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError("certificates: entry " + std::to_string(j) + ": " + e.what());
        }
    }
    return out;
}

Table scale_family_table(const ScaleFamily& fam) {
    Table t{{"scale", "target", "ok", "e_U", "l", "w_prime", "w", "psi", "sum_n", "c", "emitted"}, {}};
    for (const auto& s : fam.scales)
        t.add({std::to_string(s.index), std::to_string(s.target), s.ok ? "1" : "0", std::to_string(s.e_U),
               std::to_string(s.l), std::to_string(s.w_prime_size), std::to_string(s.W.count()),
               std::to_string(s.psi_size), std::to_string(s.sum_distinct), format_double(s.c_used),
               std::to_string(s.emitted)});
    return t;
}

std::string spectrum_json(const SizeSpectrum& spec) {
    ojson j;
    j["mode"] = spec.mode == SpectrumMode::phi ? "phi" : "psi";
    j["exactness"] = spec.exactness == Exactness::exact ? "exact" : "lower_bound";
    j["source"] = spec.source;
    j["cardinality"] = spec.cardinality();
    if (spec.mode == SpectrumMode::phi) {
        j["consecutive_prefix"] = consecutive_prefix(spec);
        j["sizes"] = spec.phi_set;
    } else {
        auto arr = ojson::array();
        for (auto [o, s] : spec.psi_set) arr.push_back({o, s});
        j["pairs"] = arr;
    }
    return j.dump() + "\n";
}

} // namespace rsz

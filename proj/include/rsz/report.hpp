#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsz/construction.hpp"
#include "rsz/sizes.hpp"

namespace rsz {

/// A table of pre-formatted cells. CSV, gnuplot .dat and SVG output all
/// read the same strings, so every plotted value appears verbatim in the CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string csv() const;
    std::string dat() const;
};

/// Line chart of y_cols against x_col. Plotted coordinates are the table
/// cells themselves; a flipped, scaled group maps them to the canvas.
std::string svg_chart(const Table& t, std::size_t x_col, const std::vector<std::size_t>& y_cols,
                      const std::string& title);

/// [{"scale_index":..,"vertices":[..],"order":..,"size":..}, ...], one per line.
std::string certificates_json(const std::vector<SizeCertificate>& certs);
std::vector<SizeCertificate> parse_certificates_json(std::string_view text, std::size_t universe);

Table scale_family_table(const ScaleFamily& fam);

std::string spectrum_json(const SizeSpectrum& spec);

} // namespace rsz

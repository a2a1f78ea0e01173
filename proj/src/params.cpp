#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "rsz/construction.hpp"
#include "rsz/text.hpp"

namespace rsz {

namespace {

struct Field {
    std::function<void(ConstructionParams&, std::string_view, std::size_t)> set;
    std::function<std::string(const ConstructionParams&)> get;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double read_double(std::string_view v, std::size_t line) {
    double x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ParseError(line, "expected a number, got '" + std::string(v) + "'");
    return x;
}

std::size_t read_size(std::string_view v, std::size_t line) {
    std::size_t x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(v) + "'");
    return x;
}

template <typename T>
Field real(T ConstructionParams::*member) {
    return {[member](ConstructionParams& p, std::string_view v, std::size_t line) { p.*member = read_double(v, line); },
            [member](const ConstructionParams& p) { return format_double(p.*member); }};
}

template <typename T>
Field count(T ConstructionParams::*member) {
    return {[member](ConstructionParams& p, std::string_view v, std::size_t line) { p.*member = read_size(v, line); },
            [member](const ConstructionParams& p) { return std::to_string(p.*member); }};
}

// Ordered so that params_to_text is stable.
const std::map<std::string, Field, std::less<>>& fields() {
    static const std::map<std::string, Field, std::less<>> table = {
        {"c", real(&ConstructionParams::c)},
        {"c_min", real(&ConstructionParams::c_min)},
        {"c_step", real(&ConstructionParams::c_step)},
        {"delta", real(&ConstructionParams::delta)},
        {"extract_min_frac", real(&ConstructionParams::extract_min_frac)},
        {"m_lo", real(&ConstructionParams::m_lo)},
        {"m_hi", real(&ConstructionParams::m_hi)},
        {"w1_size", count(&ConstructionParams::w1_size)},
        {"min_w", count(&ConstructionParams::min_w)},
        {"retry_budget", count(&ConstructionParams::retry_budget)},
        {"split_budget", count(&ConstructionParams::split_budget)},
        {"scale_unit", real(&ConstructionParams::scale_unit)},
        {"slack_units", real(&ConstructionParams::slack_units)},
        {"spacing_units", real(&ConstructionParams::spacing_units)},
        {"max_scales", count(&ConstructionParams::max_scales)},
        {"scale_retries", count(&ConstructionParams::scale_retries)},
        {"w_keep", real(&ConstructionParams::w_keep)},
        {"z_window_frac", real(&ConstructionParams::z_window_frac)},
        {"k_lo", real(&ConstructionParams::k_lo)},
        {"k_hi", real(&ConstructionParams::k_hi)},
        {"i_lo", real(&ConstructionParams::i_lo)},
        {"i_hi", real(&ConstructionParams::i_hi)},
    };
    return table;
}

} // namespace

void ConstructionParams::validate() const {
    auto open_unit = [](double x) { return x > 0 && x < 1; };
    if (!open_unit(c) || !open_unit(delta)) throw ParameterError("params: c and delta must lie in (0, 1)");
    if (!(c_min > 0 && c_min <= c)) throw ParameterError("params: need 0 < c_min <= c");
    if (!open_unit(c_step)) throw ParameterError("params: c_step must lie in (0, 1)");
    if (!open_unit(extract_min_frac)) throw ParameterError("params: extract_min_frac must lie in (0, 1)");
    if (!(m_lo > 0 && m_lo < m_hi && m_hi <= 1)) throw ParameterError("params: need 0 < m_lo < m_hi <= 1");
    if (min_w < 1) throw ParameterError("params: min_w must be >= 1");
    if (retry_budget < 1 || split_budget < 1 || scale_retries < 1)
        throw ParameterError("params: budgets must be >= 1");
    if (!(scale_unit > 0 && slack_units > 0)) throw ParameterError("params: scale_unit and slack_units must be > 0");
    if (!(spacing_units > 2 * slack_units))
        throw ParameterError("params: spacing_units must exceed 2 * slack_units so target windows are disjoint");
    if (!(w_keep > 0)) throw ParameterError("params: w_keep must be > 0");
    if (!(z_window_frac >= 0 && z_window_frac < 1)) throw ParameterError("params: z_window_frac must lie in [0, 1)");
    if (!(k_lo >= 0 && k_lo <= k_hi && k_hi <= 1 && i_lo >= 0 && i_lo <= i_hi && i_hi <= 1))
        throw ParameterError("params: index rectangle fractions must satisfy 0 <= lo <= hi <= 1");
}

ConstructionParams parse_params(std::string_view text, ConstructionParams base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        auto it = fields().find(key);
        if (it == fields().end()) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        it->second.set(base, value, line_no);
    }
    base.validate();
    return base;
}

std::string params_to_text(const ConstructionParams& p) {
    std::ostringstream out;
    for (const auto& [key, field] : fields()) out << key << '=' << field.get(p) << '\n';
    return out.str();
}

} // namespace rsz

#include "cmlecon/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

#include "cmlecon/errors.hpp"

namespace cmlecon::io {

std::string fmt_double(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf, 16);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error("short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

namespace {

double parse_double(std::string_view text, std::string_view whole) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("malformed range '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Range parse_range(std::string_view text) {
    const std::size_t first = text.find(':');
    if (first == std::string_view::npos) {
        const double v = parse_double(text, text);
        return Range{v, v, 1.0};
    }
    const std::size_t second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw ConfigError("malformed range '" + std::string(text) + "', expected lo:hi:step");
    }
    Range range{parse_double(text.substr(0, first), text),
                parse_double(text.substr(first + 1, second - first - 1), text),
                parse_double(text.substr(second + 1), text)};
    if (!(range.step > 0.0)) {
        throw ConfigError("range '" + std::string(text) + "': step must be > 0");
    }
    if (range.hi < range.lo) {
        throw ConfigError("range '" + std::string(text) + "': hi must be >= lo");
    }
    return range;
}

std::string sample_csv(std::span<const double> values) {
    std::string out = "x\n";
    for (const double v : values) {
        out += fmt_double(v);
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const stats::Histogram& hist) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        out += fmt_double(hist.edges[k]);
        out += ',';
        out += fmt_double(hist.edges[k + 1]);
        out += ',';
        out += std::to_string(hist.counts[k]);
        out += '\n';
    }
    return out;
}

namespace {

void append_optional(std::string& out, const std::optional<double>& v) {
    out += ',';
    if (v) {
        out += fmt_double(*v);
    }
}

} // namespace

std::string phase_csv(const sweep::PhaseDiagram& diagram) {
    std::string out = "a,r,label,mu,h,alpha,gini,mean,std,n_pooled\n";
    for (const sweep::CellResult& cell : diagram.cells) {
        out += fmt_double(cell.a);
        out += ',';
        out += fmt_double(cell.r);
        out += ',';
        out += stats::to_string(cell.label);
        append_optional(out, cell.mu);
        append_optional(out, cell.h);
        append_optional(out, cell.alpha);
        append_optional(out, cell.gini);
        append_optional(out, cell.mean);
        append_optional(out, cell.std_dev);
        out += ',';
        out += std::to_string(cell.n_pooled);
        out += '\n';
    }
    return out;
}

std::string bifurcation_csv(std::span<const ricker::Orbit> orbits) {
    std::string out = "r,x\n";
    for (const ricker::Orbit& orbit : orbits) {
        const std::string r_text = fmt_double(orbit.params.r);
        for (const double x : orbit.samples) {
            out += r_text;
            out += ',';
            out += fmt_double(x);
            out += '\n';
        }
    }
    return out;
}

} // namespace cmlecon::io

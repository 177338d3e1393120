#include "gridspread/gridio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "gridspread/construct.hpp"
#include "gridspread/intmath.hpp"

namespace gridspread {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

bool is_token_char(char c) { return c > 0x20 && c < 0x7f; }

struct Line {
    std::size_t number;  // 1-based
    std::vector<std::string_view> tokens;
};

// Splits into lines and whitespace-separated tokens, rejecting non-ASCII
// bytes. Blank lines are dropped but line numbers are preserved.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, eol - pos);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') {
                if (!is_token_char(raw[j])) fail(number, "non-ASCII byte in token");
                ++j;
            }
            line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        ++number;
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return lines;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    return v;
}

GridSpec parse_header(const Line& line) {
    const auto& t = line.tokens;
    if (t.size() != 4 || t[0] != "gridpair" || t[1] != "v1" || t[2].substr(0, 2) != "n=" ||
        t[3].substr(0, 2) != "d=")
        fail(line.number, "malformed header (expected 'gridpair v1 n=<n> d=<d>')");
    const std::uint64_t n = parse_uint(t[2].substr(2), line.number, "n");
    const std::uint64_t d = parse_uint(t[3].substr(2), line.number, "d");
    try {
        return GridSpec(n, d);
    } catch (const ValidationError& e) {
        fail(line.number, e.what());
    }
}

struct TokenTable {
    std::vector<std::string> by_id;
    std::unordered_map<std::string_view, Symbol> ids;
};

// grid name -> "A"/"B" in diagnostics
struct GridReader {
    const GridSpec& spec;
    TokenTable& table;
    bool first_grid;
    const char* name;
    std::vector<CellIndex> symbol_to_cell;
    std::vector<std::uint8_t> cell_seen;
    std::vector<std::uint8_t> token_seen;

    explicit GridReader(const GridSpec& s, TokenTable& t, bool first, const char* nm)
        : spec(s),
          table(t),
          first_grid(first),
          name(nm),
          symbol_to_cell(s.cell_count(), 0),
          cell_seen(s.cell_count(), 0),
          token_seen(first ? 0 : s.cell_count(), 0) {}

    void place(std::string_view token, CellIndex cell, std::size_t line) {
        if (cell_seen[cell]) fail(line, std::string("duplicate cell in grid ") + name);
        cell_seen[cell] = 1;
        if (first_grid) {
            if (table.ids.contains(token))
                fail(line, "duplicate token '" + std::string(token) + "' in grid " + name);
            const Symbol id = table.by_id.size();
            table.by_id.emplace_back(token);
            table.ids.emplace(table.by_id.back(), id);
            symbol_to_cell[id] = cell;
        } else {
            const auto it = table.ids.find(token);
            if (it == table.ids.end())
                fail(line, "token '" + std::string(token) + "' in grid " + name +
                               " does not appear in grid A");
            if (token_seen[it->second])
                fail(line, "duplicate token '" + std::string(token) + "' in grid " + name);
            token_seen[it->second] = 1;
            symbol_to_cell[it->second] = cell;
        }
    }
};

// Interning by string_view into by_id requires stable storage; reserve up
// front so emplace_back never reallocates.
PairDocument assemble(const GridSpec& spec, TokenTable&& table, std::vector<CellIndex>&& a,
                      std::vector<CellIndex>&& b) {
    Arrangement arr_a = Arrangement::from_symbol_to_cell(spec, std::move(a));
    Arrangement arr_b = Arrangement::from_symbol_to_cell(spec, std::move(b));
    return {spec, std::move(table.by_id), ArrangementPair(std::move(arr_a), std::move(arr_b))};
}

PairDocument parse_matrix_form(const GridSpec& spec, const std::vector<Line>& lines) {
    const std::uint32_t n = spec.n();
    const std::size_t need = 2 * std::size_t(n) + 1;
    if (lines.size() < need) {
        const std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
        fail(at, "unexpected end of input: expected " + std::to_string(2 * n) +
                     " grid rows, found " + std::to_string(lines.size() - 1));
    }
    if (lines.size() > need) fail(lines[need].number, "unexpected content after grid B");

    TokenTable table;
    table.by_id.reserve(spec.cell_count());
    GridReader a(spec, table, true, "A");
    GridReader b(spec, table, false, "B");
    for (std::size_t row = 0; row < 2 * std::size_t(n); ++row) {
        const Line& line = lines[1 + row];
        if (line.tokens.size() != n)
            fail(line.number, "expected " + std::to_string(n) + " tokens, found " +
                                  std::to_string(line.tokens.size()));
        GridReader& g = row < n ? a : b;
        const std::size_t y = row % n;
        for (std::size_t x = 0; x < n; ++x) g.place(line.tokens[x], y * n + x, line.number);
    }
    return assemble(spec, std::move(table), std::move(a.symbol_to_cell),
                    std::move(b.symbol_to_cell));
}

PairDocument parse_long_form(const GridSpec& spec, const std::vector<Line>& lines) {
    const std::size_t cells = spec.cell_count();
    const std::uint32_t d = spec.d();

    std::size_t cursor = 1;
    const auto next_line = [&](const std::string& what) -> const Line& {
        if (cursor >= lines.size()) {
            const std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
            fail(at, "unexpected end of input: expected " + what);
        }
        return lines[cursor++];
    };

    TokenTable table;
    table.by_id.reserve(cells);
    GridReader a(spec, table, true, "A");
    GridReader b(spec, table, false, "B");
    std::vector<std::uint32_t> coords(d);
    for (std::size_t i = 0; i < 2 * cells; ++i) {
        const bool in_a = i < cells;
        if (!in_a && i == cells) {
            const Line& sep = next_line("'---' between grids");
            if (sep.tokens.size() != 1 || sep.tokens[0] != "---")
                fail(sep.number, "expected '---' between grids");
        }
        GridReader& g = in_a ? a : b;
        const Line& line = next_line(std::to_string(cells) + " cells in grid " +
                                     std::string(g.name));
        if (line.tokens.size() != std::size_t(d) + 1)
            fail(line.number, "expected " + std::to_string(d) + " coordinates and a token");
        for (std::uint32_t j = 0; j < d; ++j) {
            const std::uint64_t c = parse_uint(line.tokens[j], line.number, "coordinate");
            if (c >= spec.n()) fail(line.number, "coordinate out of range");
            coords[j] = static_cast<std::uint32_t>(c);
        }
        g.place(line.tokens[d], spec.index_of(coords), line.number);
    }
    if (cursor < lines.size()) fail(lines[cursor].number, "unexpected content after grid B");
    return assemble(spec, std::move(table), std::move(a.symbol_to_cell),
                    std::move(b.symbol_to_cell));
}

void append_matrix(std::string& out, const GridSpec& spec, const Arrangement& g,
                   const std::vector<std::string>& tokens) {
    const std::uint32_t n = spec.n();
    for (std::uint32_t y = 0; y < n; ++y) {
        for (std::uint32_t x = 0; x < n; ++x) {
            if (x) out += ' ';
            out += tokens[g.symbol_at(std::size_t(y) * n + x)];
        }
        out += '\n';
    }
}

void append_long_form(std::string& out, const GridSpec& spec, const Arrangement& g,
                      const std::vector<std::string>& tokens) {
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    Cell coords(d, 0);
    for (CellIndex idx = 0; idx < spec.cell_count(); ++idx) {
        for (std::uint32_t j = 0; j < d; ++j) {
            out += std::to_string(coords[j]);
            out += ' ';
        }
        out += tokens[g.symbol_at(idx)];
        out += '\n';
        for (std::uint32_t j = d; j-- > 0;) {
            if (++coords[j] < n) break;
            coords[j] = 0;
        }
    }
}

// --- rendering ---------------------------------------------------------

// Axes beyond the first two become labelled slices, the last coordinate
// outermost; each slice is a matrix over x_1 (rows) and x_2 (columns).
void append_text_slices(std::string& out, const GridSpec& spec, const Arrangement& g,
                        const std::vector<std::string>& tokens, std::size_t width) {
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    Cell coords(d, 0);
    while (true) {
        if (d > 2) {
            out += '[';
            for (std::uint32_t j = d; j-- > 2;) {
                out += 'x';
                out += std::to_string(j + 1);
                out += '=';
                out += std::to_string(coords[j]);
                if (j > 2) out += ' ';
            }
            out += "]\n";
        }
        for (std::uint32_t y = 0; y < n; ++y) {
            coords[0] = y;
            for (std::uint32_t x = 0; x < n; ++x) {
                coords[1] = x;
                const std::string& tok = tokens[g.symbol_at(spec.index_of(coords))];
                if (x) out += ' ';
                out.append(width - tok.size(), ' ');
                out += tok;
            }
            out += '\n';
        }
        if (d == 2) break;
        coords[0] = 0;
        coords[1] = 0;
        std::uint32_t j = 2;
        for (; j < d; ++j) {
            if (++coords[j] < n) break;
            coords[j] = 0;
        }
        if (j == d) break;
        out += '\n';
    }
}

std::string render_text(const PairDocument& doc) {
    std::size_t width = 1;
    for (const std::string& t : doc.tokens) width = std::max(width, t.size());
    std::string out;
    out += "A\n";
    append_text_slices(out, doc.spec, doc.pair.a, doc.tokens, width);
    out += "\nB\n";
    append_text_slices(out, doc.spec, doc.pair.b, doc.tokens, width);
    return out;
}

std::string hex_color(double hue) {
    // fixed saturation/value HSV -> RGB
    const double s = 0.55, v = 0.93;
    const double h = hue / 60.0;
    const int i = static_cast<int>(h) % 6;
    const double f = h - std::floor(h);
    const double p = v * (1 - s);
    const double q = v * (1 - s * f);
    const double t = v * (1 - s * (1 - f));
    double r = 0, g = 0, b = 0;
    switch (i) {
        case 0: r = v, g = t, b = p; break;
        case 1: r = q, g = v, b = p; break;
        case 2: r = p, g = v, b = t; break;
        case 3: r = p, g = q, b = v; break;
        case 4: r = t, g = p, b = v; break;
        default: r = v, g = p, b = q; break;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(r * 255), int(g * 255), int(b * 255));
    return buf;
}

std::string render_svg(const PairDocument& doc, std::optional<std::uint64_t> color_k) {
    const GridSpec& spec = doc.spec;
    if (spec.d() != 2)
        throw ValidationError("svg rendering supports d = 2 only (got d = " +
                              std::to_string(spec.d()) + ")");
    const std::uint32_t n = spec.n();
    const int cell = std::max(4, std::min(32, 512 / int(n)));
    const int margin = cell;
    const int grid_px = cell * int(n);
    const int gap = 2 * cell;
    const int width = 2 * margin + 2 * grid_px + gap;
    const int height = 2 * margin + grid_px + cell;  // room for captions
    const bool labels = n <= 16;

    auto cell_color = [&](const Arrangement& g, std::uint32_t x, std::uint32_t y) {
        if (color_k && *color_k >= 1) {
            const std::uint64_t k = *color_k;
            const std::uint64_t classes = k * k;
            const std::uint64_t cls = (y % k) * k + (x % k);
            return hex_color(360.0 * double(cls) / double(classes));
        }
        const Symbol s = g.symbol_at(std::size_t(y) * n + x);
        const std::uint32_t h = static_cast<std::uint32_t>(s) * 2654435761u;
        return hex_color(double(h % 360u));
    };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    for (int grid = 0; grid < 2; ++grid) {
        const Arrangement& g = grid == 0 ? doc.pair.a : doc.pair.b;
        const int ox = margin + grid * (grid_px + gap);
        const int oy = margin;
        for (std::uint32_t y = 0; y < n; ++y) {
            for (std::uint32_t x = 0; x < n; ++x) {
                out += "  <rect x=\"" + std::to_string(ox + int(x) * cell) + "\" y=\"" +
                       std::to_string(oy + int(y) * cell) + "\" width=\"" + std::to_string(cell) +
                       "\" height=\"" + std::to_string(cell) + "\" fill=\"" +
                       cell_color(g, x, y) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
                if (labels) {
                    const std::string& tok = doc.tokens[g.symbol_at(std::size_t(y) * n + x)];
                    out += "  <text x=\"" + std::to_string(ox + int(x) * cell + cell / 2) +
                           "\" y=\"" + std::to_string(oy + int(y) * cell + cell / 2 + cell / 5) +
                           "\" font-size=\"" + std::to_string(std::max(1, (2 * cell) / 5)) +
                           "\" font-family=\"monospace\" text-anchor=\"middle\">" + tok +
                           "</text>\n";
                }
            }
        }
        out += "  <text x=\"" + std::to_string(ox + grid_px / 2) + "\" y=\"" +
               std::to_string(oy + grid_px + cell) + "\" font-size=\"" + std::to_string(cell) +
               "\" font-family=\"monospace\" text-anchor=\"middle\">" +
               (grid == 0 ? "A" : "B") + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

PairDocument document_for(const ArrangementPair& pair) {
    std::vector<std::string> tokens(pair.a.size());
    for (Symbol s = 0; s < pair.a.size(); ++s) tokens[s] = std::to_string(s);
    return {pair.spec(), std::move(tokens), pair};
}

PairDocument parse_pair_document(std::string_view text) {
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) fail(1, "empty document");
    const GridSpec spec = parse_header(lines[0]);
    return spec.d() == 2 ? parse_matrix_form(spec, lines) : parse_long_form(spec, lines);
}

std::string serialize(const PairDocument& doc) {
    const GridSpec& spec = doc.spec;
    std::string out = "gridpair v1 n=" + std::to_string(spec.n()) +
                      " d=" + std::to_string(spec.d()) + "\n";
    if (spec.d() == 2) {
        append_matrix(out, spec, doc.pair.a, doc.tokens);
        out += '\n';
        append_matrix(out, spec, doc.pair.b, doc.tokens);
    } else {
        append_long_form(out, spec, doc.pair.a, doc.tokens);
        out += "---\n";
        append_long_form(out, spec, doc.pair.b, doc.tokens);
    }
    return out;
}

std::string serialize(const ArrangementPair& pair) { return serialize(document_for(pair)); }

RenderFormat parse_render_format(std::string_view s) {
    if (s == "text") return RenderFormat::text;
    if (s == "svg") return RenderFormat::svg;
    throw ValidationError("unknown render format '" + std::string(s) + "'");
}

std::string render(const PairDocument& doc, RenderFormat format,
                   std::optional<std::uint64_t> color_k) {
    return format == RenderFormat::text ? render_text(doc) : render_svg(doc, color_k);
}

}  // namespace gridspread

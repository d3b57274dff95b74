#include "msroute/floorplan_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "msroute/error.hpp"

namespace msroute {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// Splits text into non-empty, comment-stripped lines of whitespace-separated tokens.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream is{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; is >> tok;) {
            line.tokens.push_back(std::move(tok));
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        pos = end + 1;
    }
    return lines;
}

double to_number(std::string_view tok, int line) {
    double v = 0.0;
    if (!tok.empty() && tok.front() == '+') {
        tok.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
    }
    return v;
}

int to_count(std::string_view tok, int line) {
    const double v = to_number(tok, line);
    if (v < 0 || v != static_cast<double>(static_cast<long>(v))) {
        throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line);
    }
    return static_cast<int>(v);
}

bool is_header(const Line& line) {
    return line.tokens.front() == "UCLA";
}

// "Key : N" header lines.
bool is_count_header(const Line& line, std::string_view key) {
    return line.tokens.size() == 3 && line.tokens[0] == key && line.tokens[1] == ":";
}

std::map<std::string, int, std::less<>> name_index(const std::vector<Block>& blocks) {
    std::map<std::string, int, std::less<>> index;
    for (const Block& b : blocks) {
        index.emplace(b.name, b.id);
    }
    return index;
}

} // namespace

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    if (std::string_view(buf) == "-0.000000") {
        return "0.000000";
    }
    return buf;
}

std::vector<Block> parse_blocks(std::string_view text) {
    static const std::regex corner_re(R"(\(\s*([^,\s()]+)\s*,\s*([^,\s()]+)\s*\))");
    std::vector<Block> blocks;
    std::map<std::string, int, std::less<>> seen;
    int declared = -1;
    int declared_line = 0;

    for (const Line& line : tokenize(text)) {
        const auto& t = line.tokens;
        if (is_header(line)) {
            continue;
        }
        if (is_count_header(line, "NumHardRectilinearBlocks")) {
            declared = to_count(t[2], line.number);
            declared_line = line.number;
            continue;
        }
        if (is_count_header(line, "NumSoftRectangularBlocks") || is_count_header(line, "NumTerminals")) {
            if (to_count(t[2], line.number) != 0) {
                throw ParseError("only hard rectilinear blocks are supported", line.number);
            }
            continue;
        }
        if (t.size() >= 2 && t[1] == "terminal") {
            throw ParseError("terminal pads are not supported", line.number);
        }
        if (t.size() < 3 || t[1] != "hardrectilinear") {
            throw ParseError("expected 'name hardrectilinear 4 (x,y) ...'", line.number);
        }
        if (to_count(t[2], line.number) != 4) {
            throw ParseError("only 4-corner (rectangular) blocks are supported", line.number);
        }
        std::string rest;
        for (std::size_t i = 3; i < t.size(); ++i) {
            rest += t[i];
            rest += ' ';
        }
        std::vector<Point> pts;
        for (auto it = std::sregex_iterator(rest.begin(), rest.end(), corner_re); it != std::sregex_iterator(); ++it) {
            pts.push_back({to_number((*it)[1].str(), line.number), to_number((*it)[2].str(), line.number)});
        }
        if (pts.size() != 4) {
            throw ParseError("expected 4 corner points, found " + std::to_string(pts.size()), line.number);
        }
        double xlo = pts[0].x, xhi = xlo, ylo = pts[0].y, yhi = ylo;
        for (const Point& p : pts) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.y);
            yhi = std::max(yhi, p.y);
        }
        for (const Point& p : pts) {
            if ((p.x != xlo && p.x != xhi) || (p.y != ylo && p.y != yhi)) {
                throw ParseError("corner points do not form an axis-aligned rectangle", line.number);
            }
        }
        if (!(xhi > xlo) || !(yhi > ylo)) {
            throw ParseError("block '" + t[0] + "' has zero width or height", line.number);
        }
        if (!seen.emplace(t[0], line.number).second) {
            throw DuplicateEntityError("line " + std::to_string(line.number) + ": duplicate block '" + t[0] + "'");
        }
        Block b;
        b.id = static_cast<int>(blocks.size());
        b.name = t[0];
        b.width = xhi - xlo;
        b.height = yhi - ylo;
        blocks.push_back(std::move(b));
    }
    if (declared >= 0 && declared != static_cast<int>(blocks.size())) {
        throw ParseError("header declares " + std::to_string(declared) + " blocks, file has " +
                             std::to_string(blocks.size()),
                         declared_line);
    }
    return blocks;
}

std::vector<Block> parse_pl(std::string_view text, std::vector<Block> blocks) {
    const auto index = name_index(blocks);
    for (const Line& line : tokenize(text)) {
        const auto& t = line.tokens;
        if (is_header(line)) {
            continue;
        }
        if (t.size() < 3) {
            throw ParseError("expected 'name x y'", line.number);
        }
        auto it = index.find(t[0]);
        if (it == index.end()) {
            throw UnknownNameError("line " + std::to_string(line.number) + ": unknown block '" + t[0] + "'");
        }
        Block& b = blocks[static_cast<std::size_t>(it->second)];
        if (b.placed) {
            throw DuplicateEntityError("line " + std::to_string(line.number) + ": block '" + t[0] +
                                       "' placed twice");
        }
        b.x = to_number(t[1], line.number);
        b.y = to_number(t[2], line.number);
        b.placed = true;
    }
    for (const Block& b : blocks) {
        if (!b.placed) {
            throw ParseError("missing placement for block '" + b.name + "'", 0);
        }
    }
    return blocks;
}

std::vector<Net> parse_nets(std::string_view text, const std::vector<Block>& blocks) {
    const auto index = name_index(blocks);
    const std::vector<Line> lines = tokenize(text);
    std::vector<Net> nets;
    int declared_nets = -1, declared_pins = -1, total_pins = 0;

    auto offset_value = [](const std::string& tok, double extent, int line_no) {
        if (!tok.empty() && tok.front() == '%') {
            return to_number(std::string_view(tok).substr(1), line_no) / 100.0 * extent;
        }
        return to_number(tok, line_no);
    };

    std::size_t i = 0;
    while (i < lines.size()) {
        const Line& line = lines[i];
        const auto& t = line.tokens;
        if (is_header(line)) {
            ++i;
            continue;
        }
        if (is_count_header(line, "NumNets")) {
            declared_nets = to_count(t[2], line.number);
            ++i;
            continue;
        }
        if (is_count_header(line, "NumPins")) {
            declared_pins = to_count(t[2], line.number);
            ++i;
            continue;
        }
        if (t.size() < 3 || t[0] != "NetDegree" || t[1] != ":") {
            throw ParseError("expected 'NetDegree : t'", line.number);
        }
        const int degree = to_count(t[2], line.number);
        Net net;
        net.id = static_cast<int>(nets.size());
        net.name = t.size() >= 4 ? t[3] : "n" + std::to_string(net.id);
        ++i;
        for (int k = 0; k < degree; ++k, ++i) {
            if (i >= lines.size() || lines[i].tokens.front() == "NetDegree") {
                throw ParseError("net '" + net.name + "' declares degree " + std::to_string(degree) + " but lists " +
                                     std::to_string(k) + " pins",
                                 line.number);
            }
            const Line& pl = lines[i];
            const auto& pt = pl.tokens;
            auto it = index.find(pt[0]);
            if (it == index.end()) {
                throw UnknownNameError("line " + std::to_string(pl.number) + ": pin on unknown block '" + pt[0] + "'");
            }
            const Block& b = blocks[static_cast<std::size_t>(it->second)];
            std::size_t j = 1;
            if (j < pt.size() && (pt[j] == "I" || pt[j] == "O" || pt[j] == "B")) {
                ++j;
            }
            Pin pin;
            pin.net_id = net.id;
            pin.block_id = b.id;
            if (j < pt.size()) {
                if (pt[j] != ":" || j + 3 != pt.size()) {
                    throw ParseError("expected 'block [I|O|B] [: dx dy]'", pl.number);
                }
                pin.dx = offset_value(pt[j + 1], b.width, pl.number);
                pin.dy = offset_value(pt[j + 2], b.height, pl.number);
            }
            pin.absolute = pin_position(b, pin.dx, pin.dy);
            net.pins.push_back(pin);
        }
        if (i < lines.size() && lines[i].tokens.front() != "NetDegree" && !is_count_header(lines[i], "NumNets") &&
            !is_count_header(lines[i], "NumPins") && !is_header(lines[i])) {
            throw ParseError("net '" + net.name + "' declares degree " + std::to_string(degree) +
                                 " but more pin lines follow",
                             lines[i].number);
        }
        if (degree < 2) {
            throw InvalidNetError("line " + std::to_string(line.number) + ": net '" + net.name +
                                  "' has fewer than 2 pins");
        }
        total_pins += degree;
        net.hpwl = compute_hpwl(net);
        nets.push_back(std::move(net));
    }
    if (declared_nets >= 0 && declared_nets != static_cast<int>(nets.size())) {
        throw ParseError("NumNets declares " + std::to_string(declared_nets) + ", file has " +
                             std::to_string(nets.size()),
                         0);
    }
    if (declared_pins >= 0 && declared_pins != total_pins) {
        throw ParseError("NumPins declares " + std::to_string(declared_pins) + ", file has " +
                             std::to_string(total_pins),
                         0);
    }
    return nets;
}

Floorplan assemble_floorplan(std::vector<Block> blocks, std::vector<Net> nets) {
    Floorplan fp;
    fp.outline = bounding_box(blocks);
    fp.blocks = std::move(blocks);
    fp.nets = std::move(nets);
    for (Net& n : fp.nets) {
        for (Pin& p : n.pins) {
            p.net_id = n.id;
            p.absolute = pin_position(fp.blocks.at(static_cast<std::size_t>(p.block_id)), p.dx, p.dy);
        }
        n.hpwl = compute_hpwl(n);
    }
    return fp;
}

Floorplan parse_floorplan(std::string_view blocks_text, std::string_view pl_text, std::string_view nets_text) {
    std::vector<Block> blocks = parse_pl(pl_text, parse_blocks(blocks_text));
    std::vector<Net> nets = parse_nets(nets_text, blocks);
    return assemble_floorplan(std::move(blocks), std::move(nets));
}

std::string serialize_blocks(const Floorplan& fp) {
    std::string out = "UCLA blocks 1.0\nNumHardRectilinearBlocks : " + std::to_string(fp.blocks.size()) + "\n";
    for (const Block& b : fp.blocks) {
        const std::string w = format_fixed(b.width), h = format_fixed(b.height), z = format_fixed(0.0);
        out += b.name + " hardrectilinear 4 (" + z + "," + z + ") (" + z + "," + h + ") (" + w + "," + h + ") (" + w +
               "," + z + ")\n";
    }
    return out;
}

std::string serialize_pl(const Floorplan& fp) {
    std::string out = "UCLA pl 1.0\n";
    for (const Block& b : fp.blocks) {
        out += b.name + " " + format_fixed(b.x) + " " + format_fixed(b.y) + "\n";
    }
    return out;
}

std::string serialize_nets(const Floorplan& fp) {
    std::size_t pins = 0;
    for (const Net& n : fp.nets) {
        pins += n.pins.size();
    }
    std::string out = "UCLA nets 1.0\nNumNets : " + std::to_string(fp.nets.size()) + "\nNumPins : " +
                      std::to_string(pins) + "\n";
    for (const Net& n : fp.nets) {
        out += "NetDegree : " + std::to_string(n.degree()) + " " + n.name + "\n";
        for (const Pin& p : n.pins) {
            out += fp.blocks.at(static_cast<std::size_t>(p.block_id)).name + " B : " + format_fixed(p.dx) + " " +
                   format_fixed(p.dy) + "\n";
        }
    }
    return out;
}

std::string serialize(const Floorplan& fp) {
    return serialize_blocks(fp) + serialize_pl(fp) + serialize_nets(fp);
}

std::string instance_hash(const Floorplan& fp) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize(fp)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << text;
}

Floorplan load_floorplan(const std::filesystem::path& blocks, const std::filesystem::path& pl,
                         const std::filesystem::path& nets) {
    return parse_floorplan(read_text_file(blocks), read_text_file(pl), read_text_file(nets));
}

void save_floorplan(const Floorplan& fp, const std::filesystem::path& dir, const std::string& stem) {
    write_text_file(dir / (stem + ".blocks"), serialize_blocks(fp));
    write_text_file(dir / (stem + ".pl"), serialize_pl(fp));
    write_text_file(dir / (stem + ".nets"), serialize_nets(fp));
}

} // namespace msroute

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "msroute/floorplan.hpp"

namespace msroute {

// Bookshelf-style text dialects.
//
//   .blocks  name hardrectilinear 4 (x1,y1) (x2,y2) (x3,y3) (x4,y4)
//            optional "UCLA ..." and "NumHardRectilinearBlocks : N" headers, '#' comments
//   .pl      name x y
//   .nets    NetDegree : t [name]
//            followed by t lines "blockname [I|O|B] [: dx dy]"
//            (dx/dy in coordinate units, or "%p" as a percentage of the block size)
//
// Canonical serialization uses the same dialects with 6-decimal fixed point.

std::vector<Block> parse_blocks(std::string_view text);
std::vector<Block> parse_pl(std::string_view text, std::vector<Block> blocks);
std::vector<Net> parse_nets(std::string_view text, const std::vector<Block>& blocks);

// Builds a floorplan from placed blocks and nets; the outline is the block bounding box
// and every net's hpwl is filled in.
Floorplan assemble_floorplan(std::vector<Block> blocks, std::vector<Net> nets);

// parse_blocks + parse_pl + parse_nets + assemble_floorplan.
Floorplan parse_floorplan(std::string_view blocks_text, std::string_view pl_text, std::string_view nets_text);

std::string serialize_blocks(const Floorplan& fp);
std::string serialize_pl(const Floorplan& fp);
std::string serialize_nets(const Floorplan& fp);
std::string serialize(const Floorplan& fp);  // the three files concatenated

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_hash(const Floorplan& fp);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Floorplan load_floorplan(const std::filesystem::path& blocks, const std::filesystem::path& pl,
                         const std::filesystem::path& nets);

// Writes <dir>/<stem>.blocks, .pl and .nets.
void save_floorplan(const Floorplan& fp, const std::filesystem::path& dir, const std::string& stem);

std::string format_fixed(double v);

} // namespace msroute

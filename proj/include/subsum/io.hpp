#pragma once

// Set files, GAP files, report fragments and content digests.
//
// Set files:
//   {"domain":"rational","elements":["1","3/2",...]}
//   {"domain":"integer-vector","dim":2,"elements":[[1,0],[0,1]]}
//   {"domain":"formal","basis":[{"name":"alpha","approx":"1414213/1000000","error":"1/1000000"}],
//    "elements":[["1","0"],["0","1"]]}          coordinates over (1, alpha, ...)
// Integers beyond 64 bits must be quoted.
// GAP files:
//   {"diffs":["1","10"],"half_sides":[2,2]}    optional "basis" as above, diffs then
//                                              given as coordinate arrays

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "subsum/gap.hpp"
#include "subsum/pipeline.hpp"
#include "subsum/rd_stability.hpp"
#include "subsum/scalar.hpp"
#include "subsum/sets.hpp"

namespace subsum {

using Json = nlohmann::ordered_json;
using ParsedSet = std::variant<ScalarSet, PointSet>;

ParsedSet parse_set_text(std::string_view text, const std::string& origin = "<input>");
ParsedSet parse_input(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

Json set_to_json(const ScalarSet& s);
Json set_to_json(const PointSet& s);
std::string emit_set(const ParsedSet& s);

SymmetricGAP parse_gap_text(std::string_view text, const std::string& origin = "<gap>");
Json gap_to_json(const SymmetricGAP& g);

Json scalar_to_json(const Scalar& x);
Json scalars_to_json(const ScalarSet& s);
Json point_to_json(const LatticePoint& p);

Json fd_record_to_json(const FdRecord& r);
std::string fd_csv_header();
std::string fd_csv_row(const FdRecord& r);

Json decomposition_to_json(const DecompositionReport& r);

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace subsum

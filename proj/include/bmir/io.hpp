#pragma once

#include "bmir/verify.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace bmir {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), location(where) {}
  std::string location;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json degree_json(const Degree& g);
Degree degree_from_json(const Json& j);
Json series_json(const NovikovSeries& s);
// Gamma^D input: a series list whose fiber degrees are zero.
std::map<BaseDegree, ZRat> gamma_from_json(const Json& j, const Ring& ring);

std::string degree_key(const BaseDegree& D);
OrderedJson ht_json(const HtTable& t);
Json model_json(const IAssembler& I);
Json recursion_json(const RecursionCheckReport& r);
Json support_json(const SupportReport& r);
Json string_divisor_json(const StringDivisorReport& r, const std::vector<unsigned>& dims, long Dmax);
Json ht_proposition_json(const HtPropositionReport& r);

// Two-space indented text with a trailing newline.
std::string dump_json(const Json& j);
std::string dump_json(const OrderedJson& j);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace bmir

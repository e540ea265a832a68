#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli.hpp"
#include "erglab/errors.hpp"

namespace erglab::cli {
namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(what + ": not a number: '" + s + "'");
  return v;
}

std::int64_t parse_integer(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument(what + ": not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::pair<std::string, std::string> head_tail(const std::string& tag) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos) return {tag, ""};
  return {tag.substr(0, colon), tag.substr(colon + 1)};
}

double named_or_number(const std::string& s, const std::string& what) {
  if (s == "golden") return systems::kGoldenAlpha;
  if (s == "sqrt2") return systems::kSqrt2Beta;
  return parse_number(s, what);
}

FiniteSeq load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open custom weight file '" + path + "'");
  std::vector<cplx> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw format_error(path + ":" + std::to_string(lineno) + ": expected a number");
    if (!(ls >> im)) im = 0.0;
    values.emplace_back(re, im);
  }
  if (values.empty()) throw format_error(path + ": no values");
  return FiniteSeq::from_values(values);
}

}  // namespace

systems::SystemSpec parse_system(const std::string& tag) {
  const auto [head, tail] = head_tail(tag);
  if (head == "rotation") {
    if (tail.empty()) throw std::invalid_argument("system: rotation needs an angle, e.g. rotation:golden");
    return systems::Rotation{named_or_number(tail, "rotation angle")};
  }
  if (head == "skew") {
    const auto parts = split(tail, ',');
    if (parts.size() != 2) throw std::invalid_argument("system: skew needs two parameters, e.g. skew:golden,sqrt2");
    return systems::Skew{named_or_number(parts[0], "skew alpha"), named_or_number(parts[1], "skew beta")};
  }
  if (head == "doubling" && tail.empty()) return systems::Doubling{};
  if (head == "identity" && tail.empty()) return systems::Identity{};
  if (head == "nil") {
    if (tail == "quadratic") return systems::NilTranslation{systems::default_quadratic_sequence().generators.at(0)};
    const auto parts = split(tail, ',');
    if (parts.size() != 3) throw std::invalid_argument("system: nil needs 'quadratic' or x,y,z");
    return systems::NilTranslation{{parse_number(parts[0], "nil x"), parse_number(parts[1], "nil y"),
                                    parse_number(parts[2], "nil z")}};
  }
  throw std::invalid_argument("unknown system tag '" + tag + "'");
}

systems::Observable parse_observable(const std::string& tag) {
  const auto [head, tail] = head_tail(tag);
  if (head == "character") {
    if (tail.empty()) throw std::invalid_argument("observable: character needs frequencies, e.g. character:1");
    systems::Character c;
    for (const auto& p : split(tail, ',')) c.freq.push_back(parse_integer(p, "character frequency"));
    return c;
  }
  if (head == "const") return systems::Constant{cplx(parse_number(tail, "constant"), 0.0)};
  if (head == "nil") {
    if (tail == "zphase") return systems::NilLipschitz{systems::NilFunction::kZPhase};
    if (tail == "twisted") return systems::NilLipschitz{systems::NilFunction::kTwisted};
    if (tail == "tent") return systems::NilLipschitz{systems::NilFunction::kTent};
  }
  throw std::invalid_argument("unknown observable tag '" + tag + "'");
}

cube::Weight parse_weight(const std::string& tag, std::uint64_t W, std::optional<std::uint64_t> residue) {
  if (tag == "ones") return cube::weight::Ones{};
  if (tag == "mobius") return cube::weight::Mobius{};
  if (tag == "liouville") return cube::weight::Liouville{};
  if (tag == "mangoldt_prime") return cube::weight::MangoldtPrime{};
  if (tag == "mangoldt_prime_wtricked") {
    cube::weight::MangoldtPrimeWTricked w{arith::make_w_trick(W), 0};
    if (residue) {
      const auto& rs = w.params.residues;
      std::size_t i = 0;
      while (i < rs.size() && rs[i] != *residue) ++i;
      if (i == rs.size()) throw std::invalid_argument("weight: residue is not coprime to W or not below W");
      w.residue_index = i;
    }
    return w;
  }
  if (tag.rfind("custom:", 0) == 0) return cube::weight::Custom{load_custom(tag.substr(7))};
  throw std::invalid_argument("unknown weight tag '" + tag + "'");
}

}  // namespace erglab::cli

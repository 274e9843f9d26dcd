#include "toric/fan_io.hpp"

#include <fstream>
#include <sstream>

#include "toric/errors.hpp"

namespace toric {

namespace {

template <typename T>
std::vector<T> parse_numbers(const std::string& line, std::size_t lineno) {
  std::istringstream is(line);
  std::vector<T> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      if constexpr (std::is_unsigned_v<T>)
        if (v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

Fan parse_fan_text(std::string_view text) {
  enum class Section { Header, Rays, Cones } section = Section::Header;
  Fan fan;
  bool have_dim = false;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    auto err = [&](const std::string& msg) {
      return ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    if (body.rfind("dim", 0) == 0) {
      if (have_dim) throw err("duplicate dim");
      auto v = parse_numbers<long long>(body.substr(3), lineno);
      if (v.size() != 1 || v[0] <= 0) throw err("dim needs one positive integer");
      fan.dim = static_cast<std::size_t>(v[0]);
      have_dim = true;
    } else if (body == "rays") {
      if (!have_dim || section != Section::Header) throw err("'rays' must follow 'dim'");
      section = Section::Rays;
    } else if (body == "cones") {
      if (section != Section::Rays) throw err("'cones' must follow 'rays'");
      section = Section::Cones;
    } else if (section == Section::Rays) {
      auto v = parse_numbers<std::int64_t>(body, lineno);
      if (v.size() != fan.dim) throw err("ray has " + std::to_string(v.size()) + " coordinates");
      fan.rays.push_back(std::move(v));
    } else if (section == Section::Cones) {
      auto c = parse_numbers<std::size_t>(body, lineno);
      for (auto i : c)
        if (i >= fan.rays.size()) throw err("ray index " + std::to_string(i) + " out of range");
      fan.max_cones.push_back(std::move(c));
    } else {
      throw err("unexpected content '" + body + "'");
    }
  }
  if (section != Section::Cones) throw ParseError("missing 'rays' or 'cones' section");
  return fan;
}

std::string emit_fan_text(const Fan& fan) {
  std::ostringstream os;
  os << "dim " << fan.dim << "\nrays\n";
  for (const auto& r : fan.rays) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << r[k];
    os << '\n';
  }
  os << "cones\n";
  for (const auto& c : fan.max_cones) {
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << '\n';
  }
  return os.str();
}

Fan read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fan file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fan_text(ss.str());
}

}  // namespace toric

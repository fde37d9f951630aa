#include "hrkin/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hrkin/errors.hpp"

namespace hrkin {
namespace {

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + what + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("bad integer value for " + what + ": '" + s + "'");
  }
  return v;
}

}  // namespace

ArmConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  ArmConfig cfg;
  cfg.layout.num_links = 0;
  bool have_links = false, have_h = false;
  std::vector<std::string> q0_tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key: value'");
    }
    const std::string key = strip(line.substr(0, colon));
    const std::string value = strip(line.substr(colon + 1));
    if (value.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty value for '" +
                        key + "'");
    }

    if (key == "num_links") {
      cfg.layout.num_links = static_cast<int>(parse_int(value, key));
      have_links = true;
    } else if (key == "link_length") {
      cfg.layout.link_length = parse_double(value, key);
    } else if (key == "H") {
      cfg.layout.modes.clear();
      for (const std::string& tok : split_list(value)) {
        const long long m = parse_int(tok, "H entry");
        if (m < -1 || m > 1) {
          throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": H entries must be -1, 0 or 1");
        }
        cfg.layout.modes.push_back(static_cast<LinkMode>(m));
      }
      have_h = true;
    } else if (key == "frozen") {
      const auto tokens = split_list(value);
      if (tokens.size() != 3) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": frozen takes 'link phi theta'");
      }
      const int link = static_cast<int>(parse_int(tokens[0], "frozen link"));
      cfg.layout.frozen[link] = {parse_double(tokens[1], "frozen phi"),
                                 parse_double(tokens[2], "frozen theta")};
    } else if (key == "damping") {
      cfg.settings.damping = parse_double(value, key);
    } else if (key == "dt") {
      cfg.settings.dt = parse_double(value, key);
    } else if (key == "position_tolerance") {
      cfg.settings.position_tolerance = parse_double(value, key);
    } else if (key == "orientation_tolerance") {
      cfg.settings.orientation_tolerance = parse_double(value, key);
    } else if (key == "max_iterations") {
      cfg.settings.max_iterations = static_cast<int>(parse_int(value, key));
    } else if (key == "stall_window") {
      cfg.settings.stall_window = static_cast<int>(parse_int(value, key));
    } else if (key == "stall_epsilon") {
      cfg.settings.stall_epsilon = parse_double(value, key);
    } else if (key == "step_clamp") {
      cfg.settings.step_clamp = parse_double(value, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "q0") {
      q0_tokens = split_list(value);
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
  }

  if (!have_links) throw ConfigError(path + ": missing required key num_links");
  if (!have_h) throw ConfigError(path + ": missing required key H");
  if (static_cast<int>(cfg.layout.modes.size()) != cfg.layout.num_links) {
    throw ConfigError(path + ": H has " + std::to_string(cfg.layout.modes.size()) +
                      " entries but num_links is " +
                      std::to_string(cfg.layout.num_links));
  }
  if (!q0_tokens.empty()) {
    if (static_cast<int>(q0_tokens.size()) != 2 * cfg.layout.num_links) {
      throw ConfigError(path + ": q0 needs exactly " +
                        std::to_string(2 * cfg.layout.num_links) + " values");
    }
    FullConfiguration q0;
    for (const std::string& tok : q0_tokens) {
      q0.v.push_back(parse_double(tok, "q0 entry"));
    }
    cfg.q0 = std::move(q0);
  }
  try {
    cfg.layout.validate();
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

FullConfiguration load_q_file(const std::string& path, int num_links) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // Drop comments line by line.
  std::string cleaned;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    cleaned += line;
    cleaned += ' ';
  }
  FullConfiguration q;
  for (const std::string& tok : split_list(cleaned)) {
    q.v.push_back(parse_double(tok, "joint value"));
  }
  if (q.size() != 2 * num_links) {
    throw ConfigError(path + ": expected " + std::to_string(2 * num_links) +
                      " joint values, found " + std::to_string(q.size()));
  }
  return q;
}

HomTransform parse_target_pose(const std::string& spec) {
  std::string text = spec;
  {
    std::ifstream in(spec);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
  }
  std::vector<double> nums;
  for (const std::string& tok : split_list(text)) {
    nums.push_back(parse_double(tok, "target pose entry"));
  }
  HomTransform t = HomTransform::identity();
  if (nums.size() == 12) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) t.at(r, c) = nums[r * 3 + c];
    }
    t.set_translation({nums[9], nums[10], nums[11]});
  } else if (nums.size() == 7) {
    t.set_translation({nums[0], nums[1], nums[2]});
    double w = nums[3], x = nums[4], y = nums[5], z = nums[6];
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(std::abs(n - 1.0) <= 1e-6)) {
      throw ConfigError("target quaternion is not unit length");
    }
    // Quaternions copied from printed output are rounded; renormalize so the
    // rotation block is orthonormal to machine precision.
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    t.at(0, 0) = 1 - 2 * (y * y + z * z);
    t.at(0, 1) = 2 * (x * y - w * z);
    t.at(0, 2) = 2 * (x * z + w * y);
    t.at(1, 0) = 2 * (x * y + w * z);
    t.at(1, 1) = 1 - 2 * (x * x + z * z);
    t.at(1, 2) = 2 * (y * z - w * x);
    t.at(2, 0) = 2 * (x * z - w * y);
    t.at(2, 1) = 2 * (y * z + w * x);
    t.at(2, 2) = 1 - 2 * (x * x + y * y);
  } else {
    throw ConfigError("target pose needs 12 numbers (rotation + translation) or "
                      "7 (translation + quaternion), got " +
                      std::to_string(nums.size()));
  }
  if (!is_rigid(t, 1e-6)) {
    throw ConfigError("target pose rotation is not orthonormal");
  }
  return t;
}

}  // namespace hrkin

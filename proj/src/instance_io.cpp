#include "bdtsp/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace bdtsp {

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::int64_t to_int(std::string_view tok, int line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    fail(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

Instance parse_native(const std::vector<Line>& lines) {
  if (lines.empty()) throw InputError("empty instance file");
  const Line& head = lines.front();
  if (head.tokens.size() != 3) fail(head.number, "expected header 'n m k'");
  const std::int64_t n = to_int(head.tokens[0], head.number);
  const std::int64_t m = to_int(head.tokens[1], head.number);
  const std::int64_t k = to_int(head.tokens[2], head.number);
  if (n < 2 || n > 100000) fail(head.number, "vertex count out of range");
  if (m < 0 || m > 1000000) fail(head.number, "edge count out of range");
  if (static_cast<std::int64_t>(lines.size()) - 1 != m)
    throw InputError("expected " + std::to_string(m) + " edge records, found " +
                     std::to_string(lines.size() - 1));
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 3) fail(l.number, "expected edge record 'u v c'");
    const std::int64_t u = to_int(l.tokens[0], l.number);
    const std::int64_t v = to_int(l.tokens[1], l.number);
    const std::int64_t c = to_int(l.tokens[2], l.number);
    if (u < 1 || u > n || v < 1 || v > n) fail(l.number, "vertex id out of range 1.." + std::to_string(n));
    if (u == v) fail(l.number, "self-loop");
    if (c < 1) fail(l.number, "cost must be a positive integer");
    edges.push_back({kNoEdge, static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), c});
  }
  return Instance(static_cast<int>(n), std::move(edges), static_cast<int>(k));
}

bool looks_like_tsplib(const std::vector<Line>& lines) {
  for (const auto& l : lines) {
    std::string_view t = l.tokens.front();
    if (t.starts_with("NAME") || t.starts_with("TYPE") || t.starts_with("DIMENSION") ||
        t.starts_with("EDGE_WEIGHT"))
      return true;
  }
  return false;
}

Instance parse_tsplib(const std::vector<Line>& lines, std::optional<int> degree) {
  std::int64_t n = -1;
  std::string type, format;
  std::vector<std::int64_t> weights;
  bool in_section = false;
  int section_line = 0;
  for (const auto& l : lines) {
    std::string first(l.tokens.front());
    if (first == "EOF") break;
    if (in_section && (std::isdigit(static_cast<unsigned char>(first[0])) || first[0] == '-')) {
      for (auto tok : l.tokens) weights.push_back(to_int(tok, l.number));
      continue;
    }
    in_section = false;
    if (first == "EDGE_WEIGHT_SECTION") {
      in_section = true;
      section_line = l.number;
      continue;
    }
    // "KEY: value", "KEY : value" or "KEY:value".
    std::string joined;
    for (auto tok : l.tokens) joined += std::string(tok) + " ";
    const auto colon = joined.find(':');
    if (colon == std::string::npos) fail(l.number, "expected 'KEY: value'");
    std::string key = joined.substr(0, colon);
    std::string value = joined.substr(colon + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(' '));
      s.erase(s.find_last_not_of(' ') + 1);
    };
    trim(key);
    trim(value);
    if (key == "DIMENSION") n = to_int(value, l.number);
    else if (key == "EDGE_WEIGHT_TYPE") type = value;
    else if (key == "EDGE_WEIGHT_FORMAT") format = value;
  }
  if (n < 2) throw InputError("TSPLIB file lacks a valid DIMENSION");
  if (type != "EXPLICIT") throw InputError("only EDGE_WEIGHT_TYPE EXPLICIT is supported");
  if (format != "FULL_MATRIX") throw InputError("only EDGE_WEIGHT_FORMAT FULL_MATRIX is supported");
  if (static_cast<std::int64_t>(weights.size()) != n * n)
    fail(section_line, "expected " + std::to_string(n * n) + " matrix entries, found " +
                           std::to_string(weights.size()));
  std::vector<Edge> edges;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      const std::int64_t a = weights[static_cast<std::size_t>(i * n + j)];
      const std::int64_t b = weights[static_cast<std::size_t>(j * n + i)];
      if (a != b)
        throw InputError("matrix is not symmetric at (" + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1) + ")");
      if (a > 0) edges.push_back({kNoEdge, static_cast<VertexId>(i), static_cast<VertexId>(j), a});
    }
  }
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  const int max_deg = std::max(3, *std::max_element(deg.begin(), deg.end()));
  const int bound = degree.value_or(max_deg);
  if (!degree && max_deg > 7) {
    const auto v = std::max_element(deg.begin(), deg.end()) - deg.begin();
    throw InputError("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(max_deg) +
                     " above the supported bound 7");
  }
  return Instance(static_cast<int>(n), std::move(edges), bound);
}

}  // namespace

Instance parse_instance(std::string_view text, std::optional<int> tsplib_degree) {
  const auto lines = tokenize(text);
  if (!lines.empty() && looks_like_tsplib(lines)) return parse_tsplib(lines, tsplib_degree);
  return parse_native(lines);
}

Instance load_instance(const std::string& path, std::optional<int> tsplib_degree) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), tsplib_degree);
}

std::string serialize_instance(const Instance& inst) {
  if (!inst.preforced().empty())
    throw InputError("instances with preforced edges cannot be serialized");
  std::ostringstream out;
  out << inst.n() << ' ' << inst.m() << ' ' << inst.degree_bound() << '\n';
  for (const auto& e : inst.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.cost << '\n';
  return out.str();
}

std::uint64_t instance_digest(const Instance& inst) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bdtsp

#include "tempofilt/io.hpp"

#include <zlib.h>

#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "tempofilt/errors.hpp"

namespace tempofilt {

namespace {

bool has_gz_suffix(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

std::string read_gz_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  std::string out;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  if (got < 0) {
    int errnum = 0;
    const char* msg = gzerror(f, &errnum);
    std::string w = msg ? msg : "gzread failed";
    gzclose(f);
    throw IoError("cannot read " + path + ": " + w);
  }
  gzclose(f);
  return out;
}

void write_gz_file(const std::string& path, const std::string& content) {
  gzFile f = gzopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  if (!content.empty() &&
      gzwrite(f, content.data(), static_cast<unsigned>(content.size())) !=
          static_cast<int>(content.size())) {
    gzclose(f);
    throw IoError("short write to " + path);
  }
  if (gzclose(f) != Z_OK) throw IoError("cannot finish writing " + path);
}

// split on blanks; returns false for lines with no fields
bool split_fields(const std::string& line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.data() + start, i - start);
  }
  return !out.empty();
}

double parse_double_token(std::string_view tok, const std::string& origin,
                          std::size_t line, const char* what) {
  std::string_view body = tok;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  if (body == "inf" || body == "INF" || body == "Inf" || body == "infinity")
    return negative ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(origin, line, std::string("cannot parse ") + what + " '" +
                                       std::string(tok) + "'");
  return value;
}

long long parse_int_token(std::string_view tok, const std::string& origin,
                          std::size_t line, const char* what) {
  long long value = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(origin, line, std::string("cannot parse ") + what + " '" +
                                       std::string(tok) + "'");
  return value;
}

// Iterates lines of text, tracking 1-based line numbers.
template <class Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line, line_no);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

ColumnOrder column_order_from_string(const std::string& name) {
  if (name == "tuv") return ColumnOrder::TUV;
  if (name == "uvt") return ColumnOrder::UVT;
  throw ValueError("unknown column order: " + name + " (expected tuv or uvt)");
}

std::string read_text_file(const std::string& path) {
  if (has_gz_suffix(path)) return read_gz_file(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; open below reports failures

  static std::atomic<std::uint64_t> tmp_counter{0};
  const fs::path tmp =
      dir / (target.filename().string() + ".tmp" +
             std::to_string(tmp_counter.fetch_add(1, std::memory_order_relaxed)));

  try {
    if (has_gz_suffix(path)) {
      write_gz_file(tmp.string(), content);
    } else {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open " + tmp.string() + " for writing: " + std::strerror(errno));
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.flush();
      if (!out) throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
  } catch (...) {
    fs::remove(tmp, ec);
    throw;
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

TemporalGraph parse_contact_sequence(const std::string& text, ColumnOrder order,
                                     const std::string& origin) {
  std::unordered_map<std::string, std::uint32_t> id_of;
  std::vector<std::string> names;
  bool preseeded = false;
  bool saw_data = false;
  std::vector<TemporalEdge> edges;
  std::vector<std::string_view> fields;

  auto intern = [&](std::string_view name, std::size_t line_no) -> std::uint32_t {
    auto it = id_of.find(std::string(name));
    if (it != id_of.end()) return it->second;
    if (preseeded)
      throw ParseError(origin, line_no,
                       "vertex '" + std::string(name) + "' not listed in # order header");
    const auto id = static_cast<std::uint32_t>(names.size());
    names.emplace_back(name);
    id_of.emplace(names.back(), id);
    return id;
  };

  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    if (!split_fields(line, fields)) return;
    if (fields[0][0] == '#') {
      if (fields.size() >= 2 && fields[0] == "#" && fields[1] == "order") {
        if (saw_data)
          throw ParseError(origin, line_no, "# order header must precede contact records");
        if (preseeded)
          throw ParseError(origin, line_no, "duplicate # order header");
        preseeded = true;
        for (std::size_t i = 2; i < fields.size(); ++i) {
          if (!id_of.emplace(std::string(fields[i]), static_cast<std::uint32_t>(names.size())).second)
            throw ParseError(origin, line_no,
                             "duplicate vertex '" + std::string(fields[i]) + "' in # order header");
          names.emplace_back(fields[i]);
        }
      }
      return;  // other comments are skipped
    }
    if (fields.size() < 3)
      throw ParseError(origin, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    std::string_view tu, tv, tt;
    if (order == ColumnOrder::TUV) {
      tt = fields[0];
      tu = fields[1];
      tv = fields[2];
    } else {
      tu = fields[0];
      tv = fields[1];
      tt = fields[2];
    }
    const double t = parse_double_token(tt, origin, line_no, "timestamp");
    if (!std::isfinite(t)) throw ParseError(origin, line_no, "non-finite timestamp");
    if (tu == tv)
      throw ParseError(origin, line_no, "self loop on vertex '" + std::string(tu) + "'");
    saw_data = true;
    const std::uint32_t u = intern(tu, line_no);
    const std::uint32_t v = intern(tv, line_no);
    edges.push_back({u, v, t});
  });

  if (!saw_data) throw ParseError(origin + ": no contact records found");
  const auto n = static_cast<std::uint32_t>(names.size());
  return TemporalGraph::from_edges(n, std::move(edges), std::move(names));
}

TemporalGraph read_contact_sequence(const std::string& path, ColumnOrder order) {
  return parse_contact_sequence(read_text_file(path), order, path);
}

std::string format_contact_sequence(const TemporalGraph& g) {
  std::string out = "# order";
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v) {
    out += ' ';
    out += g.name_of(v);
  }
  out += '\n';
  for (const auto& e : g.edges()) {
    out += format_double(e.t);
    out += ' ';
    out += g.name_of(e.u);
    out += ' ';
    out += g.name_of(e.v);
    out += '\n';
  }
  return out;
}

void write_contact_sequence(const TemporalGraph& g, const std::string& path) {
  write_text_file(path, format_contact_sequence(g));
}

FilteredGraph parse_filtered_graph(const std::string& text, const std::string& origin) {
  FilteredGraph g;
  bool have_header = false;
  bool saw_data = false;
  std::uint32_t max_vertex = 0;
  std::vector<std::string_view> fields;

  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    if (!split_fields(line, fields)) return;
    if (fields[0][0] == '#') {
      if (fields.size() >= 3 && fields[0] == "#" && fields[1] == "vertices") {
        const long long n = parse_int_token(fields[2], origin, line_no, "vertex count");
        if (n < 0) throw ParseError(origin, line_no, "negative vertex count");
        g.n_vertices = static_cast<std::uint32_t>(n);
        have_header = true;
      }
      return;
    }
    if (fields.size() < 3)
      throw ParseError(origin, line_no, "expected 'u v value'");
    const long long u = parse_int_token(fields[0], origin, line_no, "vertex");
    const long long v = parse_int_token(fields[1], origin, line_no, "vertex");
    const double value = parse_double_token(fields[2], origin, line_no, "value");
    if (u < 0 || v < 0) throw ParseError(origin, line_no, "negative vertex id");
    if (u == v) throw ParseError(origin, line_no, "self loop");
    saw_data = true;
    g.edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), value});
    max_vertex = std::max({max_vertex, g.edges.back().u, g.edges.back().v});
  });

  if (!saw_data && !have_header) throw ParseError(origin + ": no edges found");
  if (!have_header) g.n_vertices = max_vertex + 1;
  for (auto& e : g.edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= g.n_vertices)
      throw ParseError(origin + ": edge endpoint exceeds declared vertex count");
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const FilteredEdge& a, const FilteredEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 1; i < g.edges.size(); ++i)
    if (g.edges[i].u == g.edges[i - 1].u && g.edges[i].v == g.edges[i - 1].v)
      throw ParseError(origin + ": duplicate edge " + std::to_string(g.edges[i].u) + "-" +
                       std::to_string(g.edges[i].v));
  return g;
}

FilteredGraph read_filtered_graph(const std::string& path) {
  return parse_filtered_graph(read_text_file(path), path);
}

std::string format_filtered_graph(const FilteredGraph& g) {
  std::string out = "# vertices " + std::to_string(g.n_vertices) + "\n";
  for (const auto& e : g.edges) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += format_double(e.value);
    out += '\n';
  }
  return out;
}

void write_filtered_graph(const FilteredGraph& g, const std::string& path) {
  write_text_file(path, format_filtered_graph(g));
}

PersistenceDiagram parse_diagram(const std::string& text, const std::string& origin) {
  PersistenceDiagram d;
  std::vector<std::string_view> fields;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    if (!split_fields(line, fields)) return;
    if (fields[0][0] == '#') return;
    if (fields.size() < 3)
      throw ParseError(origin, line_no, "expected 'degree birth death'");
    const long long degree = parse_int_token(fields[0], origin, line_no, "degree");
    const double birth = parse_double_token(fields[1], origin, line_no, "birth");
    const double death = parse_double_token(fields[2], origin, line_no, "death");
    if (degree < 0) throw ParseError(origin, line_no, "negative degree");
    if (std::isinf(birth)) throw ParseError(origin, line_no, "infinite birth");
    if (death < birth) throw ParseError(origin, line_no, "death before birth");
    d.points.push_back({static_cast<int>(degree), birth, death});
  });
  return d;  // an empty diagram is a valid diagram
}

PersistenceDiagram read_diagram(const std::string& path) {
  return parse_diagram(read_text_file(path), path);
}

std::string format_diagram(const PersistenceDiagram& d) {
  std::string out;
  for (const auto& p : d.points) {
    out += std::to_string(p.degree);
    out += ' ';
    out += format_double(p.birth);
    out += ' ';
    out += format_double(p.death);
    out += '\n';
  }
  return out;
}

void write_diagram(const PersistenceDiagram& d, const std::string& path) {
  write_text_file(path, format_diagram(d));
}

GramMatrix parse_gram_csv(const std::string& text, const std::string& origin) {
  std::vector<std::vector<std::string>> rows;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    (void)line_no;
    if (line.empty()) return;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    for (;;) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(pos));
        break;
      }
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    rows.push_back(std::move(cells));
  });
  if (rows.empty()) throw ParseError(origin + ": empty gram file");
  GramMatrix g;
  g.ids = rows[0];
  const std::size_t n = g.ids.size();
  if (rows.size() != n + 1)
    throw ParseError(origin + ": expected " + std::to_string(n) + " matrix rows, got " +
                     std::to_string(rows.size() - 1));
  g.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i + 1].size() != n)
      throw ParseError(origin + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i + 1].size()) + " columns, expected " +
                       std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      g.values[i * n + j] =
          parse_double_token(rows[i + 1][j], origin, i + 2, "kernel value");
  }
  return g;
}

GramMatrix read_gram_csv(const std::string& path) {
  return parse_gram_csv(read_text_file(path), path);
}

std::string format_gram_csv(const GramMatrix& g) {
  std::string out;
  for (std::size_t i = 0; i < g.ids.size(); ++i) {
    if (g.ids[i].find_first_of(",\n") != std::string::npos)
      throw ValueError("gram id '" + g.ids[i] + "' contains a comma or newline");
    if (i) out += ',';
    out += g.ids[i];
  }
  out += '\n';
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_double(g.at(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_gram_csv(const GramMatrix& g, const std::string& path) {
  write_text_file(path, format_gram_csv(g));
}

}  // namespace tempofilt

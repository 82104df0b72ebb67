#include "sycos/io.hpp"

#include <boost/tokenizer.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "sycos/ksg_mi.hpp"

namespace sycos {

namespace {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;

  std::size_t column(const std::string& name, const std::string& path) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw IngestError(path + ": no column '" + name + "'");
  }
};

Row split(const std::string& line) {
  boost::tokenizer<boost::escaped_list_separator<char>> tok(
      line, boost::escaped_list_separator<char>('\\', ',', '"'));
  Row out;
  for (const auto& t : tok) {
    std::string v = t;
    while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.pop_back();
    std::size_t b = 0;
    while (b < v.size() && v[b] == ' ') ++b;
    out.push_back(v.substr(b));
  }
  return out;
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path);
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    if (!have_header) {
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      t.header = split(line);
      have_header = true;
      continue;
    }
    t.rows.push_back(split(line));
  }
  if (!have_header) throw IngestError(path + ": missing header row");
  return t;
}

double parse_value(const std::string& s) {
  if (s.empty()) return std::nan("");
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nan("");
  return v;
}

std::int64_t parse_time(const std::string& s, const std::string& path) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw IngestError(path + ": timestamp '" + s + "' is not an integer");
  return v;
}

struct Column {
  std::vector<std::int64_t> t;
  std::vector<double> v;
};

Column load_column(const Table& tab, const std::string& path, const std::string& value,
                   const std::optional<std::string>& ts) {
  const std::size_t vc = tab.column(value, path);
  const std::size_t tc = ts ? tab.column(*ts, path) : 0;
  Column c;
  for (std::size_t r = 0; r < tab.rows.size(); ++r) {
    const Row& row = tab.rows[r];
    c.v.push_back(vc < row.size() ? parse_value(row[vc]) : std::nan(""));
    if (ts) {
      if (tc >= row.size()) throw IngestError(path + ": row " + std::to_string(r + 2) + " lacks a timestamp");
      c.t.push_back(parse_time(row[tc], path));
    }
  }
  return c;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

TimeSeriesPair ingest(const IngestSpec& spec) {
  std::vector<double> xs, ys;
  std::vector<std::int64_t> ts;
  const bool timed = spec.timestamp_column.has_value();
  if (spec.y_path.empty()) {
    const Table tab = read_table(spec.x_path);
    const Column cx = load_column(tab, spec.x_path, spec.x_column, spec.timestamp_column);
    const Column cy = load_column(tab, spec.x_path, spec.y_column, std::nullopt);
    for (std::size_t i = 0; i < cx.v.size(); ++i) {
      if (!std::isfinite(cx.v[i]) || !std::isfinite(cy.v[i])) continue;
      xs.push_back(cx.v[i]);
      ys.push_back(cy.v[i]);
      if (timed) ts.push_back(cx.t[i]);
    }
  } else {
    const Column cx = load_column(read_table(spec.x_path), spec.x_path, spec.x_column,
                                  spec.timestamp_column);
    const Column cy = load_column(read_table(spec.y_path), spec.y_path, spec.y_column,
                                  spec.timestamp_column);
    if (timed) {
      std::map<std::int64_t, double> yv;
      for (std::size_t i = 0; i < cy.v.size(); ++i) yv[cy.t[i]] = cy.v[i];
      for (std::size_t i = 0; i < cx.v.size(); ++i) {
        auto it = yv.find(cx.t[i]);
        if (it == yv.end()) continue;
        if (!std::isfinite(cx.v[i]) || !std::isfinite(it->second)) continue;
        xs.push_back(cx.v[i]);
        ys.push_back(it->second);
        ts.push_back(cx.t[i]);
      }
    } else {
      if (cx.v.size() != cy.v.size())
        throw IngestError("series lengths differ: " + std::to_string(cx.v.size()) + " vs " +
                          std::to_string(cy.v.size()));
      for (std::size_t i = 0; i < cx.v.size(); ++i) {
        if (!std::isfinite(cx.v[i]) || !std::isfinite(cy.v[i])) continue;
        xs.push_back(cx.v[i]);
        ys.push_back(cy.v[i]);
      }
    }
  }

  if (spec.aggregate) {
    if (!timed) throw IngestError("aggregation needs a timestamp column");
    if (*spec.aggregate <= 0) throw IngestError("aggregation width must be positive");
    std::map<std::int64_t, std::tuple<double, double, std::size_t>> buckets;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto& [sx, sy, c] = buckets[floor_div(ts[i], *spec.aggregate)];
      sx += xs[i];
      sy += ys[i];
      ++c;
    }
    xs.clear();
    ys.clear();
    ts.clear();
    for (const auto& [b, acc] : buckets) {
      const auto& [sx, sy, c] = acc;
      xs.push_back(sx / static_cast<double>(c));
      ys.push_back(sy / static_cast<double>(c));
      ts.push_back(b * *spec.aggregate);
    }
  }

  if (xs.empty()) throw IngestError("no usable rows after alignment");
  if (xs.size() < 2) throw IngestError("need at least 2 aligned rows");
  TimeSeriesPair pair(std::move(xs), std::move(ys), std::move(ts));
  return spec.detie ? detie(pair, spec.seed) : pair;
}

WindowReport make_report(const ResultSet& rs, const TimeSeriesPair& pair,
                         nlohmann::ordered_json metadata) {
  WindowReport r;
  r.metadata = std::move(metadata);
  for (const auto& c : rs) {
    ReportEntry e;
    e.start_index = c.window.start;
    e.end_index = c.window.end - 1;
    if (pair.has_timestamps()) {
      e.start_time = pair.timestamps()[c.window.start];
      e.end_time = pair.timestamps()[c.window.end - 1];
    }
    e.mi = c.mi;
    e.normalized_mi = c.normalized_mi;
    e.method = to_string(c.method);
    r.windows.push_back(e);
  }
  return r;
}

ResultSet report_windows(const WindowReport& report) {
  ResultSet rs;
  for (const auto& e : report.windows)
    rs.insert({{e.start_index, e.end_index + 1}, e.mi, e.normalized_mi,
               e.method == "bu" ? Method::BU : Method::TD});
  return rs;
}

std::string to_json(const WindowReport& report) {
  nlohmann::ordered_json j;
  j["windows"] = nlohmann::ordered_json::array();
  for (const auto& e : report.windows) {
    nlohmann::ordered_json w;
    w["start_index"] = e.start_index;
    w["end_index"] = e.end_index;
    if (e.start_time) w["start_time"] = *e.start_time;
    if (e.end_time) w["end_time"] = *e.end_time;
    w["mi"] = e.mi;
    w["normalized_mi"] = e.normalized_mi;
    w["method"] = e.method;
    j["windows"].push_back(w);
  }
  j["metadata"] = report.metadata;
  return j.dump(2) + "\n";
}

WindowReport report_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw IngestError(std::string("malformed report: ") + ex.what());
  }
  WindowReport r;
  try {
    for (const auto& w : j.at("windows")) {
      ReportEntry e;
      e.start_index = w.at("start_index").get<Index>();
      e.end_index = w.at("end_index").get<Index>();
      if (w.contains("start_time")) e.start_time = w.at("start_time").get<std::int64_t>();
      if (w.contains("end_time")) e.end_time = w.at("end_time").get<std::int64_t>();
      e.mi = w.at("mi").get<double>();
      e.normalized_mi = w.at("normalized_mi").get<double>();
      e.method = w.at("method").get<std::string>();
      r.windows.push_back(e);
    }
    if (j.contains("metadata")) r.metadata = j.at("metadata");
  } catch (const nlohmann::json::exception& ex) {
    throw IngestError(std::string("malformed report: ") + ex.what());
  }
  return r;
}

std::string to_csv(const WindowReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "start_index,end_index,start_time,end_time,mi,normalized_mi,method\n";
  for (const auto& e : report.windows) {
    os << e.start_index << ',' << e.end_index << ',';
    if (e.start_time) os << *e.start_time;
    os << ',';
    if (e.end_time) os << *e.end_time;
    os << ',' << e.mi << ',' << e.normalized_mi << ',' << e.method << '\n';
  }
  return os.str();
}

void write_pair_csv(const std::string& path, const TimeSeriesPair& pair) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write " + path);
  out << std::setprecision(17);
  out << "t,x,y\n";
  for (Index i = 0; i < pair.size(); ++i) {
    out << (pair.has_timestamps() ? pair.timestamps()[i] : static_cast<std::int64_t>(i)) << ','
        << pair.x()[i] << ',' << pair.y()[i] << '\n';
  }
  if (!out) throw IngestError("failed writing " + path);
}

}  // namespace sycos

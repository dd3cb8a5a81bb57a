#include "aderdg/io/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/algorithm/string.hpp>

namespace aderdg {

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

std::string Seismogram::csv() const {
  std::string out = "t";
  for (const auto& v : variables) out += "," + v;
  out += '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_double(times[i]);
    for (double v : samples[i]) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

std::vector<double> Seismogram::trace(int v) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.at(static_cast<std::size_t>(v)));
  return out;
}

double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

std::vector<ConvergenceRow> convergence_table(int degree, const std::vector<int>& cells,
                                              const std::vector<std::vector<double>>& errors) {
  if (cells.size() != errors.size()) throw Error(ErrorKind::InvalidArgument, "one error row per mesh is required");
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ConvergenceRow r;
    r.degree = degree;
    r.cells = cells[i];
    r.errors = errors[i];
    if (i > 0)
      for (std::size_t v = 0; v < errors[i].size(); ++v)
        r.orders.emplace_back(observed_order(errors[i - 1][v], errors[i][v], cells[i - 1], cells[i]));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, const std::vector<std::string>& names) {
  std::string out = "N,cells";
  for (const auto& n : names) out += ",err_" + n;
  for (const auto& n : names) out += ",order_" + n;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.degree) + "," + std::to_string(r.cells);
    for (double e : r.errors) out += "," + format_double(e);
    for (std::size_t v = 0; v < r.errors.size(); ++v)
      out += "," + (v < r.orders.size() && r.orders[v] ? format_double(*r.orders[v]) : std::string());
    out += '\n';
  }
  return out;
}

std::string convergence_text(const std::vector<ConvergenceRow>& rows, const std::vector<std::string>& names) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%3s %6s", "N", "cells");
  out += buf;
  for (const auto& n : names) {
    std::snprintf(buf, sizeof buf, " %11s", ("e(" + n + ")").c_str());
    out += buf;
  }
  for (const auto& n : names) {
    std::snprintf(buf, sizeof buf, " %7s", ("O(" + n + ")").c_str());
    out += buf;
  }
  out += '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%3d %6d", r.degree, r.cells);
    out += buf;
    for (double e : r.errors) {
      std::snprintf(buf, sizeof buf, " %11.3e", e);
      out += buf;
    }
    for (std::size_t v = 0; v < r.errors.size(); ++v) {
      if (v < r.orders.size() && r.orders[v]) std::snprintf(buf, sizeof buf, " %7.2f", *r.orders[v]);
      else std::snprintf(buf, sizeof buf, " %7s", "-");
      out += buf;
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    boost::split(f, line, boost::is_any_of(","));
    rows.push_back(std::move(f));
  }
  return rows;
}

}  // namespace

CsvComparison compare_csv(const std::string& a, const std::string& b) {
  CsvComparison c;
  const auto ra = split_csv(a), rb = split_csv(b);
  if (ra.size() != rb.size()) {
    c.message = "row counts differ: " + std::to_string(ra.size()) + " vs " + std::to_string(rb.size());
    return c;
  }
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size()) {
      c.message = "column counts differ on line " + std::to_string(i + 1);
      return c;
    }
    for (std::size_t j = 0; j < ra[i].size(); ++j) {
      double x = 0.0, y = 0.0;
      const auto& sa = ra[i][j];
      const auto& sb = rb[i][j];
      const auto pa = std::from_chars(sa.data(), sa.data() + sa.size(), x);
      const auto pb = std::from_chars(sb.data(), sb.data() + sb.size(), y);
      const bool na = pa.ec == std::errc() && pa.ptr == sa.data() + sa.size();
      const bool nb = pb.ec == std::errc() && pb.ptr == sb.data() + sb.size();
      if (na && nb) {
        const double d = std::abs(x - y);
        if (!(d <= c.max_abs_diff)) c.max_abs_diff = std::isnan(d) ? INFINITY : d;
      } else if (sa != sb) {
        c.message = "text fields differ on line " + std::to_string(i + 1) + ": '" + sa + "' vs '" + sb + "'";
        return c;
      }
    }
  }
  c.equal_shape = true;
  c.message = "max abs difference " + format_double(c.max_abs_diff);
  return c;
}

}  // namespace aderdg

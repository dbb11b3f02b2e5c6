#include "lentropy/report.hpp"

#include <algorithm>
#include <cstdio>

namespace lentropy::report {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Svg {
  double width, height;
  std::string body;

  void rect(double x, double y, double w, double h, const char* fill) {
    body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
            "\" fill=\"" + fill + "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke) {
    body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
            "\" stroke=\"" + stroke + "\"/>\n";
  }
  void text(double x, double y, const std::string& s, const char* anchor = "start") {
    body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"" +
            anchor + "\">" + xml_escape(s) + "</text>\n";
  }
  std::string str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n" + body + "</svg>\n";
  }
};

}  // namespace

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<Cell>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (auto p = std::get_if<std::int64_t>(&row[i])) out += std::to_string(*p);
      else if (auto d = std::get_if<double>(&row[i])) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        out += buf;
      } else out += quote(std::get<std::string>(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string svg_cb_cascade(const compacta::Scheme& s, std::size_t depth, std::size_t gaps_per_level) {
  const std::size_t rank = compacta::cb_rank(s).rank;
  const double left = 90, span = 600, row_h = 40;
  Svg svg{left + span + 20, 30 + row_h * static_cast<double>(rank + 1), ""};
  svg.text(10, 18, "Cantor-Bendixson levels of " + compacta::to_string(s).substr(0, 80));
  compacta::MaybeScheme level = s;
  for (std::size_t k = 0; k <= rank; ++k) {
    const double y = 30 + row_h * static_cast<double>(k) + row_h / 2;
    svg.text(10, y + 4, "level " + std::to_string(k));
    svg.line(left, y, left + span, y, "#999");
    if (!level) {
      svg.text(left + span / 2, y - 6, "empty", "middle");
    } else {
      for (const auto& g : compacta::contiguous_intervals(*level, gaps_per_level)) {
        svg.rect(left + span * to_double(g.lo), y - 8, span * to_double(g.width()), 6, "#cde");
      }
      for (const auto& x : compacta::realize(*level, depth)) {
        const double px = left + span * to_double(x);
        svg.line(px, y - 4, px, y + 4, "#124");
      }
    }
    level = compacta::derivative(level);
  }
  return svg.str();
}

std::string svg_step_chart(const std::string& title, const std::vector<std::size_t>& counts) {
  const double left = 60, w = 500, h = 200, top = 30;
  Svg svg{left + w + 20, top + h + 40, ""};
  svg.text(10, 18, title);
  svg.line(left, top + h, left + w, top + h, "#333");
  svg.line(left, top, left, top + h, "#333");
  const double max = counts.empty() ? 1.0 : static_cast<double>(std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end())));
  const double step = counts.empty() ? w : w / static_cast<double>(counts.size());
  std::string path;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double y = top + h - h * static_cast<double>(counts[i]) / max;
    const double x0 = left + step * static_cast<double>(i);
    path += (i == 0 ? "M" : "L") + num(x0) + "," + num(y) + " L" + num(x0 + step) + "," + num(y) + " ";
    svg.text(x0 + step / 2, top + h + 14, std::to_string(i), "middle");
  }
  if (!path.empty()) svg.body += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#124\" stroke-width=\"2\"/>\n";
  svg.text(left - 6, top + 4, std::to_string(static_cast<std::size_t>(max)), "end");
  svg.text(left - 6, top + h, "0", "end");
  svg.text(left + w / 2, top + h + 32, "step", "middle");
  return svg.str();
}

std::string svg_bars(const std::string& title, const std::vector<std::string>& labels, const std::vector<double>& values) {
  const double left = 50, h = 200, top = 30, bar = 30, gap = 10;
  const double w = std::max(1.0, static_cast<double>(values.size())) * (bar + gap);
  Svg svg{left + w + 20, top + h + 40, ""};
  svg.text(10, 18, title);
  svg.line(left, top + h, left + w, top + h, "#333");
  svg.text(left - 6, top + 4, "1", "end");
  svg.text(left - 6, top + h, "0", "end");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::clamp(values[i], 0.0, 1.0);
    const double x = left + gap / 2 + static_cast<double>(i) * (bar + gap);
    svg.rect(x, top + h - h * v, bar, h * v, "#48a");
    if (i < labels.size()) svg.text(x + bar / 2, top + h + 14, labels[i], "middle");
  }
  return svg.str();
}

}  // namespace lentropy::report

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/hypergraph.hpp"

namespace spgemm_hg {

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::int64_t> parse_ints(std::string_view line, std::size_t line_no) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos == start) break;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + pos, v);
    if (ec != std::errc() || ptr != line.data() + pos) {
      throw ParseError(line_no, "non-integer token '" + std::string(line.substr(start, pos - start)) + "'");
    }
    out.push_back(v);
  }
  return out;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::string write_hgr(const Hypergraph& h) {
  std::string out;
  out += "0 " + std::to_string(h.num_vertices()) + " " + std::to_string(h.num_nets()) + " " +
         std::to_string(h.num_pins()) + " 3\n";
  for (NetId n = 0; n < h.num_nets(); ++n) {
    out += std::to_string(h.net_cost(n));
    for (VertexId v : h.pins(n)) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    out += std::to_string(h.comp_weight(v)) + " " + std::to_string(h.mem_weight(v)) + "\n";
  }
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    out += "%L " + std::to_string(v) + " " + h.vertex_label(v).to_string() + "\n";
  }
  for (NetId n = 0; n < h.num_nets(); ++n) {
    out += "%N " + std::to_string(n) + " " + h.net_label(n).to_string() + "\n";
  }
  return out;
}

Hypergraph read_hgr(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::optional<std::vector<std::int64_t>> header;
  std::size_t nv = 0, nn = 0, npins = 0;
  std::vector<std::pair<Weight, std::vector<VertexId>>> nets;
  std::vector<std::pair<Weight, Weight>> weights;
  std::vector<std::optional<Label>> vlabels, nlabels;
  std::vector<std::pair<std::size_t, std::string_view>> pending_labels;  // (line, text)
  std::size_t pins_seen = 0;

  while (reader.next(line)) {
    const std::size_t ln = reader.line_no();
    if (!line.empty() && line.front() == '%') {
      if (line.size() > 3 && (line.substr(0, 3) == "%L " || line.substr(0, 3) == "%N ")) {
        pending_labels.emplace_back(ln, line);
      }
      continue;
    }
    if (blank(line)) continue;
    auto ints = parse_ints(line, ln);
    if (!header) {
      if (ints.size() != 5 || ints[0] != 0 || ints[4] != 3 || ints[1] < 0 || ints[2] < 0 || ints[3] < 0) {
        throw ParseError(ln, "header must be '0 <vertices> <nets> <pins> 3'");
      }
      header = ints;
      nv = static_cast<std::size_t>(ints[1]);
      nn = static_cast<std::size_t>(ints[2]);
      npins = static_cast<std::size_t>(ints[3]);
      continue;
    }
    if (nets.size() < nn) {
      std::vector<VertexId> pins;
      for (std::size_t t = 1; t < ints.size(); ++t) {
        if (ints[t] < 0 || static_cast<std::size_t>(ints[t]) >= nv) {
          throw ParseError(ln, "pin " + std::to_string(ints[t]) + " out of range");
        }
        pins.push_back(static_cast<VertexId>(ints[t]));
      }
      pins_seen += pins.size();
      if (pins_seen > npins) throw ParseError(ln, "more pins than the header declares");
      nets.emplace_back(ints[0], std::move(pins));
    } else if (weights.size() < nv) {
      if (ints.size() != 2) throw ParseError(ln, "vertex line must be '<w_comp> <w_mem>'");
      weights.emplace_back(ints[0], ints[1]);
    } else {
      throw ParseError(ln, "unexpected data after the last vertex line");
    }
  }
  if (!header) throw ParseError(reader.line_no(), "missing header");
  if (nets.size() != nn) throw ParseError(reader.line_no(), "fewer net lines than declared");
  if (weights.size() != nv) throw ParseError(reader.line_no(), "fewer vertex lines than declared");
  if (pins_seen != npins) {
    throw ParseError(reader.line_no(), "header declares " + std::to_string(npins) + " pins, found " +
                                           std::to_string(pins_seen));
  }

  vlabels.resize(nv);
  nlabels.resize(nn);
  for (const auto& [ln, text_line] : pending_labels) {
    const bool is_vertex = text_line[1] == 'L';
    std::string_view rest = text_line.substr(3);
    const std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) throw ParseError(ln, "label line needs an index and a label");
    auto idx = parse_ints(rest.substr(0, sp), ln);
    auto& slots = is_vertex ? vlabels : nlabels;
    if (idx.size() != 1 || idx[0] < 0 || static_cast<std::size_t>(idx[0]) >= slots.size()) {
      throw ParseError(ln, "label index out of range");
    }
    if (slots[idx[0]]) throw ParseError(ln, "label given twice");
    try {
      slots[idx[0]] = Label::parse(rest.substr(sp + 1));
    } catch (const InputError& e) {
      throw ParseError(ln, e.what());
    }
  }

  HypergraphBuilder b;
  for (std::size_t v = 0; v < nv; ++v) {
    Label l = vlabels[v] ? *vlabels[v] : Label::coarse("v", {static_cast<Index>(v)});
    b.add_vertex(std::move(l), weights[v].first, weights[v].second);
  }
  for (std::size_t n = 0; n < nn; ++n) {
    Label l = nlabels[n] ? *nlabels[n] : Label::coarse("n", {static_cast<Index>(n)});
    b.add_net(std::move(l), nets[n].first, nets[n].second);
  }
  return std::move(b).build();
}

Hypergraph read_hgr_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_hgr(buf.str());
}

std::string write_partition(const Partition& part) {
  std::string out = "p " + std::to_string(part.p) + "\n";
  for (std::size_t v = 0; v < part.part.size(); ++v) {
    out += std::to_string(v) + " " + std::to_string(part.part[v]) + "\n";
  }
  return out;
}

Partition read_partition(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  Partition out;
  bool have_header = false;
  while (reader.next(line)) {
    const std::size_t ln = reader.line_no();
    if (blank(line) || line.front() == '%') continue;
    if (!have_header) {
      if (line.size() < 3 || line.substr(0, 2) != "p ") throw ParseError(ln, "expected 'p <parts>'");
      auto ints = parse_ints(line.substr(2), ln);
      if (ints.size() != 1 || ints[0] < 1) throw ParseError(ln, "part count must be positive");
      out.p = static_cast<PartId>(ints[0]);
      have_header = true;
      continue;
    }
    auto ints = parse_ints(line, ln);
    if (ints.size() != 2) throw ParseError(ln, "expected '<vertex> <part>'");
    if (ints[0] != static_cast<std::int64_t>(out.part.size())) {
      throw ParseError(ln, "vertices must be listed in order starting at 0");
    }
    if (ints[1] < 0 || ints[1] >= static_cast<std::int64_t>(out.p)) {
      throw ParseError(ln, "part " + std::to_string(ints[1]) + " out of range");
    }
    out.part.push_back(static_cast<PartId>(ints[1]));
  }
  if (!have_header) throw ParseError(reader.line_no(), "missing 'p <parts>' line");
  return out;
}

}  // namespace spgemm_hg

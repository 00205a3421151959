#include "spgemm_hg/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_set>

#include "spgemm_hg/error.hpp"

namespace spgemm_hg {

Label Label::coarse(std::string tag, std::initializer_list<Index> indices) {
  if (indices.size() > 3) throw InputError("coarse labels take at most three indices");
  Label l;
  l.kind = LabelKind::Coarse;
  l.tag = std::move(tag);
  l.arity = static_cast<std::uint8_t>(indices.size());
  std::copy(indices.begin(), indices.end(), l.idx.begin());
  return l;
}

std::string Label::to_string() const {
  std::string out;
  switch (kind) {
    case LabelKind::Mult: out = "m"; break;
    case LabelKind::NzA: out = "a"; break;
    case LabelKind::NzB: out = "b"; break;
    case LabelKind::NzC: out = "c"; break;
    case LabelKind::Coarse: out = "x." + tag; break;
  }
  for (std::uint8_t t = 0; t < arity; ++t) {
    out += ' ';
    out += std::to_string(idx[t]);
  }
  return out;
}

Label Label::parse(std::string_view text) {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ') ++pos;
    if (pos > start) toks.push_back(text.substr(start, pos - start));
  }
  if (toks.empty()) throw InputError("empty label");
  Label l;
  const std::string_view head = toks[0];
  std::size_t expected = 0;
  if (head == "m") {
    l.kind = LabelKind::Mult, expected = 3;
  } else if (head == "a") {
    l.kind = LabelKind::NzA, expected = 2;
  } else if (head == "b") {
    l.kind = LabelKind::NzB, expected = 2;
  } else if (head == "c") {
    l.kind = LabelKind::NzC, expected = 2;
  } else if (head.size() > 2 && head.substr(0, 2) == "x.") {
    l.kind = LabelKind::Coarse;
    l.tag = std::string(head.substr(2));
    expected = toks.size() - 1;
    if (expected > 3) throw InputError("label '" + std::string(text) + "' has too many indices");
  } else {
    throw InputError("unknown label kind in '" + std::string(text) + "'");
  }
  if (toks.size() - 1 != expected) {
    throw InputError("label '" + std::string(text) + "' has the wrong number of indices");
  }
  l.arity = static_cast<std::uint8_t>(expected);
  for (std::size_t t = 0; t < expected; ++t) {
    auto tok = toks[t + 1];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), l.idx[t]);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InputError("label '" + std::string(text) + "' has a non-integer index");
    }
  }
  return l;
}

Weight Hypergraph::total_cost() const {
  Weight total = 0;
  for (Weight c : cost_) total += c;
  return total;
}

bool operator==(const Hypergraph& x, const Hypergraph& y) {
  return x.vertex_labels_ == y.vertex_labels_ && x.comp_ == y.comp_ && x.mem_ == y.mem_ &&
         x.net_labels_ == y.net_labels_ && x.cost_ == y.cost_ &&
         x.net_offsets_ == y.net_offsets_ && x.pins_ == y.pins_;
}

VertexId HypergraphBuilder::add_vertex(Label label, Weight comp, Weight mem) {
  h_.vertex_labels_.push_back(std::move(label));
  h_.comp_.push_back(comp);
  h_.mem_.push_back(mem);
  return static_cast<VertexId>(h_.comp_.size() - 1);
}

NetId HypergraphBuilder::add_net(Label label, Weight cost, std::span<const VertexId> pins) {
  h_.net_labels_.push_back(std::move(label));
  h_.cost_.push_back(cost);
  h_.pins_.insert(h_.pins_.end(), pins.begin(), pins.end());
  h_.net_offsets_.push_back(h_.pins_.size());
  return static_cast<NetId>(h_.cost_.size() - 1);
}

Hypergraph HypergraphBuilder::build() && {
  Hypergraph h = std::move(h_);
  h_ = Hypergraph{};
  const std::size_t nv = h.comp_.size();
  h.vertex_offsets_.assign(nv + 1, 0);
  for (VertexId v : h.pins_) {
    if (v < nv) ++h.vertex_offsets_[v + 1];
  }
  for (std::size_t v = 0; v < nv; ++v) h.vertex_offsets_[v + 1] += h.vertex_offsets_[v];
  h.incidence_.assign(h.vertex_offsets_[nv], 0);
  std::vector<std::size_t> fill(h.vertex_offsets_.begin(), h.vertex_offsets_.end() - 1);
  for (NetId n = 0; n < h.cost_.size(); ++n) {
    for (std::size_t t = h.net_offsets_[n]; t < h.net_offsets_[n + 1]; ++t) {
      const VertexId v = h.pins_[t];
      if (v < nv) h.incidence_[fill[v]++] = n;
    }
  }
  h.total_comp_ = 0;
  h.total_mem_ = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    h.total_comp_ += h.comp_[v];
    h.total_mem_ += h.mem_[v];
  }
  return h;
}

std::vector<Violation> validate(const Hypergraph& h) {
  std::vector<Violation> out;
  const std::size_t nv = h.num_vertices();
  Weight comp = 0, mem = 0;
  std::unordered_set<std::string> seen;
  for (VertexId v = 0; v < nv; ++v) {
    const std::string where = "vertex " + std::to_string(v);
    if (h.comp_weight(v) < 0 || h.mem_weight(v) < 0) out.push_back({where, "negative weight"});
    comp += h.comp_weight(v);
    mem += h.mem_weight(v);
    if (!seen.insert(h.vertex_label(v).to_string()).second) {
      out.push_back({where, "duplicate label '" + h.vertex_label(v).to_string() + "'"});
    }
  }
  if (comp != h.total_comp() || mem != h.total_mem()) {
    out.push_back({"totals", "cached weight totals differ from recomputed sums"});
  }
  seen.clear();
  std::vector<NetId> last_seen(nv, static_cast<NetId>(-1));
  for (NetId n = 0; n < h.num_nets(); ++n) {
    const std::string where = "net " + std::to_string(n);
    if (h.net_cost(n) <= 0) out.push_back({where, "cost must be positive"});
    if (h.net_size(n) == 0) out.push_back({where, "net has no pins"});
    if (!seen.insert(h.net_label(n).to_string()).second) {
      out.push_back({where, "duplicate label '" + h.net_label(n).to_string() + "'"});
    }
    for (VertexId v : h.pins(n)) {
      if (v >= nv) {
        out.push_back({where, "pin " + std::to_string(v) + " out of range"});
      } else if (last_seen[v] == n) {
        out.push_back({where, "duplicate pin " + std::to_string(v)});
      } else {
        last_seen[v] = n;
      }
    }
  }
  return out;
}

bool structurally_equivalent(const Hypergraph& x, const Hypergraph& y, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (x.num_vertices() != y.num_vertices()) {
    return fail("vertex counts differ: " + std::to_string(x.num_vertices()) + " vs " +
                std::to_string(y.num_vertices()));
  }
  if (x.num_nets() != y.num_nets()) {
    return fail("net counts differ: " + std::to_string(x.num_nets()) + " vs " +
                std::to_string(y.num_nets()));
  }
  std::map<std::string, VertexId> y_by_label;
  for (VertexId v = 0; v < y.num_vertices(); ++v) y_by_label[y.vertex_label(v).to_string()] = v;
  std::vector<VertexId> to_y(x.num_vertices());
  for (VertexId v = 0; v < x.num_vertices(); ++v) {
    const std::string label = x.vertex_label(v).to_string();
    auto it = y_by_label.find(label);
    if (it == y_by_label.end()) return fail("vertex '" + label + "' missing");
    if (x.comp_weight(v) != y.comp_weight(it->second) || x.mem_weight(v) != y.mem_weight(it->second)) {
      return fail("vertex '" + label + "' weights differ");
    }
    to_y[v] = it->second;
  }
  auto net_keys = [](const Hypergraph& h, auto&& map_vertex) {
    std::vector<std::pair<std::vector<VertexId>, Weight>> keys;
    for (NetId n = 0; n < h.num_nets(); ++n) {
      std::vector<VertexId> pins;
      for (VertexId v : h.pins(n)) pins.push_back(map_vertex(v));
      std::sort(pins.begin(), pins.end());
      keys.emplace_back(std::move(pins), h.net_cost(n));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  auto xk = net_keys(x, [&](VertexId v) { return to_y[v]; });
  auto yk = net_keys(y, [](VertexId v) { return v; });
  for (std::size_t t = 0; t < xk.size(); ++t) {
    if (xk[t] != yk[t]) {
      std::string desc = "{";
      for (VertexId v : yk[t].first) desc += " " + y.vertex_label(v).to_string() + ";";
      return fail("net pin sets or costs differ near " + desc + " }");
    }
  }
  return true;
}

void check_partition(const Hypergraph& h, const Partition& part) {
  if (part.p < 1) throw InputError("partition must have at least one part");
  if (part.part.size() != h.num_vertices()) {
    throw InputError("partition covers " + std::to_string(part.part.size()) +
                     " vertices, hypergraph has " + std::to_string(h.num_vertices()));
  }
  for (std::size_t v = 0; v < part.part.size(); ++v) {
    if (part.part[v] >= part.p) {
      throw InputError("vertex " + std::to_string(v) + " assigned to part " +
                       std::to_string(part.part[v]) + " >= p");
    }
  }
}

}  // namespace spgemm_hg

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spgemm_hg/sparse.hpp"

namespace spgemm_hg {

using VertexId = std::uint32_t;
using NetId = std::uint32_t;
using PartId = std::uint32_t;
using Weight = std::int64_t;

enum class LabelKind : std::uint8_t { Mult, NzA, NzB, NzC, Coarse };

// Identifies a vertex or net by what it models: a multiplication v_ikj, a
// nonzero of A/B/C (or the net of that nonzero), or a model-specific coarse
// entity tagged with a short name and up to three indices.
//
// Text form: "m i k j", "a i k", "b k j", "c i j", "x.<tag> <idx>...".
struct Label {
  LabelKind kind = LabelKind::Coarse;
  std::uint8_t arity = 0;
  std::array<Index, 3> idx{};
  std::string tag;

  static Label mult(Index i, Index k, Index j) { return {LabelKind::Mult, 3, {i, k, j}, {}}; }
  static Label nz_a(Index i, Index k) { return {LabelKind::NzA, 2, {i, k, 0}, {}}; }
  static Label nz_b(Index k, Index j) { return {LabelKind::NzB, 2, {k, j, 0}, {}}; }
  static Label nz_c(Index i, Index j) { return {LabelKind::NzC, 2, {i, j, 0}, {}}; }
  static Label coarse(std::string tag, std::initializer_list<Index> indices);

  std::string to_string() const;
  // Throws InputError on malformed text.
  static Label parse(std::string_view text);

  friend bool operator==(const Label&, const Label&) = default;
};

class HypergraphBuilder;

// Vertices carry a computation and a memory weight; nets carry a cost and a
// pin list. Immutable once built. Pin order is construction order.
class Hypergraph {
 public:
  Hypergraph() = default;

  std::size_t num_vertices() const { return comp_.size(); }
  std::size_t num_nets() const { return cost_.size(); }
  std::size_t num_pins() const { return pins_.size(); }

  const Label& vertex_label(VertexId v) const { return vertex_labels_[v]; }
  Weight comp_weight(VertexId v) const { return comp_[v]; }
  Weight mem_weight(VertexId v) const { return mem_[v]; }

  const Label& net_label(NetId n) const { return net_labels_[n]; }
  Weight net_cost(NetId n) const { return cost_[n]; }
  std::span<const VertexId> pins(NetId n) const {
    return {pins_.data() + net_offsets_[n], pins_.data() + net_offsets_[n + 1]};
  }
  std::size_t net_size(NetId n) const { return net_offsets_[n + 1] - net_offsets_[n]; }

  std::span<const NetId> incident_nets(VertexId v) const {
    return {incidence_.data() + vertex_offsets_[v], incidence_.data() + vertex_offsets_[v + 1]};
  }

  Weight total_comp() const { return total_comp_; }
  Weight total_mem() const { return total_mem_; }
  Weight total_cost() const;

  friend bool operator==(const Hypergraph& x, const Hypergraph& y);

 private:
  friend class HypergraphBuilder;

  std::vector<Label> vertex_labels_;
  std::vector<Weight> comp_;
  std::vector<Weight> mem_;
  std::vector<Label> net_labels_;
  std::vector<Weight> cost_;
  std::vector<std::size_t> net_offsets_{0};
  std::vector<VertexId> pins_;
  std::vector<std::size_t> vertex_offsets_{0};
  std::vector<NetId> incidence_;
  Weight total_comp_ = 0;
  Weight total_mem_ = 0;
};

class HypergraphBuilder {
 public:
  VertexId add_vertex(Label label, Weight comp, Weight mem);
  NetId add_net(Label label, Weight cost, std::span<const VertexId> pins);
  NetId add_net(Label label, Weight cost, std::initializer_list<VertexId> pins) {
    return add_net(std::move(label), cost, std::span<const VertexId>(pins.begin(), pins.size()));
  }
  std::size_t num_vertices() const { return h_.comp_.size(); }

  // Does not validate; out-of-range pins are kept in the pin lists but left
  // out of the vertex incidence so that validate() can report them.
  Hypergraph build() &&;

 private:
  Hypergraph h_;
};

struct Violation {
  std::string where;
  std::string what;
};

// Reports every structural invariant violation; an empty list means valid.
std::vector<Violation> validate(const Hypergraph& h);

// Text format:
//   0 <num_vertices> <num_nets> <num_pins> 3
//   <cost> <pin> <pin> ...          one line per net
//   <w_comp> <w_mem>                one line per vertex
//   %L <index> <label>              vertex labels
//   %N <index> <label>              net labels
// Other '%' lines are comments and may appear anywhere.
std::string write_hgr(const Hypergraph& h);
Hypergraph read_hgr(std::string_view text);
Hypergraph read_hgr_file(const std::string& path);

// Same vertex labels with the same weights, and the same multiset of
// (pin-label set, cost) pairs over nets. Net labels and orders are ignored.
bool structurally_equivalent(const Hypergraph& x, const Hypergraph& y, std::string* why = nullptr);

struct Partition {
  PartId p = 1;
  std::vector<PartId> part;

  static Partition single(PartId p, std::size_t n) { return {p, std::vector<PartId>(n, 0)}; }
  friend bool operator==(const Partition&, const Partition&) = default;
};

// Throws InputError when the partition does not assign every vertex of h to
// a part in [0, p).
void check_partition(const Hypergraph& h, const Partition& part);

// "p <p>" followed by one "<vertex> <part>" line per vertex.
std::string write_partition(const Partition& part);
Partition read_partition(std::string_view text);

}  // namespace spgemm_hg

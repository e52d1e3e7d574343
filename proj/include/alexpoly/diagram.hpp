#pragma once

// Planar diagrams of arborescent tangles and their closures.
//
// Every crossing c owns four slots 4c+0 .. 4c+3 in counterclockwise order;
// the two strands through c are the slot pairs (0,2) and (1,3). A freshly
// built [1] has slot 0 at SW, 1 at SE, 2 at NE, 3 at NW with the NW-SE strand
// on top; [-1] has the SW-NE strand on top. Reflections keep the cyclic slot
// order counterclockwise by relabelling slots 1 and 3.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alexpoly/polyring.hpp"
#include "alexpoly/tangle.hpp"

namespace alexpoly {

enum Port { NW = 0, NE = 1, SW = 2, SE = 3 };

/// One node of the expanded composition tree. Twists and rational tangles are
/// expanded into binary compositions of single crossings; the node at the top
/// of each expansion remembers where it came from.
struct TreeNode {
  enum class Kind { Leaf, VComp, HComp, Sigma };
  Kind kind = Kind::Leaf;
  int sign = 0;                  // Leaf
  int left = -1, right = -1;     // children; Sigma uses left
  std::array<int, 4> ports{};    // slot ids indexed by Port
  int first_crossing = 0, end_crossing = 0;
  int first_node = 0;            // subtree occupies [first_node, own id]
  bool sigma_parity = false;     // odd number of Sigma proper ancestors

  // Top of an expanded [k] (horizontal) or [1/k] (vertical).
  int twist = 0;
  bool vertical = false;
  // Top of an expanded [[k1],...,[ks]]: the continued fraction and the ids of
  // the nodes representing [k1], ..., [ks].
  std::vector<int> cf;
  std::vector<int> blocks;

  bool is_twist() const { return twist != 0; }
  bool is_rational() const { return !cf.empty(); }
};

struct TangleDiagram {
  int num_crossings = 0;
  std::vector<int> link;       // slot -> slot, -1 for the four open ends
  std::vector<char> over_odd;  // per crossing: the (1,3) strand is on top
  std::vector<TreeNode> nodes;
  int root = -1;

  const TreeNode& node(int id) const { return nodes[static_cast<std::size_t>(id)]; }
};

/// Expands and glues. VComp glues the upper sw, se to the lower nw, ne;
/// HComp glues the left ne, se to the right nw, sw; Sigma reflects along the
/// NW-SE diagonal.
TangleDiagram build_diagram(const ExprPtr& e);

struct CrossingInfo {
  int in_under = 0;   // slot where the under strand enters
  int sign = 0;
  int over_arc = 0, in_arc = 0, out_arc = 0;  // Wirtinger arcs, 0-based
};

/// A closed, oriented diagram. Slot-level data is kept alongside the derived
/// Wirtinger arcs.
struct LinkDiagram {
  int num_crossings = 0;
  std::vector<int> link;          // complete slot pairing
  std::vector<char> over_odd;
  std::vector<std::int8_t> out;   // per slot: +1 if the strand leaves the crossing there
  std::vector<int> component;     // per slot, 1-based
  int num_components = 0;

  // Derived by finalize().
  std::vector<int> arc;           // per slot, 0-based Wirtinger arc
  std::vector<int> arc_component; // nu, 1-based
  std::vector<CrossingInfo> crossings;

  // Source tangle, if any.
  std::optional<TangleDiagram> tangle;
  Closure closure = Closure::D;

  int num_arcs() const { return static_cast<int>(arc_component.size()); }
  /// A component with no under-passage makes the link split.
  bool has_free_component() const { return num_arcs() > num_crossings; }
};

/// D joins nw-sw and ne-se; N joins nw-ne and sw-se. Components are traced
/// and numbered by their smallest slot; each is oriented so that it leaves a
/// crossing at that slot.
LinkDiagram close(const TangleDiagram& d, Closure kind);

/// Re-orients and renumbers components. Throws InvalidInput when the policy
/// does not fit the link.
LinkDiagram orient(LinkDiagram ld, const OrientationPolicy& policy);

/// build_diagram + close + orient.
LinkDiagram make_link(const LinkSpec& spec);

/// The same oriented link drawn as D(sigma(T)) when ld is N(T): the mirror
/// image, with components and orientation carried over strand by strand.
LinkDiagram denominator_form(const LinkDiagram& ld);

struct EndLabel {
  VarId component = 1;
  int eps = 1;  // +1 when the orientation points out of the subtangle
  Monomial phi() const { return Monomial::var(component, eps); }
  bool operator==(const EndLabel&) const = default;
};

using EndLabels = std::array<EndLabel, 4>;

/// Labels of the four ends of a tree node, in the frame of that node: the
/// orientation is reversed inside an odd number of reflections.
EndLabels end_labels(const LinkDiagram& ld, int node);

/// Parity type of a rational tangle p/q: 1 (p, q odd), 2 (q even), 3 (p even).
int classify_rational(long p, long q);

struct MontesinosClass {
  enum class Kind { KnotOdd, KnotEven, Link2, LinkN };
  Kind kind = Kind::KnotOdd;
  int n0 = 0, n1 = 0;
  int components = 1;
};

MontesinosClass montesinos_class(const std::vector<std::pair<long, long>>& fractions);
std::string to_string(const MontesinosClass& c);

/// Fractions p/q of the factors of a product [p1/q1]*...*[pr/qr], or nullopt
/// when e is not of that shape.
std::optional<std::vector<std::pair<long, long>>> montesinos_factors(const ExprPtr& e);

/// Node ids of the factors of a product in the expanded tree.
std::vector<int> factor_nodes(const TangleDiagram& d);

/// PD text: one `X[a,b,c,d]` line per crossing, edges numbered along each
/// component starting from the incoming under edge counterclockwise, then
/// `components: ...` (component of each edge) and `signs: ...`.
std::string to_pd(const LinkDiagram& ld);

/// Inverse of to_pd. The orientation is read from the signs trailer.
LinkDiagram from_pd(const std::string& text);

}  // namespace alexpoly

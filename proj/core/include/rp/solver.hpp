// The Newton-Puiseux tree over a Riccati operator: iterated edge selection,
// branching on the nonzero roots of edge characteristic polynomials,
// substitution, extension adjunction, and classification of terminating
// branches, plus the separation-exponent certificates telling any two
// distinct solution branches apart.
//
// Tree construction rules:
//   * candidate edges of a node are the finite-inclination edges with
//     mu strictly below the node's own mu (all finite edges at the root);
//   * every nonzero root of an edge characteristic polynomial opens a child
//     (conjugate roots enumerated over one shared extension tower);
//   * g_0 == 0 marks the accumulated partial sum as an exact solution,
//     recorded as a child with mu = -infinity;
//   * a branch whose next admissible mu would sink below the exponent floor,
//     or which has used up max_terms, ends as a truncated solution.
//
// Sibling subtrees are independent (towers are copy-on-extend); expansion is
// a deterministic depth-first walk.
#ifndef RP_SOLVER_HPP
#define RP_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "rp/polygon.hpp"

namespace rp {

// Inclination extended with the two ideal values used by the tree.
struct ExtMu {
    enum class Kind { neg_inf, finite, pos_inf };
    Kind kind = Kind::finite;
    Rational value; // meaningful only when finite

    static ExtMu pos_inf() { return {Kind::pos_inf, 0}; }
    static ExtMu neg_inf() { return {Kind::neg_inf, 0}; }
    static ExtMu finite(Rational v) { return {Kind::finite, std::move(v)}; }
    bool is_finite() const { return kind == Kind::finite; }
    std::string to_string() const;
};

struct TreeNode {
    int id = 0;
    int parent = -1;
    ExtensionTower tower;
    FieldElement c;            // term coefficient (zero at the root / -inf nodes)
    ExtMu mu;                  // +inf at the root, -inf on exact markers
    int multiplicity = 1;      // multiplicity of c as a characteristic root
    int factor_ordinal = -1;   // provenance: which irreducible factor of the edge
    int factor_degree = 0;     //   characteristic polynomial, and its degree
    int edge_index = -1;       //   index of the edge in the parent's polygon
    RiccatiOperator op;        // operator after all substitutions down to here
    PuiseuxPoly partial_sum;   // accumulated exact partial sum
    std::vector<int> children;

    enum class Status { internal, exact, truncated, dead };
    Status status = Status::internal;
    DegValue residual_degree;  // deg_inf of g_0 at termination
    int depth_terms = 0;       // finite terms accumulated on the path
};

struct SolutionBranch {
    enum class Status { exact, truncated };
    TruncatedSeries series;
    ExtensionTower tower;
    Status status = Status::exact;
    Integer conjugacy_degree = 1; // tower degree over Q
    int leaf_id = 0;
    DegValue residual_degree;
};

struct SeparationCertificate {
    int gamma = 0;
    Rational mu12;
    FieldElement xi1, xi2;
    int witness_node = 0; // deepest common ancestor
};

struct ExpandOptions {
    Rational floor = Rational(-4);
    int max_terms = 16;
    int ext_cap = kDefaultExtensionCap;
};

struct Tree {
    std::vector<TreeNode> nodes; // arena; nodes[0] is the root
    std::vector<SolutionBranch> branches;
    std::vector<int> dead_leaves;
    RiccatiOperator root_op;
    int order = 0;
    ExpandOptions options;

    const TreeNode& node(int id) const { return nodes[static_cast<std::size_t>(id)]; }
};

// Depth-first expansion; deterministic for fixed inputs. Extension-depth
// exhaustion during root finding propagates as depth_cap_error annotated
// with the branch context.
Tree expand_tree(const LinearODE& ode, const ExpandOptions& options = {});

// First-level solution count: multiplicity times factor degree, summed once
// per irreducible characteristic factor, plus the lowest marked ordinate
// (the solutions absorbed by the infinite edge). Must equal the ODE order;
// throws internal_error otherwise.
int count_check(const Tree& tree);

// Separation data for two distinct branches: gamma = deg H - 1 at the edge
// where the branches diverge, mu12 the abscissa of that edge at ordinate
// gamma, and xi_i = gamma! [C^gamma] H_i from the diverged operators. The
// certificate satisfies deg_inf(R^(gamma)(psi_i) - xi_i x^mu12) < mu12.
SeparationCertificate separate(const Tree& tree, int branch1, int branch2);

// Recomputes both certificate inequalities from scratch.
bool check_certificate(const Tree& tree, const SeparationCertificate& cert, int branch1,
                       int branch2);

std::string to_dot(const Tree& tree);

} // namespace rp

#endif

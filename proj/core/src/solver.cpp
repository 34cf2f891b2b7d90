#include "rp/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rp/errors.hpp"

namespace rp {

std::string ExtMu::to_string() const {
    switch (kind) {
        case Kind::pos_inf: return "+inf";
        case Kind::neg_inf: return "-inf";
        default: return rp::to_string(value);
    }
}

namespace {

struct Expander {
    Tree& tree;
    const ExpandOptions& opts;

    int add_node(TreeNode node) {
        node.id = static_cast<int>(tree.nodes.size());
        if (node.parent >= 0)
            tree.nodes[static_cast<std::size_t>(node.parent)].children.push_back(node.id);
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    void emit_exact(int at) {
        TreeNode& host = tree.nodes[static_cast<std::size_t>(at)];
        TreeNode marker;
        marker.parent = at;
        marker.tower = host.tower;
        marker.c = FieldElement::zero(host.tower);
        marker.mu = ExtMu::neg_inf();
        marker.op = host.op;
        marker.partial_sum = host.partial_sum;
        marker.status = TreeNode::Status::exact;
        marker.depth_terms = host.depth_terms;
        int id = add_node(std::move(marker));

        SolutionBranch b;
        b.series = TruncatedSeries::exact(tree.nodes[static_cast<std::size_t>(at)].partial_sum);
        b.tower = tree.nodes[static_cast<std::size_t>(at)].tower;
        b.status = SolutionBranch::Status::exact;
        b.conjugacy_degree = b.tower.degree_over_q();
        b.leaf_id = id;
        b.residual_degree = std::nullopt; // residual is identically zero
        tree.branches.push_back(std::move(b));
    }

    void emit_truncated(int at) {
        TreeNode& host = tree.nodes[static_cast<std::size_t>(at)];
        host.status = TreeNode::Status::truncated;
        host.residual_degree = host.op.g(0).deg_inf();

        SolutionBranch b;
        b.series = TruncatedSeries::truncated(host.partial_sum, opts.floor);
        b.tower = host.tower;
        b.status = SolutionBranch::Status::truncated;
        b.conjugacy_degree = b.tower.degree_over_q();
        b.leaf_id = at;
        b.residual_degree = host.residual_degree;
        tree.branches.push_back(std::move(b));
    }

    void expand(int at) {
        // Work on a copy of the invariants we need; add_node may reallocate.
        const RiccatiOperator op = tree.nodes[static_cast<std::size_t>(at)].op;
        const ExtMu node_mu = tree.nodes[static_cast<std::size_t>(at)].mu;
        const int depth_terms = tree.nodes[static_cast<std::size_t>(at)].depth_terms;

        NewtonPolygon polygon = compute_polygon(op);
        const bool solved_here = op.g(0).is_zero();
        if (solved_here) emit_exact(at);

        std::vector<std::pair<int, Edge>> candidates;
        for (std::size_t k = 0; k < polygon.edges.size(); ++k) {
            const Edge& e = polygon.edges[k];
            if (node_mu.is_finite() && !(e.inclination < node_mu.value)) continue;
            candidates.emplace_back(static_cast<int>(k), e);
        }

        if (candidates.empty()) {
            if (!solved_here) {
                tree.nodes[static_cast<std::size_t>(at)].status = TreeNode::Status::dead;
                tree.nodes[static_cast<std::size_t>(at)].residual_degree = op.g(0).deg_inf();
                tree.dead_leaves.push_back(at);
            }
            return;
        }

        std::vector<std::pair<int, Edge>> live;
        bool dropped = false;
        for (auto& [k, e] : candidates) {
            if (e.inclination < opts.floor || depth_terms >= opts.max_terms)
                dropped = true;
            else
                live.emplace_back(k, e);
        }
        if (dropped && !solved_here) emit_truncated(at);

        for (const auto& [edge_index, edge] : candidates) {
            if (std::find_if(live.begin(), live.end(), [&](const auto& le) {
                    return le.first == edge_index;
                }) == live.end())
                continue;
            CharPoly cp = characteristic(op, edge);
            RootSet roots;
            try {
                roots = roots_with_adjunction(cp.h, op.tower(), opts.ext_cap);
            } catch (const depth_cap_error& err) {
                throw depth_cap_error(
                    std::string(err.what()) + " while branching below partial sum " +
                        tree.nodes[static_cast<std::size_t>(at)].partial_sum.to_string(),
                    err.unsplit);
            }
            if (roots.capped) {
                const Poly& stuck = roots.unsplit.front();
                throw depth_cap_error(
                    "extension depth cap reached for characteristic factor " +
                        stuck.to_string() + " below partial sum " +
                        tree.nodes[static_cast<std::size_t>(at)].partial_sum.to_string(),
                    stuck);
            }
            for (const RootSet::Entry& entry : roots.entries) {
                if (entry.root.is_zero()) continue; // zero roots never branch
                TreeNode child;
                child.parent = at;
                child.tower = entry.tower;
                child.c = entry.root;
                child.mu = ExtMu::finite(edge.inclination);
                child.multiplicity = entry.multiplicity;
                child.factor_ordinal = entry.factor_ordinal;
                child.factor_degree = entry.factor_degree;
                child.edge_index = edge_index;
                child.op = shift_substitute(op.embed(entry.tower), entry.root,
                                            edge.inclination);
                child.partial_sum =
                    tree.nodes[static_cast<std::size_t>(at)].partial_sum.embed(entry.tower) +
                    PuiseuxPoly::term(entry.root, edge.inclination);
                child.depth_terms = depth_terms + 1;
                int id = add_node(std::move(child));
                expand(id);
            }
        }
    }
};

} // namespace

Tree expand_tree(const LinearODE& ode, const ExpandOptions& options) {
    Tree tree;
    tree.options = options;
    tree.root_op = from_linear_ode(ode);
    tree.order = ode.order();

    TreeNode root;
    root.parent = -1;
    root.tower = tree.root_op.tower();
    root.c = FieldElement::zero(root.tower);
    root.mu = ExtMu::pos_inf();
    root.op = tree.root_op;
    root.partial_sum = PuiseuxPoly::zero(root.tower);
    tree.nodes.push_back(std::move(root));

    Expander expander{tree, tree.options};
    expander.expand(0);
    return tree;
}

int count_check(const Tree& tree) {
    NewtonPolygon polygon = compute_polygon(tree.root_op);
    int total = polygon.min_ordinate();
    std::set<std::pair<int, int>> seen; // (edge_index, factor_ordinal)
    for (int child_id : tree.node(0).children) {
        const TreeNode& child = tree.node(child_id);
        if (!child.mu.is_finite()) continue;
        if (seen.insert({child.edge_index, child.factor_ordinal}).second)
            total += child.multiplicity * child.factor_degree;
    }
    if (total != tree.order)
        throw internal_error("first-level branch count " + std::to_string(total) +
                             " does not match the order " + std::to_string(tree.order));
    return total;
}

namespace {

std::vector<int> path_to_root(const Tree& tree, int id) {
    std::vector<int> path;
    for (int cur = id; cur >= 0; cur = tree.node(cur).parent) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

// [C^gamma] of the characteristic polynomial at the child's side of the
// divergence: the parallel edge of the child polygon sharing the upper
// vertex when the child branched at inclination eps, the unchanged parent
// characteristic otherwise.
FieldElement gamma_coefficient(const Tree& tree, const CharPoly& parent_cp, int gamma,
                               std::optional<int> child_id, const Rational& eps) {
    if (!child_id) return parent_cp.h.coeff(gamma);
    const TreeNode& child = tree.node(*child_id);
    if (!child.mu.is_finite() || child.mu.value < eps)
        return parent_cp.h.coeff(gamma);
    NewtonPolygon np = compute_polygon(child.op);
    for (const Edge& e : np.edges) {
        if (e.inclination != eps) continue;
        if (!(e.upper == parent_cp.edge.upper)) continue;
        return characteristic(child.op, e).h.coeff(gamma);
    }
    throw internal_error("expected parallel edge missing after substitution");
}

} // namespace

SeparationCertificate separate(const Tree& tree, int branch1, int branch2) {
    if (branch1 == branch2) throw domain_error("separation of a branch from itself");
    const SolutionBranch& b1 = tree.branches[static_cast<std::size_t>(branch1)];
    const SolutionBranch& b2 = tree.branches[static_cast<std::size_t>(branch2)];
    if (b1.leaf_id == b2.leaf_id) throw domain_error("branches share their leaf");

    std::vector<int> p1 = path_to_root(tree, b1.leaf_id);
    std::vector<int> p2 = path_to_root(tree, b2.leaf_id);
    std::size_t common = 0;
    while (common < p1.size() && common < p2.size() && p1[common] == p2[common]) ++common;
    const int tau = p1[common - 1];

    // A path may stop at the common ancestor (its leaf is tau itself); that
    // side behaves like a mu = -inf continuation with unchanged operator.
    std::optional<int> t1, t2;
    if (common < p1.size()) t1 = p1[common];
    if (common < p2.size()) t2 = p2[common];

    auto mu_of = [&](const std::optional<int>& id) {
        return id ? tree.node(*id).mu : ExtMu::neg_inf();
    };
    ExtMu m1 = mu_of(t1), m2 = mu_of(t2);
    if (!m1.is_finite() && !m2.is_finite())
        throw domain_error("branches do not diverge at a finite inclination");
    Rational eps;
    if (!m1.is_finite())
        eps = m2.value;
    else if (!m2.is_finite())
        eps = m1.value;
    else
        eps = std::max(m1.value, m2.value);

    const TreeNode& anchor = tree.node(tau);
    NewtonPolygon np = compute_polygon(anchor.op);
    const Edge* edge = nullptr;
    for (const Edge& e : np.edges)
        if (e.inclination == eps) edge = &e;
    if (!edge) throw internal_error("divergence inclination is not an edge of the ancestor");

    CharPoly cp = characteristic(anchor.op, *edge);
    const int gamma = cp.h.degree() - 1;
    if (gamma < 1) throw internal_error("separation exponent would vanish");

    SeparationCertificate cert;
    cert.gamma = gamma;
    cert.mu12 = edge->abscissa_at(gamma);
    cert.witness_node = tau;
    FieldElement gfac = FieldElement(Rational(factorial(gamma)));
    cert.xi1 = gfac * gamma_coefficient(tree, cp, gamma, t1, eps);
    cert.xi2 = gfac * gamma_coefficient(tree, cp, gamma, t2, eps);

    // xi1 != xi2: comparable towers are compared directly; diverging
    // adjunctions stem from coprime irreducible factors, whose roots (and
    // their affine images xi) can never coincide.
    if (is_prefix(cert.xi1.tower(), cert.xi2.tower()) ||
        is_prefix(cert.xi2.tower(), cert.xi1.tower())) {
        if (cert.xi1 == cert.xi2)
            throw internal_error("separation produced equal leading data");
    }
    return cert;
}

bool check_certificate(const Tree& tree, const SeparationCertificate& cert, int branch1,
                       int branch2) {
    RiccatiOperator rg = derivative_k(tree.root_op, cert.gamma);
    auto side = [&](int branch, const FieldElement& xi) {
        const SolutionBranch& b = tree.branches[static_cast<std::size_t>(branch)];
        const ExtensionTower& t = common_tower(b.series.tower(), xi.tower());
        PuiseuxPoly value = evaluate(rg.embed(t), b.series.body().embed(t));
        PuiseuxPoly diff = value - PuiseuxPoly::term(xi.embed(t), cert.mu12);
        return deg_less(diff.deg_inf(), DegValue(cert.mu12));
    };
    return side(branch1, cert.xi1) && side(branch2, cert.xi2);
}

std::string to_dot(const Tree& tree) {
    std::ostringstream out;
    out << "digraph newton_puiseux {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const TreeNode& n : tree.nodes) {
        std::string label;
        if (n.parent < 0) {
            label = "R";
        } else if (!n.mu.is_finite()) {
            label = "exact";
        } else {
            label = n.c.to_string() + "*x^(" + rp::to_string(n.mu.value) + ")";
            label += " [m=" + std::to_string(n.multiplicity) +
                     ", deg=" + n.tower.degree_over_q().get_str() + "]";
        }
        switch (n.status) {
            case TreeNode::Status::exact: label += "\\nexact"; break;
            case TreeNode::Status::truncated: label += "\\ntruncated"; break;
            case TreeNode::Status::dead: label += "\\ndead"; break;
            default: break;
        }
        out << "  n" << n.id << " [label=\"" << label << "\"];\n";
    }
    for (const TreeNode& n : tree.nodes)
        if (n.parent >= 0) out << "  n" << n.parent << " -> n" << n.id << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace rp

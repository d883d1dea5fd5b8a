#include "crackgen/fem.hpp"

#include <algorithm>
#include <cmath>

#include "crackgen/pcg.hpp"

namespace crackgen {

void BoundaryConditions::set_dirichlet_profile(BoundaryTag tag, Profile profile) {
    conditions_[tag] = BoundaryCondition::dirichlet(0.0);
    profiles_[tag] = std::move(profile);
}

BoundaryCondition BoundaryConditions::get(BoundaryTag tag) const {
    const auto it = conditions_.find(tag);
    return it == conditions_.end() ? BoundaryCondition::insulated() : it->second;
}

double BoundaryConditions::dirichlet_value(BoundaryTag tag, const Point2& at) const {
    const auto it = profiles_.find(tag);
    return it != profiles_.end() ? it->second(at) : get(tag).value;
}

bool BoundaryConditions::has_dirichlet() const {
    return std::any_of(conditions_.begin(), conditions_.end(),
                       [](const auto& kv) { return kv.second.kind == BcKind::Dirichlet; });
}

BoundaryConditions boundary_conditions(const ScenarioSpec& scenario) {
    BoundaryConditions bcs;
    for (const EdgeBC& e : scenario.edge_bcs) bcs.set(edge_tag(e.edge), e.bc);
    for (std::size_t k = 0; k < scenario.cracks.size(); ++k)
        bcs.set(crack_tag(static_cast<int>(k)), scenario.crack_bc);
    return bcs;
}

namespace {

template <typename ElementFn>
SparseMatrix assemble_elements(const Mesh& mesh, ElementFn&& element) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(9 * mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const Eigen::Matrix3d ke = element(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) triplets.emplace_back(t[i], t[j], ke(i, j));
    }
    const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
    SparseMatrix m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

int default_max_iters(const SolverConfig& cfg, Eigen::Index unknowns) {
    return cfg.max_iters > 0 ? cfg.max_iters : static_cast<int>(std::max<Eigen::Index>(10 * unknowns, 100));
}

Vector solve_reduced(const LinearSystem& system, const Vector& guess, const SolverConfig& cfg, SolveStats& stats) {
    Vector x = guess;
    const auto result = pcg(system.matrix, system.rhs, x, cfg.rel_tol, default_max_iters(cfg, system.rhs.size()));
    stats.iterations = result.iterations;
    stats.residual = result.residual;
    if (!result.converged) throw NoConvergence(result.iterations, result.residual);
    return x;
}

Vector expand(const LinearSystem& system, const Vector& free_values) {
    Vector full(system.node_count);
    for (const auto& [node, value] : system.dirichlet_values) full[node] = value;
    for (std::size_t d = 0; d < system.free_nodes.size(); ++d)
        full[system.free_nodes[d]] = free_values[static_cast<Eigen::Index>(d)];
    return full;
}

Vector restrict_to_free(const LinearSystem& system, const Vector& full) {
    Vector x(static_cast<Eigen::Index>(system.free_nodes.size()));
    for (std::size_t d = 0; d < system.free_nodes.size(); ++d) x[static_cast<Eigen::Index>(d)] = full[system.free_nodes[d]];
    return x;
}

}  // namespace

SparseMatrix stiffness_matrix(const Mesh& mesh, double conductivity) {
    return assemble_elements(mesh, [conductivity](const Point2& a, const Point2& b, const Point2& c) {
        return element_stiffness<double>(a, b, c, conductivity);
    });
}

SparseMatrix mass_matrix(const Mesh& mesh, double capacity) {
    return assemble_elements(mesh, [capacity](const Point2& a, const Point2& b, const Point2& c) {
        return element_mass<double>(a, b, c, capacity);
    });
}

Vector boundary_load(const Mesh& mesh, const BoundaryConditions& bcs) {
    Vector f = Vector::Zero(static_cast<Eigen::Index>(mesh.nodes.size()));
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        const BoundaryCondition bc = bcs.get(e.tag);
        if (bc.kind != BcKind::Flux) continue;
        const double half = 0.5 * bc.value * (mesh.nodes[e.nodes[1]] - mesh.nodes[e.nodes[0]]).norm();
        f[e.nodes[0]] += half;
        f[e.nodes[1]] += half;
    }
    return f;
}

std::map<int, double> dirichlet_nodes(const Mesh& mesh, const BoundaryConditions& bcs) {
    std::map<int, std::pair<double, int>> acc;
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        if (bcs.get(e.tag).kind != BcKind::Dirichlet) continue;
        for (int node : e.nodes) {
            auto& [sum, count] = acc[node];
            sum += bcs.dirichlet_value(e.tag, mesh.nodes[node]);
            ++count;
        }
    }
    std::map<int, double> values;
    for (const auto& [node, sc] : acc) values[node] = sc.first / sc.second;
    return values;
}

LinearSystem reduce(const SparseMatrix& full, const Vector& load, const std::map<int, double>& dirichlet) {
    LinearSystem sys;
    sys.node_count = static_cast<int>(full.rows());
    sys.dirichlet_values = dirichlet;
    std::vector<int> dof(static_cast<std::size_t>(sys.node_count), -1);
    for (int node = 0; node < sys.node_count; ++node) {
        if (dirichlet.count(node)) continue;
        dof[static_cast<std::size_t>(node)] = static_cast<int>(sys.free_nodes.size());
        sys.free_nodes.push_back(node);
    }
    const auto nfree = static_cast<Eigen::Index>(sys.free_nodes.size());
    sys.rhs = Vector::Zero(nfree);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(full.nonZeros()));
    for (int col = 0; col < full.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
            const int row = static_cast<int>(it.row());
            const int r = dof[static_cast<std::size_t>(row)];
            if (r < 0) continue;
            const int c = dof[static_cast<std::size_t>(col)];
            if (c >= 0)
                triplets.emplace_back(r, c, it.value());
            else
                sys.rhs[r] -= it.value() * dirichlet.at(col);
        }
    }
    for (Eigen::Index d = 0; d < nfree; ++d) sys.rhs[d] += load[sys.free_nodes[static_cast<std::size_t>(d)]];
    sys.matrix.resize(nfree, nfree);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

LinearSystem assemble(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs) {
    validate(material);
    const auto dirichlet = dirichlet_nodes(mesh, bcs);
    if (dirichlet.empty()) throw IllPosed("no Dirichlet node: the steady problem is singular");
    return reduce(stiffness_matrix(mesh, material.conductivity), boundary_load(mesh, bcs), dirichlet);
}

TemperatureField solve_steady(const LinearSystem& system, const SolverConfig& cfg) {
    if (!(cfg.rel_tol > 0.0)) throw DomainError("solver rel_tol must be > 0");
    TemperatureField field;
    double mean = 0.0;
    for (const auto& [node, value] : system.dirichlet_values) mean += value;
    if (!system.dirichlet_values.empty()) mean /= static_cast<double>(system.dirichlet_values.size());
    const Vector x = solve_reduced(system, Vector::Constant(system.rhs.size(), mean), cfg, field.stats);
    field.values = expand(system, x);
    return field;
}

TemperatureField solve_transient(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs,
                                 const Vector& initial, double dt, int steps, const SolverConfig& cfg) {
    validate(material);
    if (!(dt > 0.0)) throw DomainError("transient dt must be > 0");
    if (steps < 1) throw DomainError("transient steps must be >= 1");
    const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
    if (initial.size() != n) throw DomainError("initial field size does not match the mesh");
    const auto dirichlet = dirichlet_nodes(mesh, bcs);
    if (dirichlet.empty()) throw IllPosed("no Dirichlet node");

    const SparseMatrix mass = mass_matrix(mesh, material.density * material.specific_heat);
    const SparseMatrix stiff = stiffness_matrix(mesh, material.conductivity);
    const SparseMatrix lhs = mass + dt * stiff;
    const Vector load = dt * boundary_load(mesh, bcs);

    TemperatureField field;
    field.values = initial;
    for (const auto& [node, value] : dirichlet) field.values[node] = value;

    // The operator is fixed; only the right-hand side changes between steps.
    LinearSystem system = reduce(lhs, load, dirichlet);
    const LinearSystem base = system;
    for (int step = 0; step < steps; ++step) {
        const Vector mt = mass * field.values;
        system.rhs = base.rhs + restrict_to_free(base, mt);
        SolveStats stats;
        const Vector x = solve_reduced(system, restrict_to_free(base, field.values), cfg, stats);
        field.values = expand(base, x);
        field.stats.iterations += stats.iterations;
        field.stats.residual = std::max(field.stats.residual, stats.residual);
    }
    return field;
}

TemperatureField solve_transient(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs,
                                 double initial_temperature, double dt, int steps, const SolverConfig& cfg) {
    return solve_transient(mesh, material, bcs,
                           Vector::Constant(static_cast<Eigen::Index>(mesh.nodes.size()), initial_temperature), dt,
                           steps, cfg);
}

SolveMode default_transient_mode(const PlateSpec& plate, const MaterialProps& material) {
    SolveMode mode;
    mode.kind = SolveMode::Kind::Transient;
    mode.t_end = 5.0 * diffusion_time_constant(plate, material);
    mode.dt = mode.t_end / 20.0;
    return mode;
}

TemperatureField solve_scenario(const ScenarioSpec& scenario, const Mesh& mesh, const SolverConfig& cfg) {
    const BoundaryConditions bcs = boundary_conditions(scenario);
    if (scenario.mode.transient())
        return solve_transient(mesh, scenario.material, bcs, scenario.mode.initial_temperature, scenario.mode.dt,
                               scenario.mode.steps(), cfg);
    return solve_steady(assemble(mesh, scenario.material, bcs), cfg);
}

FluxReport boundary_flux_balance(const Mesh& mesh, const TemperatureField& field, const MaterialProps& material,
                                 const BoundaryConditions& bcs) {
    const SparseMatrix stiff = stiffness_matrix(mesh, material.conductivity);
    const Vector reaction = stiff * field.values;  // net heat inflow needed at each node

    struct NodeShare {
        std::map<BoundaryTag, double> imposed;    // flux load per group
        std::map<BoundaryTag, double> dirichlet;  // Dirichlet edge length per group
        std::map<BoundaryTag, double> other;      // remaining edge length per group
        bool is_dirichlet = false;
    };
    std::map<int, NodeShare> shares;
    FluxReport report;
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        const BoundaryCondition bc = bcs.get(e.tag);
        const double half = 0.5 * (mesh.nodes[e.nodes[1]] - mesh.nodes[e.nodes[0]]).norm();
        report.per_tag.try_emplace(e.tag, 0.0);
        for (int node : e.nodes) {
            NodeShare& s = shares[node];
            if (bc.kind == BcKind::Dirichlet) {
                s.dirichlet[e.tag] += half;
                s.is_dirichlet = true;
            } else {
                s.other[e.tag] += half;
                if (bc.kind == BcKind::Flux) s.imposed[e.tag] += bc.value * half;
            }
        }
    }

    for (const auto& [node, s] : shares) {
        const double r = reaction[node];
        if (s.is_dirichlet) {
            double rest = r;
            for (const auto& [tag, q] : s.imposed) {
                report.per_tag[tag] += q;
                rest -= q;
            }
            double total = 0.0;
            for (const auto& [tag, len] : s.dirichlet) total += len;
            for (const auto& [tag, len] : s.dirichlet) report.per_tag[tag] += rest * len / total;
            continue;
        }
        double imposed_total = 0.0;
        for (const auto& [tag, q] : s.imposed) imposed_total += q;
        if (imposed_total != 0.0) {
            for (const auto& [tag, q] : s.imposed) report.per_tag[tag] += r * q / imposed_total;
        } else {
            double total = 0.0;
            for (const auto& [tag, len] : s.other) total += len;
            for (const auto& [tag, len] : s.other) report.per_tag[tag] += r * len / total;
        }
    }

    double sum = 0.0, largest = 0.0;
    for (const auto& [tag, f] : report.per_tag) {
        sum += f;
        largest = std::max(largest, std::abs(f));
    }
    // Below this magnitude the group fluxes are rounding noise (e.g. a uniform field).
    const double floor = 1e-8 * material.conductivity * std::max(1.0, field.values.cwiseAbs().maxCoeff());
    report.imbalance = largest > floor ? std::abs(sum) / largest : 0.0;
    return report;
}

}  // namespace crackgen

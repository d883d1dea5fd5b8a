#pragma once

#include <functional>
#include <map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "crackgen/boundary.hpp"
#include "crackgen/geometry.hpp"
#include "crackgen/mesh.hpp"
#include "crackgen/sampler.hpp"

namespace crackgen {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Per-tag boundary data. Untagged groups are insulated. A Dirichlet group can
/// carry a spatial profile that replaces its constant value.
class BoundaryConditions {
public:
    using Profile = std::function<double(const Point2&)>;

    void set(BoundaryTag tag, BoundaryCondition bc) { conditions_[tag] = bc; }
    void set_dirichlet_profile(BoundaryTag tag, Profile profile);

    BoundaryCondition get(BoundaryTag tag) const;
    double dirichlet_value(BoundaryTag tag, const Point2& at) const;
    bool has_dirichlet() const;

private:
    std::map<BoundaryTag, BoundaryCondition> conditions_;
    std::map<BoundaryTag, Profile> profiles_;
};

BoundaryConditions boundary_conditions(const ScenarioSpec& scenario);

/// P1 stiffness of one triangle for conductivity k.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> element_stiffness(const Vec2<Scalar>& a, const Vec2<Scalar>& b, const Vec2<Scalar>& c,
                                              Scalar k) {
    Eigen::Matrix<Scalar, 2, 3> grad;  // columns: edge vectors opposite each vertex, rotated
    grad << b.y() - c.y(), c.y() - a.y(), a.y() - b.y(),
            c.x() - b.x(), a.x() - c.x(), b.x() - a.x();
    const Scalar twice_area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    return (k / (Scalar(2) * twice_area)) * (grad.transpose() * grad);
}

/// Consistent P1 mass matrix scaled by rho*c.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> element_mass(const Vec2<Scalar>& a, const Vec2<Scalar>& b, const Vec2<Scalar>& c,
                                         Scalar capacity) {
    const Scalar area = ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())) / Scalar(2);
    Eigen::Matrix<Scalar, 3, 3> m = Eigen::Matrix<Scalar, 3, 3>::Constant(Scalar(1));
    m.diagonal().setConstant(Scalar(2));
    return (capacity * area / Scalar(12)) * m;
}

SparseMatrix stiffness_matrix(const Mesh& mesh, double conductivity);
SparseMatrix mass_matrix(const Mesh& mesh, double capacity);

/// Nodal loads from flux edges (q L / 2 per endpoint).
Vector boundary_load(const Mesh& mesh, const BoundaryConditions& bcs);

/// Node -> prescribed temperature. Nodes shared by Dirichlet groups take the mean.
std::map<int, double> dirichlet_nodes(const Mesh& mesh, const BoundaryConditions& bcs);

struct LinearSystem {
    SparseMatrix matrix;  // over free nodes
    Vector rhs;
    std::map<int, double> dirichlet_values;
    std::vector<int> free_nodes;  // dof -> node
    int node_count = 0;
};

LinearSystem assemble(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs);

/// Eliminates Dirichlet nodes from a full operator and load.
LinearSystem reduce(const SparseMatrix& full, const Vector& load, const std::map<int, double>& dirichlet);

struct SolverConfig {
    double rel_tol = 1e-10;
    int max_iters = 0;  // 0 means 10 * unknowns
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
};

struct TemperatureField {
    Vector values;  // one per mesh node
    SolveStats stats;
};

TemperatureField solve_steady(const LinearSystem& system, const SolverConfig& cfg = {});

TemperatureField solve_transient(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs,
                                 const Vector& initial, double dt, int steps, const SolverConfig& cfg = {});

TemperatureField solve_transient(const Mesh& mesh, const MaterialProps& material, const BoundaryConditions& bcs,
                                 double initial_temperature, double dt, int steps, const SolverConfig& cfg = {});

/// Five diffusion time constants in 20 implicit steps.
SolveMode default_transient_mode(const PlateSpec& plate, const MaterialProps& material);

/// Steady or transient solve of a scenario on a prepared mesh.
TemperatureField solve_scenario(const ScenarioSpec& scenario, const Mesh& mesh, const SolverConfig& cfg = {});

struct FluxReport {
    std::map<BoundaryTag, double> per_tag;  // heat flowing into the plate through each group
    double imbalance = 0.0;
};

FluxReport boundary_flux_balance(const Mesh& mesh, const TemperatureField& field, const MaterialProps& material,
                                 const BoundaryConditions& bcs);

}  // namespace crackgen

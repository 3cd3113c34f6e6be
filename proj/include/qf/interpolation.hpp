#pragma once

// Per-component interpolation: evaluate a multiplicity-space basis on points
// of the quadrifocal variety and read off the dimension of the vanishing
// subspace; aggregate over the isotypic catalog of one degree.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qf/catalog.hpp"
#include "qf/field.hpp"
#include "qf/hwv.hpp"
#include "qf/tensor.hpp"

namespace qf {

enum class ComponentStatus { pending, done, failed };

std::string to_string(ComponentStatus s);
ComponentStatus component_status_from_string(const std::string& s);

struct ComponentResult {
    MultiPartition shape;
    std::uint64_t ring_multiplicity = 0;   // m
    std::uint64_t ideal_multiplicity = 0;  // k
    int orbit_size = 0;
    std::uint64_t contribution = 0;        // orbit * k * prod dims
    std::uint64_t points_used = 0;
    std::uint64_t modulus = 0;
    std::uint64_t seed = 0;
    ComponentStatus status = ComponentStatus::pending;
    std::string error;
    double seconds = 0;  // wall time; kept out of the deterministic report
};

struct DegreeReport {
    int degree = 0;
    std::uint64_t modulus = 0;
    std::uint64_t seed = 0;
    std::uint64_t points_factor = 2;
    std::vector<ComponentResult> components;

    std::uint64_t ideal_dimension() const;
    bool complete() const;
    const ComponentResult* find(const MultiPartition& shape) const;
};

nlohmann::json to_json(const ComponentResult& c);
ComponentResult component_from_json(const nlohmann::json& j);
/// Deterministic report: no timings.
nlohmann::json to_json(const DegreeReport& r);
DegreeReport report_from_json(const nlohmann::json& j);

struct RunConfig {
    int degree = 3;
    std::uint64_t modulus = ModularField::default_modulus;
    std::uint64_t seed = 1;
    std::uint64_t points_factor = 2;  // points per component = points_factor * m + 8
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint_dir;
    std::string run_id;  // defaults to one derived from the other fields
    std::optional<std::filesystem::path> basis_cache_dir;
    std::uint64_t filling_budget = UINT64_MAX;
};

std::string default_run_id(const RunConfig& c);

/// Seed for one component, independent of scheduling order.
std::uint64_t component_seed(std::uint64_t run_seed, int degree, const MultiPartition& shape);

/// m - rank of the m x |points| evaluation matrix. Throws std::invalid_argument
/// if the basis size differs from m or there are fewer than 2m points.
std::uint64_t component_ideal_multiplicity(const MultiPartition& shape, const std::vector<SparsePolynomial>& basis,
                                           const std::vector<ModularTensor>& points, const ModularField& f);
std::uint64_t component_ideal_multiplicity(const MultiplicityBasis& basis, std::uint64_t m,
                                           const std::vector<ModularTensor>& points, const ModularField& f);

/// Basis, points and kernel dimension for one catalog entry.
ComponentResult compute_component(const IsotypicComponent& c, const RunConfig& config);

struct Progress {
    std::size_t done = 0;
    std::size_t total = 0;
    double elapsed = 0;
    double remaining_estimate = 0;
    const ComponentResult* last = nullptr;
};

/// Runs the whole catalog of config.degree. Failed components are recorded,
/// never fatal. With a checkpoint directory every finished component is
/// persisted at once and reused on the next run with the same modulus, seed
/// and points factor.
DegreeReport ideal_dimension(const RunConfig& config, const std::function<void(const Progress&)>& progress = {});

/// Checkpoint store for one run: <dir>/<run_id>/manifest.json plus one file
/// per component. Writes go through a temporary file and a rename.
class CheckpointStore {
public:
    CheckpointStore(std::filesystem::path dir, const RunConfig& config);

    /// Drops stored results whose manifest disagrees with the config.
    void open();
    std::optional<ComponentResult> load(const MultiPartition& shape) const;
    void store(const ComponentResult& r) const;
    const std::filesystem::path& path() const noexcept { return root_; }

private:
    std::filesystem::path root_;
    nlohmann::json manifest_;
};

/// Shapes whose k differs between two reports of the same degree.
std::vector<MultiPartition> disagreeing_components(const DegreeReport& a, const DegreeReport& b);

/// Unconditional check over the rationals: exact evaluations at integer
/// quadrifocal points give the kernel; each kernel vector is then shown to
/// vanish identically on a dense family of camera tuples.
struct ExactComponentResult {
    MultiPartition shape;
    std::uint64_t ring_multiplicity = 0;
    std::uint64_t kernel_dimension = 0;  // over Q at the sample points; an upper bound for k
    std::uint64_t certified = 0;         // kernel vectors proven to vanish on the variety
    std::uint64_t grid_points = 0;
    bool verified() const { return certified == kernel_dimension; }
};

ExactComponentResult verify_component_exact(const IsotypicComponent& c, const MultiplicityBasis& basis,
                                            std::uint64_t seed);

/// True if p vanishes at Q(C_1, C_2, C_3, (I|0)) identically in the entries
/// of C_j = (N_j | z_j), N_j upper unitriangular. For a highest weight vector
/// this is the same as vanishing on the variety. Decided exactly by evaluation
/// on a unisolvent integer grid; throws std::invalid_argument unless p is a
/// highest weight vector.
bool vanishes_on_variety_exact(const SparsePolynomial& p, std::uint64_t* grid_points = nullptr);

}  // namespace qf

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qf/catalog.hpp"
#include "qf/interpolation.hpp"
#include "qf/mingen.hpp"
#include "qf/multiview.hpp"

using namespace qf;
namespace fs = std::filesystem;

namespace {

MultiPartition mp(Partition a, Partition b, Partition c, Partition d) {
    return MultiPartition(std::array<Partition, 4>{a, b, c, d});
}

const IsotypicComponent& find(const std::vector<IsotypicComponent>& cat, const MultiPartition& s) {
    for (const auto& c : cat)
        if (c.shape == s) return c;
    throw std::out_of_range(s.to_string());
}

std::vector<ModularTensor> variety_points(const ModularField& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ModularTensor> pts(n);
    for (auto& q : pts) q = random_quadrifocal_point(f, rng);
    return pts;
}

std::vector<ModularTensor> generic_points(const ModularField& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ModularTensor> pts(n);
    for (auto& q : pts) q = random_tensor(f, rng);
    return pts;
}

RunConfig config(int d, std::uint64_t seed = 1) {
    RunConfig c;
    c.degree = d;
    c.seed = seed;
    return c;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) { fs::remove_all(path); }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<fs::path> component_files(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.path().filename().string().rfind("comp-", 0) == 0) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("component examples in degree 3") {
    const ModularField f;
    const auto cat = isotypic_catalog(3);
    const auto& det = find(cat, mp({3}, {3}, {1, 1, 1}, {1, 1, 1}));
    const auto& row = find(cat, mp({3}, {3}, {3}, {3}));
    const auto pts = variety_points(f, 20, 5);
    CHECK(component_ideal_multiplicity(multiplicity_basis(det.shape, 1, f, 2), 1, pts, f) == 1);
    CHECK(component_ideal_multiplicity(multiplicity_basis(row.shape, 1, f, 2), 1, pts, f) == 0);
    const auto polys = basis_polynomials(multiplicity_basis(det.shape, 1, f, 2));
    CHECK(component_ideal_multiplicity(det.shape, polys, pts, f) == 1);
}

TEST_CASE("generic tensors satisfy no equations") {
    const ModularField f;
    for (int d = 2; d <= 4; ++d)
        for (const auto& c : isotypic_catalog(d)) {
            const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 9);
            const auto pts = generic_points(f, 2 * c.ring_multiplicity + 8, 100 + d);
            CHECK_MESSAGE(component_ideal_multiplicity(b, c.ring_multiplicity, pts, f) == 0, c.shape.to_string());
        }
}

TEST_CASE("argument checks") {
    const ModularField f;
    const auto s = mp({3}, {3}, {1, 1, 1}, {1, 1, 1});
    const auto polys = basis_polynomials(multiplicity_basis(s, 1, f, 2));
    CHECK_THROWS_AS(component_ideal_multiplicity(s, {}, variety_points(f, 4, 1), f), std::invalid_argument);
    CHECK_THROWS_AS(component_ideal_multiplicity(s, polys, variety_points(f, 1, 1), f), std::invalid_argument);
    auto c = config(3);
    c.workers = 0;
    CHECK_THROWS_AS(ideal_dimension(c), std::invalid_argument);
    CHECK_THROWS_AS(ideal_dimension(config(0)), std::invalid_argument);
}

TEST_CASE("more points never enlarge the kernel") {
    const ModularField f;
    for (const auto& c : isotypic_catalog(4)) {
        const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 9);
        const auto pts = variety_points(f, 2 * c.ring_multiplicity + 8, 77);
        std::uint64_t prev = c.ring_multiplicity;
        for (std::size_t n = 2 * c.ring_multiplicity; n <= pts.size(); ++n) {
            const std::vector<ModularTensor> sub(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n));
            const auto k = component_ideal_multiplicity(b, c.ring_multiplicity, sub, f);
            CHECK(k <= prev);
            prev = k;
        }
    }
}

TEST_CASE("graded dimensions in degrees 3 to 5") {
    const auto r3 = ideal_dimension(config(3));
    CHECK(r3.complete());
    CHECK(r3.ideal_dimension() == 600);
    const auto r4 = ideal_dimension(config(4));
    CHECK(r4.ideal_dimension() == 48600);
    CHECK(r4.ideal_dimension() == 81 * r3.ideal_dimension());
    const auto r5 = ideal_dimension(config(5));
    CHECK(r5.ideal_dimension() == 1993977);
    CHECK(r5.ideal_dimension() - 3321 * r3.ideal_dimension() == 1377);
    for (const auto& r : {r3, r4, r5}) {
        std::uint64_t sum = 0;
        for (const auto& c : r.components) {
            CHECK(c.status == ComponentStatus::done);
            CHECK(c.ideal_multiplicity <= c.ring_multiplicity);
            CHECK(c.points_used == 2 * c.ring_multiplicity + 8);
            CHECK(c.contribution == module_dimension(c.shape, c.ideal_multiplicity));
            sum += c.contribution;
        }
        CHECK(sum == r.ideal_dimension());
    }
    CHECK(r3.find(mp({3}, {3}, {1, 1, 1}, {1, 1, 1}))->ideal_multiplicity == 1);
    CHECK(r3.find(mp({3}, {3}, {3}, {3}))->ideal_multiplicity == 0);
}

TEST_CASE("two primes agree") {
    for (int d = 3; d <= 5; ++d) {
        auto a = config(d, 3);
        auto b = config(d, 4);
        b.modulus = 2147483629;
        const auto ra = ideal_dimension(a), rb = ideal_dimension(b);
        CHECK(disagreeing_components(ra, rb).empty());
        CHECK(ra.ideal_dimension() == rb.ideal_dimension());
    }
}

TEST_CASE("reports do not depend on the number of workers") {
    auto one = config(4, 8);
    auto three = config(4, 8);
    three.workers = 3;
    CHECK(to_json(ideal_dimension(one)) == to_json(ideal_dimension(three)));
}

TEST_CASE("report json round trip") {
    const auto r = ideal_dimension(config(3));
    const auto j = to_json(r);
    CHECK(j.at("ideal_dimension") == 600);
    CHECK(j.at("complete") == true);
    CHECK_FALSE(j.at("components").at(0).contains("seconds"));
    const auto back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.ideal_dimension() == 600);
    auto bad = j;
    bad["components"][0]["k"] = 99;
    CHECK_THROWS(report_from_json(bad));
}

TEST_CASE("component seeds") {
    const auto s = mp({3}, {3}, {1, 1, 1}, {1, 1, 1});
    CHECK(component_seed(1, 3, s) == component_seed(1, 3, s));
    CHECK(component_seed(1, 3, s) != component_seed(2, 3, s));
    CHECK(component_seed(1, 3, s) != component_seed(1, 3, mp({3}, {3}, {3}, {3})));
    CHECK(component_status_from_string(to_string(ComponentStatus::failed)) == ComponentStatus::failed);
    CHECK_THROWS(component_status_from_string("bogus"));
}

TEST_CASE("interrupted runs resume to the same report") {
    TempDir tmp("qf-test-resume");
    auto c = config(4, 5);
    c.checkpoint_dir = tmp.path;
    const auto full = to_json(ideal_dimension(c));
    auto files = component_files(tmp.path);
    REQUIRE(files.size() == isotypic_catalog(4).size());
    // a run killed halfway leaves only some components behind
    for (std::size_t i = 0; i < files.size(); i += 2) fs::remove(files[i]);
    std::size_t fresh = 0;
    const auto resumed = ideal_dimension(c, [&](const Progress&) { ++fresh; });
    CHECK(fresh == (files.size() + 1) / 2);
    CHECK(to_json(resumed) == full);

    // stored results are reused, not recomputed
    std::size_t calls = 0;
    const auto again = ideal_dimension(c, [&](const Progress&) { ++calls; });
    CHECK(calls == 0);
    CHECK(to_json(again) == full);
}

TEST_CASE("changing seed or modulus invalidates checkpoints") {
    TempDir tmp("qf-test-invalidate");
    auto c = config(3, 5);
    c.checkpoint_dir = tmp.path;
    c.run_id = "fixed";
    ideal_dimension(c);
    std::size_t calls = 0;
    auto count = [&](const Progress&) { ++calls; };
    ideal_dimension(c, count);
    CHECK(calls == 0);

    c.seed = 6;
    ideal_dimension(c, count);
    CHECK(calls == isotypic_catalog(3).size());

    calls = 0;
    c.modulus = 2147483629;
    ideal_dimension(c, count);
    CHECK(calls == isotypic_catalog(3).size());

    calls = 0;
    c.points_factor = 3;
    const auto r = ideal_dimension(c, count);
    CHECK(calls == isotypic_catalog(3).size());
    CHECK(r.ideal_dimension() == 600);
    for (const auto& comp : r.components) CHECK(comp.points_used == 3 * comp.ring_multiplicity + 8);
}

TEST_CASE("corrupt checkpoints are recomputed") {
    TempDir tmp("qf-test-corrupt");
    auto c = config(3, 5);
    c.checkpoint_dir = tmp.path;
    const auto full = to_json(ideal_dimension(c));
    const auto files = component_files(tmp.path);
    std::ofstream(files[0]) << "{\"partitions\": [[3],";
    std::ofstream(files[1]) << "{}";
    std::size_t calls = 0;
    const auto r = ideal_dimension(c, [&](const Progress&) { ++calls; });
    CHECK(calls == 2);
    CHECK(to_json(r) == full);
    std::ifstream is(files[0]);
    CHECK(nlohmann::json::parse(is).contains("partitions"));
}

TEST_CASE("failed components are recorded, not fatal") {
    auto c = config(4, 5);
    c.filling_budget = 2;
    const auto r = ideal_dimension(c);
    std::size_t failed = 0;
    for (const auto& comp : r.components)
        if (comp.status == ComponentStatus::failed) {
            ++failed;
            CHECK(comp.error.find("filling budget insufficient") != std::string::npos);
        }
    CHECK(failed > 0);
    CHECK_FALSE(r.complete());
    CHECK(to_json(r).at("complete") == false);
}

TEST_CASE("exact vanishing test") {
    CHECK(vanishes_on_variety_exact(slice_determinant({2, 3}, {0, 0})));
    CHECK(vanishes_on_variety_exact(slice_determinant({0, 1}, {0, 0})));
    CHECK_FALSE(vanishes_on_variety_exact(SparsePolynomial::variable(tensor_index(0, 0, 0, 0))));
    // not a weight vector
    const auto mixed = SparsePolynomial::variable(0) + SparsePolynomial::variable(1);
    CHECK_THROWS_AS(vanishes_on_variety_exact(mixed), std::invalid_argument);
    // weight vector, not highest
    CHECK_THROWS_AS(vanishes_on_variety_exact(SparsePolynomial::variable(tensor_index(1, 0, 0, 0))),
                    std::invalid_argument);
    std::uint64_t grid = 0;
    vanishes_on_variety_exact(slice_determinant({2, 3}, {0, 0}), &grid);
    CHECK(grid > 0);
}

TEST_CASE("degree 3 holds over the rationals") {
    const ModularField f;
    std::uint64_t dim = 0;
    for (const auto& c : isotypic_catalog(3)) {
        const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 21);
        const auto r = verify_component_exact(c, b, 22);
        CHECK_MESSAGE(r.verified(), c.shape.to_string());
        dim += module_dimension(c, r.certified);
    }
    CHECK(dim == 600);
}

TEST_CASE("a degree 4 component holds over the rationals") {
    const ModularField f;
    const auto cat = isotypic_catalog(4);
    const auto& c = find(cat, mp({4}, {4}, {2, 1, 1}, {2, 1, 1}));
    const auto b = multiplicity_basis(c.shape, c.ring_multiplicity, f, 21);
    const auto r = verify_component_exact(c, b, 22);
    CHECK(r.kernel_dimension == 1);
    CHECK(r.verified());
}

#include "qf/interpolation.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "qf/characters.hpp"
#include "qf/matrix.hpp"
#include "qf/multiview.hpp"

namespace qf {

std::string to_string(ComponentStatus s) {
    switch (s) {
        case ComponentStatus::pending:
            return "pending";
        case ComponentStatus::done:
            return "done";
        case ComponentStatus::failed:
            return "failed";
    }
    return "unknown";
}

ComponentStatus component_status_from_string(const std::string& s) {
    if (s == "done") return ComponentStatus::done;
    if (s == "failed") return ComponentStatus::failed;
    if (s == "pending") return ComponentStatus::pending;
    throw std::invalid_argument("unknown component status '" + s + "'");
}

std::uint64_t DegreeReport::ideal_dimension() const {
    std::uint64_t total = 0;
    for (const auto& c : components)
        if (c.status == ComponentStatus::done) total += c.contribution;
    return total;
}

bool DegreeReport::complete() const {
    for (const auto& c : components)
        if (c.status != ComponentStatus::done) return false;
    return true;
}

const ComponentResult* DegreeReport::find(const MultiPartition& shape) const {
    for (const auto& c : components)
        if (c.shape == shape) return &c;
    return nullptr;
}

namespace {

nlohmann::json shape_json(const MultiPartition& s) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : s.parts()) j.push_back(p.parts());
    return j;
}

MultiPartition shape_from_json(const nlohmann::json& j) {
    std::array<Partition, 4> parts;
    for (int i = 0; i < 4; ++i) parts[i] = Partition(j.at(i).get<std::vector<int>>());
    return MultiPartition(parts);
}

}  // namespace

nlohmann::json to_json(const ComponentResult& c) {
    nlohmann::json j{{"partitions", shape_json(c.shape)},
                     {"m", c.ring_multiplicity},
                     {"k", c.ideal_multiplicity},
                     {"orbit", c.orbit_size},
                     {"contribution", c.contribution},
                     {"points", c.points_used},
                     {"status", to_string(c.status)}};
    if (!c.error.empty()) j["error"] = c.error;
    return j;
}

ComponentResult component_from_json(const nlohmann::json& j) {
    ComponentResult c;
    c.shape = shape_from_json(j.at("partitions"));
    c.ring_multiplicity = j.at("m").get<std::uint64_t>();
    c.ideal_multiplicity = j.at("k").get<std::uint64_t>();
    c.orbit_size = j.at("orbit").get<int>();
    c.contribution = j.at("contribution").get<std::uint64_t>();
    c.points_used = j.value("points", std::uint64_t{0});
    c.status = component_status_from_string(j.at("status").get<std::string>());
    c.error = j.value("error", std::string{});
    c.modulus = j.value("modulus", std::uint64_t{0});
    c.seed = j.value("seed", std::uint64_t{0});
    c.seconds = j.value("seconds", 0.0);
    if (c.ideal_multiplicity > c.ring_multiplicity) throw std::invalid_argument("component record with k > m");
    return c;
}

nlohmann::json to_json(const DegreeReport& r) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : r.components) comps.push_back(to_json(c));
    return {{"degree", r.degree},
            {"modulus", r.modulus},
            {"seed", r.seed},
            {"points_factor", r.points_factor},
            {"components", comps},
            {"complete", r.complete()},
            {"ideal_dimension", r.ideal_dimension()}};
}

DegreeReport report_from_json(const nlohmann::json& j) {
    DegreeReport r;
    r.degree = j.at("degree").get<int>();
    r.modulus = j.at("modulus").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.points_factor = j.value("points_factor", std::uint64_t{2});
    for (const auto& c : j.at("components")) {
        auto cr = component_from_json(c);
        cr.modulus = r.modulus;
        cr.seed = r.seed;
        r.components.push_back(std::move(cr));
    }
    return r;
}

std::string default_run_id(const RunConfig& c) {
    return "d" + std::to_string(c.degree) + "-p" + std::to_string(c.modulus) + "-s" + std::to_string(c.seed) + "-f" +
           std::to_string(c.points_factor);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t component_seed(std::uint64_t run_seed, int degree, const MultiPartition& shape) {
    std::uint64_t h = splitmix(run_seed ^ splitmix(static_cast<std::uint64_t>(degree)));
    for (char ch : shape.key()) h = splitmix(h ^ static_cast<unsigned char>(ch));
    return h;
}

namespace {

std::uint64_t kernel_dimension(const ModularField& f, std::uint64_t m, const DenseMatrix<std::uint64_t>& evals) {
    return m - rank(f, evals);
}

void check_sizes(std::size_t basis_size, std::uint64_t m, std::size_t points) {
    if (basis_size != m)
        throw std::invalid_argument("component_ideal_multiplicity: basis has " + std::to_string(basis_size) +
                                    " elements, expected " + std::to_string(m));
    if (points < 2 * m) throw std::invalid_argument("component_ideal_multiplicity: fewer than 2m points");
}

}  // namespace

std::uint64_t component_ideal_multiplicity(const MultiPartition& shape, const std::vector<SparsePolynomial>& basis,
                                           const std::vector<ModularTensor>& points, const ModularField& f) {
    const std::uint64_t m = kronecker_multiplicity(shape);
    check_sizes(basis.size(), m, points.size());
    DenseMatrix<std::uint64_t> evals(m, points.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) evals(i, j) = evaluate(basis[i], f, points[j]);
    return kernel_dimension(f, m, evals);
}

std::uint64_t component_ideal_multiplicity(const MultiplicityBasis& basis, std::uint64_t m,
                                           const std::vector<ModularTensor>& points, const ModularField& f) {
    check_sizes(basis.fillings.size(), m, points.size());
    DenseMatrix<std::uint64_t> evals(m, points.size());
    for (std::size_t i = 0; i < basis.fillings.size(); ++i) {
        FillingEvaluator ev(basis.fillings[i], f);
        for (std::size_t j = 0; j < points.size(); ++j) evals(i, j) = ev(points[j]);
    }
    return kernel_dimension(f, m, evals);
}

ComponentResult compute_component(const IsotypicComponent& c, const RunConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    ComponentResult r;
    r.shape = c.shape;
    r.ring_multiplicity = c.ring_multiplicity;
    r.orbit_size = c.orbit_size;
    r.modulus = config.modulus;
    r.seed = config.seed;
    try {
        const ModularField f(config.modulus);
        const std::uint64_t m = c.ring_multiplicity;
        const std::uint64_t cseed = component_seed(config.seed, config.degree, c.shape);
        MultiplicityBasis basis;
        std::optional<std::pair<MultiplicityBasis, std::vector<SparsePolynomial>>> cached;
        if (config.basis_cache_dir) cached = load_basis_cache(*config.basis_cache_dir, c.shape);
        if (cached && cached->first.fillings.size() == m) {
            basis = std::move(cached->first);
        } else {
            basis = multiplicity_basis(c.shape, m, f, splitmix(cseed), config.filling_budget);
            if (config.basis_cache_dir) store_basis_cache(*config.basis_cache_dir, basis, basis_polynomials(basis));
        }
        const std::uint64_t n = config.points_factor * m + 8;
        std::mt19937_64 rng(cseed);
        std::vector<ModularTensor> pts(n);
        for (auto& p : pts) p = random_quadrifocal_point(f, rng);
        r.ideal_multiplicity = m == 0 ? 0 : component_ideal_multiplicity(basis, m, pts, f);
        r.points_used = n;
        r.contribution = module_dimension(c, r.ideal_multiplicity);
        r.status = ComponentStatus::done;
    } catch (const std::exception& e) {
        r.status = ComponentStatus::failed;
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ---- checkpoints ------------------------------------------------------------

CheckpointStore::CheckpointStore(std::filesystem::path dir, const RunConfig& config)
    : root_(std::move(dir) / (config.run_id.empty() ? default_run_id(config) : config.run_id)) {
    manifest_ = {{"degree", config.degree},
                 {"modulus", config.modulus},
                 {"seed", config.seed},
                 {"points_factor", config.points_factor}};
}

namespace {

void write_atomically(const std::filesystem::path& path, const std::string& text) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        os << text;
        os.flush();
        if (!os) throw std::runtime_error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path component_file(const std::filesystem::path& root, const MultiPartition& shape) {
    return root / ("comp-" + shape.key() + ".json");
}

}  // namespace

void CheckpointStore::open() {
    std::filesystem::create_directories(root_);
    const auto mpath = root_ / "manifest.json";
    bool stale = true;
    if (std::ifstream is(mpath); is) {
        try {
            stale = nlohmann::json::parse(is) != manifest_;
        } catch (const std::exception&) {
            stale = true;
        }
    }
    if (stale) {
        for (const auto& e : std::filesystem::directory_iterator(root_))
            if (e.path().filename().string().rfind("comp-", 0) == 0) std::filesystem::remove(e.path());
        write_atomically(mpath, manifest_.dump(2));
    }
}

std::optional<ComponentResult> CheckpointStore::load(const MultiPartition& shape) const {
    std::ifstream is(component_file(root_, shape));
    if (!is) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(is);
        auto r = component_from_json(j);
        if (r.shape != shape || r.modulus != manifest_["modulus"].get<std::uint64_t>() ||
            r.seed != manifest_["seed"].get<std::uint64_t>() || r.status != ComponentStatus::done)
            return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void CheckpointStore::store(const ComponentResult& r) const {
    auto j = to_json(r);
    j["modulus"] = r.modulus;
    j["seed"] = r.seed;
    j["seconds"] = r.seconds;
    write_atomically(component_file(root_, r.shape), j.dump());
}

// ---- the degree driver ------------------------------------------------------

DegreeReport ideal_dimension(const RunConfig& config, const std::function<void(const Progress&)>& progress) {
    if (config.degree < 1) throw std::invalid_argument("ideal_dimension: degree must be positive");
    if (config.workers < 1) throw std::invalid_argument("ideal_dimension: at least one worker");
    ModularField check(config.modulus);
    (void)check;

    const auto catalog = isotypic_catalog(config.degree);
    {
        mpz_class expected;
        mpz_bin_uiui(expected.get_mpz_t(), 80 + config.degree, config.degree);
        if (catalog_total_dimension(catalog) != expected)
            throw std::logic_error("isotypic catalog fails the dimension check");
    }

    DegreeReport report;
    report.degree = config.degree;
    report.modulus = config.modulus;
    report.seed = config.seed;
    report.points_factor = config.points_factor;
    report.components.resize(catalog.size());

    std::optional<CheckpointStore> store;
    if (config.checkpoint_dir) {
        store.emplace(*config.checkpoint_dir, config);
        store->open();
    }

    std::vector<std::size_t> todo;
    Progress prog;
    prog.total = catalog.size();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        std::optional<ComponentResult> old;
        if (store) old = store->load(catalog[i].shape);
        if (old && old->ring_multiplicity == catalog[i].ring_multiplicity) {
            report.components[i] = std::move(*old);
            ++prog.done;
        } else {
            report.components[i].shape = catalog[i].shape;
            report.components[i].ring_multiplicity = catalog[i].ring_multiplicity;
            report.components[i].orbit_size = catalog[i].orbit_size;
            todo.push_back(i);
        }
    }
    // Largest components first so the tail of the run stays short.
    std::stable_sort(todo.begin(), todo.end(), [&](std::size_t a, std::size_t b) {
        return catalog[a].ring_multiplicity > catalog[b].ring_multiplicity;
    });

    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::pair<std::size_t, ComponentResult>> finished;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size()) return;
            auto r = compute_component(catalog[todo[t]], config);
            {
                std::lock_guard lock(mu);
                finished.emplace_back(todo[t], std::move(r));
            }
            cv.notify_one();
        }
    };
    const unsigned n_workers = std::min<unsigned>(config.workers, std::max<std::size_t>(todo.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);

    double work_done = 0, work_left = 0;
    for (auto i : todo) work_left += static_cast<double>(catalog[i].ring_multiplicity + 1);
    for (std::size_t received = 0; received < todo.size(); ++received) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return !finished.empty(); });
        auto [idx, r] = std::move(finished.front());
        finished.pop_front();
        lock.unlock();
        if (store && r.status == ComponentStatus::done) store->store(r);
        const double w = static_cast<double>(catalog[idx].ring_multiplicity + 1);
        work_done += w;
        work_left -= w;
        report.components[idx] = std::move(r);
        ++prog.done;
        prog.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        prog.remaining_estimate = work_done > 0 ? prog.elapsed * work_left / work_done : 0;
        prog.last = &report.components[idx];
        if (progress) progress(prog);
    }
    for (auto& t : pool) t.join();
    return report;
}

std::vector<MultiPartition> disagreeing_components(const DegreeReport& a, const DegreeReport& b) {
    std::vector<MultiPartition> out;
    for (const auto& c : a.components) {
        const auto* o = b.find(c.shape);
        if (!o || o->status != ComponentStatus::done || c.status != ComponentStatus::done ||
            o->ideal_multiplicity != c.ideal_multiplicity)
            out.push_back(c.shape);
    }
    for (const auto& c : b.components)
        if (!a.find(c.shape)) out.push_back(c.shape);
    return out;
}

// ---- exact verification -----------------------------------------------------

namespace {

using i128 = __int128;

// All a in N^n with |a| <= d.
std::vector<std::vector<int>> simplex_lattice(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[i] = v;
            rec(i + 1, left - v);
        }
        a[i] = 0;
    };
    rec(0, d);
    return out;
}

using IntCamera = std::array<std::array<std::int64_t, 4>, 3>;

// (N | z) with N upper unitriangular: params u12, u13, u23, z1, z2, z3.
IntCamera unitriangular_camera(std::int64_t u12, std::int64_t u13, std::int64_t u23, std::int64_t z1, std::int64_t z2,
                               std::int64_t z3) {
    return {{{1, u12, u13, z1}, {0, 1, u23, z2}, {0, 0, 1, z3}}};
}

std::int64_t det3(const std::array<std::int64_t, 4>& a, const std::array<std::int64_t, 4>& b,
                  const std::array<std::int64_t, 4>& c, int skip) {
    int idx[3], n = 0;
    for (int r = 0; r < 4; ++r)
        if (r != skip) idx[n++] = r;
    auto e = [&](const std::array<std::int64_t, 4>& v, int i) { return v[idx[i]]; };
    return e(a, 0) * (e(b, 1) * e(c, 2) - e(b, 2) * e(c, 1)) - e(a, 1) * (e(b, 0) * e(c, 2) - e(b, 2) * e(c, 0)) +
           e(a, 2) * (e(b, 0) * e(c, 1) - e(b, 1) * e(c, 0));
}

// Q for cameras (C1, C2, C3, (I|0)); the last column of each minor is the unit
// vector e_l, so the minor is a signed 3x3 minor of the first three columns.
std::array<std::int64_t, kTensorSize> tensor_with_fixed_last(const IntCamera& c1, const IntCamera& c2,
                                                           const IntCamera& c3) {
    std::array<std::int64_t, kTensorSize> q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    // e_l in the last column: cofactor sign (-1)^(l+1) for 0-based row l.
                    const std::int64_t m = det3(c1[i], c2[j], c3[k], l);
                    q[tensor_index(i, j, k, l)] = (l % 2 == 0) ? -m : m;
                }
    return q;
}

bool is_weight_vector(const SparsePolynomial& p) {
    const int d = p.degree();
    std::optional<std::array<int, 12>> w;
    for (const auto& [k, c] : p.terms()) {
        std::array<int, 12> cur{};
        for (int v : SparsePolynomial::unpack(k, d))
            for (int m = 0; m < 4; ++m) ++cur[3 * m + mode_index(v, m)];
        if (!w) w = cur;
        if (*w != cur) return false;
    }
    return true;
}

}  // namespace

bool vanishes_on_variety_exact(const SparsePolynomial& p, std::uint64_t* grid_points) {
    if (!is_weight_vector(p) || !is_highest_weight(p))
        throw std::invalid_argument("vanishes_on_variety_exact: not a highest weight vector");
    const int d = p.degree();
    if (grid_points) *grid_points = 0;
    if (p.is_zero()) return true;

    // Camera 1 carries the torus and scaling normalizations u12 = u23 = z1 = 1.
    const auto lat3 = simplex_lattice(3, d);
    const auto lat6 = simplex_lattice(6, d);
    double coef_norm = 0;
    for (const auto& [k, c] : p.terms()) coef_norm += std::fabs(static_cast<double>(c));
    const double log_coef = std::log2(coef_norm);

    std::vector<IntCamera> cams1, cams6;
    for (const auto& a : lat3) cams1.push_back(unitriangular_camera(1, a[0], 1, 1, a[1], a[2]));
    for (const auto& a : lat6) cams6.push_back(unitriangular_camera(a[0], a[1], a[2], a[3], a[4], a[5]));

    std::uint64_t count = 0;
    for (const auto& c2 : cams6)
        for (const auto& c3 : cams6)
            for (const auto& c1 : cams1) {
                const auto q = tensor_with_fixed_last(c1, c2, c3);
                std::int64_t qmax = 1;
                for (auto v : q) qmax = std::max<std::int64_t>(qmax, v < 0 ? -v : v);
                if (log_coef + d * std::log2(static_cast<double>(qmax)) > 120)
                    throw std::overflow_error("vanishes_on_variety_exact: evaluation exceeds 128 bits");
                i128 acc = 0;
                for (const auto& [k, c] : p.terms()) {
                    i128 v = c;
                    auto rest = k;
                    for (int j = 0; j < d; ++j) {
                        v *= q[rest & 127];
                        rest >>= 7;
                    }
                    acc += v;
                }
                ++count;
                if (acc != 0) {
                    if (grid_points) *grid_points = count;
                    return false;
                }
            }
    if (grid_points) *grid_points = count;
    return true;
}

ExactComponentResult verify_component_exact(const IsotypicComponent& c, const MultiplicityBasis& basis,
                                            std::uint64_t seed) {
    ExactComponentResult out;
    out.shape = c.shape;
    out.ring_multiplicity = c.ring_multiplicity;
    const std::uint64_t m = c.ring_multiplicity;
    if (basis.fillings.size() != m) throw std::invalid_argument("verify_component_exact: basis size differs from m");
    if (m == 0) return out;

    const auto polys = basis_polynomials(basis);
    const RationalField q;
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 * m + 8;
    DenseMatrix<mpq_class> evals(n, m);  // rows: points, so the right kernel is the vanishing subspace
    for (std::size_t j = 0; j < n; ++j) {
        const auto pt = random_integer_quadrifocal_point(rng, 5);
        for (std::size_t i = 0; i < m; ++i) evals(j, i) = evaluate(polys[i], pt);
    }
    const auto ker = kernel_basis(q, evals);
    out.kernel_dimension = ker.cols();
    for (std::size_t col = 0; col < ker.cols(); ++col) {
        mpz_class den = 1;
        for (std::size_t i = 0; i < m; ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), ker(i, col).get_den_mpz_t());
        SparsePolynomial f(c.shape.degree());
        for (std::size_t i = 0; i < m; ++i) {
            mpq_class v = ker(i, col) * den;
            mpz_class z = v.get_num();
            if (z == 0) continue;
            if (!z.fits_slong_p()) throw std::overflow_error("verify_component_exact: kernel entry too large");
            f = f + scale(polys[i], z.get_si());
        }
        std::uint64_t pts = 0;
        if (vanishes_on_variety_exact(f, &pts)) ++out.certified;
        out.grid_points += pts;
    }
    return out;
}

}  // namespace qf

#include "qf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qf/catalog.hpp"
#include "qf/grassmannian.hpp"
#include "qf/interpolation.hpp"
#include "qf/mingen.hpp"
#include "qf/multiview.hpp"

namespace qf::cli {

namespace {

using nlohmann::json;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_artifact(const std::string& path, const json& j, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    const std::filesystem::path p(path);
    if (std::filesystem::exists(p) && !std::filesystem::is_regular_file(p)) {
        // devices and pipes cannot be replaced by a rename
        std::ofstream os(p);
        os << j.dump(2) << '\n';
        if (!os) throw Failure("cannot write " + path);
        return;
    }
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const auto tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw Failure("cannot write " + path);
        os << j.dump(2) << '\n';
        if (!os) throw Failure("cannot write " + path);
    }
    std::filesystem::rename(tmp, p);
}

json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Failure("cannot read " + path);
    try {
        return json::parse(is);
    } catch (const std::exception& e) {
        throw Failure(path + ": " + e.what());
    }
}

json shape_json(const MultiPartition& s) {
    json j = json::array();
    for (const auto& p : s.parts()) j.push_back(p.parts());
    return j;
}

std::string timestamp() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string format_seconds(double s) {
    std::ostringstream os;
    if (s < 120)
        os << std::fixed << std::setprecision(1) << s << "s";
    else if (s < 7200)
        os << std::fixed << std::setprecision(1) << s / 60 << "min";
    else
        os << std::fixed << std::setprecision(1) << s / 3600 << "h";
    return os.str();
}

void check_modulus(std::uint64_t p) {
    try {
        ModularField f(p);
    } catch (const std::invalid_argument& e) {
        throw Failure(std::string("invalid modulus: ") + e.what());
    }
}

int cmd_decompose(int degree, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto catalog = isotypic_catalog(degree);
    json list = json::array();
    std::uint64_t max_m = 0;
    for (const auto& c : catalog) {
        list.push_back({{"partitions", shape_json(c.shape)},
                        {"multiplicity", c.ring_multiplicity},
                        {"orbit_size", c.orbit_size},
                        {"dims", c.factor_dims()}});
        max_m = std::max(max_m, c.ring_multiplicity);
    }
    mpz_class expected;
    mpz_bin_uiui(expected.get_mpz_t(), 80 + degree, degree);
    const auto total = catalog_total_dimension(catalog);
    write_artifact(out_path, list, out);
    err << "degree " << degree << ": " << catalog.size() << " orbit representatives, max multiplicity " << max_m
        << ", total dimension " << total.get_str() << (total == expected ? " (= C(80+d,d))" : " (MISMATCH)") << '\n';
    return total == expected ? 0 : 1;
}

int cmd_sample(std::uint64_t seed, std::uint64_t count, std::uint64_t modulus, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    check_modulus(modulus);
    const ModularField f(modulus);
    std::mt19937_64 rng(seed);
    json pts = json::array();
    for (std::uint64_t i = 0; i < count; ++i) pts.push_back(random_quadrifocal_point(f, rng).entries);
    write_artifact(out_path, {{"modulus", modulus}, {"seed", seed}, {"count", count}, {"points", pts}}, out);
    err << "sampled " << count << " quadrifocal tensors mod " << modulus << '\n';
    return 0;
}

void write_csv(const std::string& path, const DegreeReport& r) {
    std::ofstream os(path);
    if (!os) throw Failure("cannot write " + path);
    os << "partitions,m,k,orbit,contribution,status\n";
    for (const auto& c : r.components)
        os << '"' << c.shape.to_string() << "\"," << c.ring_multiplicity << ',' << c.ideal_multiplicity << ','
           << c.orbit_size << ',' << c.contribution << ',' << to_string(c.status) << '\n';
    os << "\"total\",,,," << r.ideal_dimension() << ',' << (r.complete() ? "done" : "partial") << '\n';
}

struct IdealArgs {
    int degree = 3;
    std::uint64_t modulus = ModularField::default_modulus;
    std::uint64_t seed = 1;
    std::uint64_t points_factor = 2;
    unsigned workers = 0;
    std::string checkpoint_dir;
    std::string resume;
    bool allow_long = false;
    bool exact = false;
    std::string out;
    std::string csv;
    std::string basis_cache;
    bool quiet = false;
};

int cmd_ideal(const IdealArgs& a, std::ostream& out, std::ostream& err) {
    check_modulus(a.modulus);
    if (a.degree < 1) throw Failure("degree must be positive");
    if (a.points_factor < 2) throw Failure("points factor must be at least 2");
    if (a.degree >= 7 && !a.allow_long) {
        err << "refusing degree " << a.degree << " without --allow-long: " << isotypic_catalog(a.degree).size()
            << " components, estimated " << format_seconds(estimated_seconds(a.degree)) << " on one core\n";
        return 2;
    }
    if (a.exact && a.degree > 4) throw Failure("--exact is available up to degree 4");

    RunConfig cfg;
    cfg.degree = a.degree;
    cfg.modulus = a.modulus;
    cfg.seed = a.seed;
    cfg.points_factor = a.points_factor;
    cfg.workers = a.workers ? a.workers : std::max(1u, std::thread::hardware_concurrency());
    std::string dir = a.checkpoint_dir;
    if (dir.empty())
        if (const char* env = std::getenv("QF_CHECKPOINT_DIR")) dir = env;
    if (!a.resume.empty() && dir.empty()) throw Failure("--resume needs --checkpoint-dir or QF_CHECKPOINT_DIR");
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !std::filesystem::is_directory(dir)) throw Failure("checkpoint dir not writable: " + dir);
        const auto probe = std::filesystem::path(dir) / ".probe";
        std::ofstream(probe) << "";
        if (!std::filesystem::exists(probe)) throw Failure("checkpoint dir not writable: " + dir);
        std::filesystem::remove(probe);
        cfg.checkpoint_dir = dir;
    }
    cfg.run_id = a.resume;
    if (!a.basis_cache.empty()) cfg.basis_cache_dir = a.basis_cache;

    err << "degree " << a.degree << ", modulus " << a.modulus << ", seed " << a.seed << ", " << cfg.workers
        << " worker(s), estimate " << format_seconds(estimated_seconds(a.degree)) << '\n';
    const auto start = timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    auto report = ideal_dimension(cfg, [&](const Progress& p) {
        if (a.quiet) return;
        err << "[" << p.done << "/" << p.total << "] " << p.last->shape.to_string() << " m=" << p.last->ring_multiplicity
            << " k=" << p.last->ideal_multiplicity << " " << to_string(p.last->status) << "  elapsed "
            << format_seconds(p.elapsed) << ", remaining ~" << format_seconds(p.remaining_estimate) << '\n';
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json j = to_json(report);
    if (a.exact) {
        const ModularField f(a.modulus);
        json ex = json::array();
        std::uint64_t exact_dim = 0;
        bool all = true;
        for (const auto& c : isotypic_catalog(a.degree)) {
            const auto cseed = component_seed(a.seed, a.degree, c.shape);
            const auto basis = multiplicity_basis(c.shape, c.ring_multiplicity, f, cseed);
            const auto r = verify_component_exact(c, basis, cseed ^ 0x5bd1e995ULL);
            all = all && r.verified();
            exact_dim += module_dimension(c, r.certified);
            if (r.kernel_dimension)
                ex.push_back({{"partitions", shape_json(c.shape)},
                              {"kernel_dimension", r.kernel_dimension},
                              {"certified", r.certified},
                              {"grid_points", r.grid_points}});
        }
        j["exact"] = {{"verified", all}, {"ideal_dimension", exact_dim}, {"components", ex}};
        err << "exact verification over Q: " << (all ? "all kernel vectors certified" : "NOT certified")
            << ", dimension " << exact_dim << '\n';
    }
    write_artifact(a.out, j, out);
    if (!a.out.empty() && a.out != "-" && std::filesystem::is_regular_file(a.out)) {
        json meta{{"started", start},
                  {"finished", timestamp()},
                  {"seconds", secs},
                  {"workers", cfg.workers},
                  {"component_seconds", json::array()}};
        for (const auto& c : report.components)
            meta["component_seconds"].push_back({{"shape", c.shape.key()}, {"seconds", c.seconds}});
        write_artifact(a.out + ".meta.json", meta, out);
    }
    if (!a.csv.empty()) write_csv(a.csv, report);
    std::size_t failed = 0;
    for (const auto& c : report.components) failed += c.status != ComponentStatus::done;
    err << "dim I_" << a.degree << " = " << report.ideal_dimension() << (report.complete() ? "" : " (incomplete)")
        << " in " << format_seconds(secs) << '\n';
    return failed ? 1 : 0;
}

int cmd_mingen(int degree, const std::string& prev, const std::string& curr, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    if (prev.empty() || curr.empty()) throw Failure("mingen needs --prev and --curr reports");
    const auto p = report_from_json(read_json(prev));
    const auto c = report_from_json(read_json(curr));
    if (c.degree != degree) throw Failure("--curr report has degree " + std::to_string(c.degree));
    if (p.degree != degree - 1) throw Failure("--prev report has degree " + std::to_string(p.degree));
    const auto ex = excess_test(p, c);
    write_artifact(out_path, to_json(ex), out);
    for (const auto& e : ex.positive())
        err << "  " << e.shape.to_string() << " excess " << e.excess << " (orbit " << e.orbit_size << ", dim "
            << e.dimension << ")\n";
    err << "necessary minimal generators in degree " << degree << ": at least " << ex.total_dimension()
        << (ex.partial ? " (partial)" : "") << '\n';
    return 0;
}

int cmd_cubics(bool check, std::uint64_t n_points, std::uint64_t modulus, std::uint64_t seed, bool with_rank,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    check_modulus(modulus);
    const auto basis = contraction_cubics();
    const auto polys = basis.all();
    json j{{"count", basis.size()}, {"slice_determinants", basis.slice_determinant_count()}};
    json groups = json::array();
    for (int g = 0; g < 6; ++g) groups.push_back({{"modes", {basis.pairs[g][0] + 1, basis.pairs[g][1] + 1}},
                                                  {"count", basis.groups[g].size()}});
    j["groups"] = groups;
    int code = 0;
    if (check) {
        const ModularField f(modulus);
        std::mt19937_64 rng(seed);
        std::uint64_t nonvanishing = 0;
        for (std::uint64_t i = 0; i < n_points; ++i) {
            const auto q = random_quadrifocal_point(f, rng);
            for (const auto& p : polys) nonvanishing += evaluate(p, f, q) != 0;
        }
        j["check"] = {{"modulus", modulus}, {"seed", seed}, {"points", n_points}, {"nonvanishing", nonvanishing}};
        err << "cubics at " << n_points << " quadrifocal points mod " << modulus << ": "
            << (nonvanishing ? "FAILED" : "all vanish") << '\n';
        if (nonvanishing) code = 1;
        if (with_rank) {
            std::vector<ModularTensor> gen(polys.size() + 700);
            for (auto& t : gen) t = random_tensor(f, rng);
            const auto r = evaluation_rank(polys, gen, f);
            j["check"]["rank_on_generic_tensors"] = r;
            err << "rank on " << gen.size() << " generic tensors: " << r << '\n';
            if (r != polys.size()) code = 1;
        }
    }
    write_artifact(out_path, j, out);
    err << basis.size() << " contraction cubics, " << basis.slice_determinant_count() << " slice determinants\n";
    return code;
}

int cmd_gr(long r, long n, std::ostream& out) {
    const auto dim = grassmannian_dim(r, n);
    const auto deg = grassmannian_degree(r, n);
    out << "Gr(" << r << "," << n << "): dim " << dim << ", degree " << deg.get_str() << '\n';
    return 0;
}

}  // namespace

double estimated_seconds(int degree) {
    // Operation count of basis extraction plus kernel step, calibrated to one
    // core at roughly 1e8 inner-loop steps per second.
    double ops = 0;
    for (const auto& c : isotypic_catalog(degree)) {
        double triples = 1;
        for (int m = 0; m < 3; ++m)
            for (int h : c.shape[m].column_heights()) triples *= (h == 3 ? 6 : h == 2 ? 2 : 1);
        const double m = static_cast<double>(c.ring_multiplicity);
        ops += triples * degree * (2 * m + 8) * (4 * m + 1);
    }
    return ops / 1e8;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quadrifocal ideal toolkit", "qf"};
    app.require_subcommand(1);

    int dec_degree = 3;
    std::string dec_out;
    auto* dec = app.add_subcommand("decompose", "isotypic catalog of S^d as JSON");
    dec->add_option("--degree,-d", dec_degree)->required()->check(CLI::Range(1, 12));
    dec->add_option("--out,-o", dec_out);

    std::uint64_t s_seed = 1, s_count = 1, s_mod = ModularField::default_modulus;
    std::string s_out;
    auto* sam = app.add_subcommand("sample", "random quadrifocal tensors");
    sam->add_option("--seed", s_seed);
    sam->add_option("--count", s_count);
    sam->add_option("--modulus", s_mod);
    sam->add_option("--out,-o", s_out);

    IdealArgs ia;
    auto* ide = app.add_subcommand("ideal", "dimension of the degree-d part of the ideal");
    ide->add_option("--degree,-d", ia.degree)->required()->check(CLI::Range(1, 9));
    ide->add_option("--modulus", ia.modulus);
    ide->add_option("--seed", ia.seed);
    ide->add_option("--points-factor", ia.points_factor);
    ide->add_option("--workers", ia.workers);
    ide->add_option("--checkpoint-dir", ia.checkpoint_dir);
    ide->add_option("--resume", ia.resume, "run id inside the checkpoint dir");
    ide->add_option("--basis-cache", ia.basis_cache);
    ide->add_flag("--allow-long", ia.allow_long);
    ide->add_flag("--exact", ia.exact, "re-verify kernels over Q (degree <= 4)");
    ide->add_flag("--quiet", ia.quiet);
    ide->add_option("--out,-o", ia.out);
    ide->add_option("--csv", ia.csv);

    int mg_degree = 0;
    std::string mg_prev, mg_curr, mg_out;
    auto* mg = app.add_subcommand("mingen", "excess test against the previous degree");
    mg->add_option("--degree,-d", mg_degree)->required();
    mg->add_option("--prev", mg_prev);
    mg->add_option("--curr", mg_curr);
    mg->add_option("--out,-o", mg_out);

    bool cu_check = false, cu_rank = false;
    std::uint64_t cu_points = 100, cu_mod = ModularField::default_modulus, cu_seed = 1;
    std::string cu_out;
    auto* cu = app.add_subcommand("cubics", "the 600 contraction cubics");
    cu->add_flag("--check", cu_check);
    cu->add_flag("--rank", cu_rank);
    cu->add_option("--points", cu_points);
    cu->add_option("--modulus", cu_mod);
    cu->add_option("--seed", cu_seed);
    cu->add_option("--out,-o", cu_out);

    long gr_r = 0, gr_n = 0;
    auto* gr = app.add_subcommand("gr", "dimension and degree of Gr(r, n)");
    gr->add_option("r", gr_r)->required();
    gr->add_option("n", gr_n)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    try {
        if (*dec) return cmd_decompose(dec_degree, dec_out, out, err);
        if (*sam) return cmd_sample(s_seed, s_count, s_mod, s_out, out, err);
        if (*ide) return cmd_ideal(ia, out, err);
        if (*mg) return cmd_mingen(mg_degree, mg_prev, mg_curr, mg_out, out, err);
        if (*cu) return cmd_cubics(cu_check, cu_points, cu_mod, cu_seed, cu_rank, cu_out, out, err);
        if (*gr) return cmd_gr(gr_r, gr_n, out);
    } catch (const std::exception& e) {
        err << "qf: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace qf::cli

#include "qf/multiview.hpp"

namespace qf {

Camera<std::uint64_t> random_camera(const ModularField& f, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < kCameraRetryCap; ++attempt) {
        Camera<std::uint64_t> a;
        for (auto& row : a.rows)
            for (auto& v : row) v = uniform_residue(rng, f.modulus());
        if (is_full_rank(f, a)) return a;
    }
    throw CameraError("random_camera: rejection cap reached");
}

Camera<mpq_class> random_integer_camera(std::mt19937_64& rng, int bound) {
    const RationalField q;
    for (int attempt = 0; attempt < kCameraRetryCap; ++attempt) {
        Camera<mpq_class> a;
        for (auto& row : a.rows)
            for (auto& v : row) v = static_cast<long>(uniform_int(rng, -bound, bound));
        if (is_full_rank(q, a)) return a;
    }
    throw CameraError("random_integer_camera: rejection cap reached");
}

ModularTensor random_quadrifocal_point(const ModularField& f, std::mt19937_64& rng) {
    std::array<Camera<std::uint64_t>, 4> cams;
    for (auto& a : cams) a = random_camera(f, rng);
    return quadrifocal_from_cameras<ModularField>(f, cams);
}

ModularTensor random_quadrifocal_point(const ModularField& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_quadrifocal_point(f, rng);
}

ModularTensor random_tensor(const ModularField& f, std::mt19937_64& rng) {
    ModularTensor t;
    for (auto& v : t.entries) v = uniform_residue(rng, f.modulus());
    return t;
}

QuadTensor<mpq_class> random_integer_quadrifocal_point(std::mt19937_64& rng, int bound) {
    const RationalField q;
    std::array<Camera<mpq_class>, 4> cams;
    for (auto& a : cams) a = random_integer_camera(rng, bound);
    return quadrifocal_from_cameras<RationalField>(q, cams);
}

}  // namespace qf

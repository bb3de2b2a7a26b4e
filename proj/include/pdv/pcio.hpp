#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pdv/box.hpp"
#include "pdv/core.hpp"

namespace pdv {

// One LiDAR return: position plus auxiliary channels (intensity, elongation, ...).
struct Point {
    Vec3 pos;
    std::vector<double> aux;
};

// Column-of-structs point cloud; aux channels are flattened with stride aux_dim.
class PointCloud {
public:
    explicit PointCloud(std::size_t aux_dim = 0) : aux_dim_(aux_dim) {}

    std::size_t size() const { return xyz_.size(); }
    std::size_t aux_dim() const { return aux_dim_; }
    bool empty() const { return xyz_.empty(); }

    const Vec3& pos(std::size_t i) const { return xyz_[i]; }
    std::span<const double> aux(std::size_t i) const {
        return {aux_.data() + i * aux_dim_, aux_dim_};
    }
    const std::vector<Vec3>& positions() const { return xyz_; }

    void add(const Vec3& p, std::span<const double> aux = {}) {
        if (!p.finite())
            throw RecordError("point has non-finite coordinate", xyz_.size());
        if (aux.size() != aux_dim_)
            throw RecordError("aux length " + std::to_string(aux.size()) + " != aux_dim " +
                                  std::to_string(aux_dim_),
                              xyz_.size());
        for (double v : aux)
            if (!std::isfinite(v))
                throw RecordError("point has non-finite aux value", xyz_.size());
        xyz_.push_back(p);
        aux_.insert(aux_.end(), aux.begin(), aux.end());
    }

    void reserve(std::size_t n) {
        xyz_.reserve(n);
        aux_.reserve(n * aux_dim_);
    }

private:
    std::size_t aux_dim_;
    std::vector<Vec3> xyz_;
    std::vector<double> aux_;
};

// Axis-aligned detection range, half-open per axis: [min, max).
struct RangeSpec {
    Vec3 min;
    Vec3 max;

    bool valid() const {
        return min.finite() && max.finite() && min.x < max.x && min.y < max.y && min.z < max.z;
    }
    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x < max.x && p.y >= min.y && p.y < max.y && p.z >= min.z &&
               p.z < max.z;
    }
};

namespace detail {

inline float f32_from_le(const unsigned char* b) {
    std::uint32_t u = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
                      (static_cast<std::uint32_t>(b[2]) << 16) |
                      (static_cast<std::uint32_t>(b[3]) << 24);
    return std::bit_cast<float>(u);
}

inline void f32_to_le(float f, unsigned char* b) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(f);
    b[0] = static_cast<unsigned char>(u & 0xff);
    b[1] = static_cast<unsigned char>((u >> 8) & 0xff);
    b[2] = static_cast<unsigned char>((u >> 16) & 0xff);
    b[3] = static_cast<unsigned char>((u >> 24) & 0xff);
}

}  // namespace detail

// KITTI velodyne format: packed little-endian float32 (x, y, z, intensity), no header.
inline PointCloud read_kitti_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    constexpr std::size_t record = 16;
    const std::size_t whole = bytes.size() / record * record;
    if (whole != bytes.size())
        throw FormatError("truncated KITTI record at byte offset " + std::to_string(whole), whole);

    PointCloud cloud(1);
    cloud.reserve(bytes.size() / record);
    for (std::size_t off = 0; off < bytes.size(); off += record) {
        const std::size_t idx = off / record;
        Vec3 p{detail::f32_from_le(&bytes[off]), detail::f32_from_le(&bytes[off + 4]),
               detail::f32_from_le(&bytes[off + 8])};
        double intensity = detail::f32_from_le(&bytes[off + 12]);
        if (!p.finite() || !std::isfinite(intensity))
            throw RecordError("non-finite value in record " + std::to_string(idx), idx);
        cloud.add(p, std::span<const double>(&intensity, 1));
    }
    return cloud;
}

inline void write_kitti_bin(const PointCloud& cloud, const std::string& path) {
    if (cloud.aux_dim() != 1)
        throw ContractError("KITTI binary format carries exactly one aux channel");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    unsigned char rec[16];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.pos(i);
        detail::f32_to_le(static_cast<float>(p.x), rec);
        detail::f32_to_le(static_cast<float>(p.y), rec + 4);
        detail::f32_to_le(static_cast<float>(p.z), rec + 8);
        detail::f32_to_le(static_cast<float>(cloud.aux(i)[0]), rec + 12);
        out.write(reinterpret_cast<const char*>(rec), sizeof rec);
    }
}

// CSV point format: header "x,y,z,<aux...>", one point per line, '.' decimal separator.
inline PointCloud read_csv_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing CSV header", 0);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> cols;
    std::stringstream hs(line);
    for (std::string tok; std::getline(hs, tok, ',');) cols.push_back(tok);
    if (cols.size() < 3 || cols[0] != "x" || cols[1] != "y" || cols[2] != "z")
        throw FormatError("CSV header must start with x,y,z", 0);
    const std::size_t aux_dim = cols.size() - 3;

    PointCloud cloud(aux_dim);
    std::vector<double> vals(cols.size());
    std::vector<double> aux(aux_dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string tok;
        std::size_t n = 0;
        while (std::getline(ls, tok, ',')) {
            if (n >= vals.size())
                throw FormatError("too many fields on line " + std::to_string(line_no), line_no);
            std::size_t used = 0;
            try {
                vals[n] = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw FormatError("bad number '" + tok + "' on line " + std::to_string(line_no),
                                  line_no);
            }
            if (used != tok.size())
                throw FormatError("bad number '" + tok + "' on line " + std::to_string(line_no),
                                  line_no);
            ++n;
        }
        if (n != vals.size())
            throw FormatError("expected " + std::to_string(vals.size()) + " fields on line " +
                                  std::to_string(line_no),
                              line_no);
        for (std::size_t a = 0; a < aux_dim; ++a) aux[a] = vals[3 + a];
        cloud.add({vals[0], vals[1], vals[2]}, aux);
    }
    return cloud;
}

inline void write_csv_points(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "x,y,z";
    static const char* known[] = {"intensity", "elongation"};
    for (std::size_t a = 0; a < cloud.aux_dim(); ++a) {
        if (a < 2)
            out << ',' << known[a];
        else
            out << ",aux" << a;
    }
    out << '\n';
    char buf[512];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.pos(i);
        int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", p.x, p.y, p.z);
        out.write(buf, n);
        for (double v : cloud.aux(i)) {
            n = std::snprintf(buf, sizeof buf, ",%.17g", v);
            out.write(buf, n);
        }
        out << '\n';
    }
}

// Keeps exactly the points with min <= coord < max on all axes; order preserved.
inline PointCloud crop_to_range(const PointCloud& cloud, const RangeSpec& range) {
    if (!range.valid()) throw ContractError("crop_to_range: invalid RangeSpec");
    PointCloud out(cloud.aux_dim());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (range.contains(cloud.pos(i))) out.add(cloud.pos(i), cloud.aux(i));
    return out;
}

// Minimal spinning-scanner model: rays from the origin on a fixed
// elevation/azimuth grid, first box-surface hit wins. Enough to reproduce the
// fewer-points-with-distance trend; no ground plane, no multi-return.
struct ScanPattern {
    double elevation_min = -0.4363;  // about -25 degrees
    double elevation_max = 0.0349;   // about +2 degrees
};

inline PointCloud synth_lidar_scan(int beams, double az_step,
                                   std::span<const OrientedBox> targets, std::uint64_t seed,
                                   const ScanPattern& pattern = {}) {
    if (beams < 1) throw ContractError("synth_lidar_scan: beams must be >= 1");
    if (!(az_step > 0.0)) throw ContractError("synth_lidar_scan: az_step must be > 0");

    PointCloud cloud(1);
    std::mt19937_64 rng(splitmix64(seed));
    const Vec3 origin{0.0, 0.0, 0.0};
    for (int b = 0; b < beams; ++b) {
        const double elev =
            beams == 1 ? pattern.elevation_min
                       : pattern.elevation_min + (pattern.elevation_max - pattern.elevation_min) *
                                                     static_cast<double>(b) / (beams - 1);
        const double ce = std::cos(elev), se = std::sin(elev);
        for (double az = 0.0; az < 2.0 * kPi; az += az_step) {
            Vec3 dir{ce * std::cos(az), ce * std::sin(az), se};
            double best = std::numeric_limits<double>::infinity();
            bool hit = false;
            for (const OrientedBox& box : targets) {
                if (auto t = ray_box_entry(origin, dir, box); t && *t < best) {
                    best = *t;
                    hit = true;
                }
            }
            // One RNG draw per candidate ray keeps the stream independent of targets.
            const double intensity = uniform01(rng);
            if (hit) cloud.add(origin + dir * best, std::span<const double>(&intensity, 1));
        }
    }
    return cloud;
}

}  // namespace pdv

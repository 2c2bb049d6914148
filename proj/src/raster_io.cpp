#include "jmpt/raster_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "raster payloads are little-endian; big-endian hosts need a swap");

namespace jmpt {
namespace {

using nlohmann::json;

struct RasterHeader {
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  Eigen::Index bands = 0;
  std::string dtype;
};

std::filesystem::path payload_path(const std::filesystem::path& header_path) {
  std::filesystem::path p = header_path;
  p.replace_extension(".bin");
  return p;
}

RasterHeader read_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open raster header " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError("unparsable raster header " + path.string() + ": " +
                    e.what());
  }
  RasterHeader h;
  try {
    h.height = doc.at("height").get<Eigen::Index>();
    h.width = doc.at("width").get<Eigen::Index>();
    h.bands = doc.at("bands").get<Eigen::Index>();
    h.dtype = doc.at("dtype").get<std::string>();
    const auto interleave = doc.at("interleave").get<std::string>();
    const auto byte_order = doc.at("byte_order").get<std::string>();
    if (interleave != "bsq") {
      throw DataError("unsupported interleave '" + interleave + "' in " +
                      path.string());
    }
    if (byte_order != "little") {
      throw DataError("unsupported byte_order '" + byte_order + "' in " +
                      path.string());
    }
  } catch (const json::exception& e) {
    throw DataError("raster header " + path.string() +
                    " is missing a required field: " + e.what());
  }
  if (h.height < 1 || h.width < 1 || h.bands < 1) {
    throw DataError("raster header " + path.string() +
                    " has non-positive dimensions");
  }
  if (h.dtype != "f32" && h.dtype != "u8") {
    throw DataError("unsupported dtype '" + h.dtype + "' in " + path.string());
  }
  return h;
}

std::vector<char> read_payload(const std::filesystem::path& path,
                               std::size_t expected_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open raster payload " + path.string());
  }
  in.seekg(0, std::ios::end);
  const auto actual = static_cast<std::size_t>(in.tellg());
  if (actual != expected_bytes) {
    throw DataError("payload size mismatch in " + path.string() + ": expected " +
                    std::to_string(expected_bytes) + " bytes, found " +
                    std::to_string(actual));
  }
  in.seekg(0, std::ios::beg);
  std::vector<char> bytes(expected_bytes);
  in.read(bytes.data(), static_cast<std::streamsize>(expected_bytes));
  if (!in) {
    throw DataError("short read from raster payload " + path.string());
  }
  return bytes;
}

void write_header(const RasterHeader& h, const std::filesystem::path& path) {
  json doc;
  doc["height"] = h.height;
  doc["width"] = h.width;
  doc["bands"] = h.bands;
  doc["dtype"] = h.dtype;
  doc["interleave"] = "bsq";
  doc["byte_order"] = "little";
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write raster header " + path.string());
  }
  out << doc.dump() << "\n";
}

void write_payload(const char* bytes, std::size_t n,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write raster payload " + path.string());
  }
  out.write(bytes, static_cast<std::streamsize>(n));
  if (!out) {
    throw DataError("short write to raster payload " + path.string());
  }
}

}  // namespace

HyperCube load_cube(const std::filesystem::path& header_path) {
  const RasterHeader h = read_header(header_path);
  if (h.dtype != "f32") {
    throw DataError("cube payloads must be dtype f32, header " +
                    header_path.string() + " declares " + h.dtype);
  }
  const std::size_t n =
      static_cast<std::size_t>(h.height) * h.width * h.bands;
  const std::vector<char> bytes =
      read_payload(payload_path(header_path), n * sizeof(float));

  HyperCube cube = make_cube(h.height, h.width, h.bands);
  const Eigen::Index plane = h.height * h.width;
  for (Eigen::Index b = 0; b < h.bands; ++b) {
    for (Eigen::Index p = 0; p < plane; ++p) {
      float v;
      std::memcpy(&v, bytes.data() + (b * plane + p) * sizeof(float),
                  sizeof(float));
      if (!std::isfinite(v)) {
        throw DataError("non-finite value in " + header_path.string() +
                        " at (row " + std::to_string(p / h.width) + ", col " +
                        std::to_string(p % h.width) + ", band " +
                        std::to_string(b) + ")");
      }
      cube.values(p, b) = static_cast<double>(v);
    }
  }
  return cube;
}

void save_cube(const HyperCube& cube, const std::filesystem::path& header_path) {
  validate(cube);
  const Eigen::Index plane = cube.height * cube.width;
  std::vector<char> bytes(static_cast<std::size_t>(plane) * cube.bands *
                          sizeof(float));
  for (Eigen::Index b = 0; b < cube.bands; ++b) {
    for (Eigen::Index p = 0; p < plane; ++p) {
      const float v = static_cast<float>(cube.values(p, b));
      std::memcpy(bytes.data() + (b * plane + p) * sizeof(float), &v,
                  sizeof(float));
    }
  }
  write_header({cube.height, cube.width, cube.bands, "f32"}, header_path);
  write_payload(bytes.data(), bytes.size(), payload_path(header_path));
}

BinaryMask load_mask(const std::filesystem::path& header_path) {
  const RasterHeader h = read_header(header_path);
  if (h.dtype != "u8") {
    throw DataError("mask payloads must be dtype u8, header " +
                    header_path.string() + " declares " + h.dtype);
  }
  if (h.bands != 1) {
    throw DataError("masks are single-band, header " + header_path.string() +
                    " declares " + std::to_string(h.bands) + " bands");
  }
  const std::size_t n = static_cast<std::size_t>(h.height) * h.width;
  const std::vector<char> bytes = read_payload(payload_path(header_path), n);

  BinaryMask mask = make_mask(h.height, h.width);
  for (Eigen::Index r = 0; r < h.height; ++r) {
    for (Eigen::Index c = 0; c < h.width; ++c) {
      mask.labels(r, c) =
          static_cast<std::uint8_t>(bytes[r * h.width + c]);
    }
  }
  validate(mask);
  return mask;
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& header_path) {
  validate(mask);
  std::vector<char> bytes(static_cast<std::size_t>(mask.height) * mask.width);
  for (Eigen::Index r = 0; r < mask.height; ++r) {
    for (Eigen::Index c = 0; c < mask.width; ++c) {
      bytes[r * mask.width + c] = static_cast<char>(mask.labels(r, c));
    }
  }
  write_header({mask.height, mask.width, 1, "u8"}, header_path);
  write_payload(bytes.data(), bytes.size(), payload_path(header_path));
}

}  // namespace jmpt

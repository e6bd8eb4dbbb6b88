#pragma once

// Binary model file, all integers and floats little-endian:
//
//   "SUNGKA-DQN"                     10 bytes, no terminator
//   u32 version                       = 1
//   u32 dim_count                     number of layer dims (layers + 1)
//   u32 dims[dim_count]
//   per layer: f64 weight[out][in]   row-major
//              f64 bias[out]
//   u32 crc32                         CRC-32 (IEEE) of every preceding byte

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "sungka/network.h"

namespace sungka {

inline constexpr char kModelMagic[] = "SUNGKA-DQN";
inline constexpr std::uint32_t kModelVersion = 1;

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> encode_model(const QNetwork& net);
QNetwork decode_model(std::span<const std::uint8_t> bytes);

void save_model(const QNetwork& net, const std::filesystem::path& path);
QNetwork load_model(const std::filesystem::path& path);

}  // namespace sungka

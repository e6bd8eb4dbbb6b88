#include "sungka/model_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <boost/crc.hpp>

namespace sungka {
namespace {

constexpr std::size_t kMagicSize = sizeof(kModelMagic) - 1;
constexpr std::uint32_t kMaxDims = 64;
constexpr std::uint32_t kMaxDim = 1u << 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) throw LoadError(std::string("truncated model file reading ") + what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    return v;
  }
  double f64(const char* what) {
    auto b = take(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_model(const QNetwork& net) {
  std::vector<std::uint8_t> out(kModelMagic, kModelMagic + kMagicSize);
  put_u32(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(net.layer_dims().size()));
  for (int d : net.layer_dims()) put_u32(out, static_cast<std::uint32_t>(d));
  for (const DenseLayer& layer : net.layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) put_f64(out, layer.weight(r, c));
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) put_f64(out, layer.bias[r]);
  }
  put_u32(out, crc32(out));
  return out;
}

QNetwork decode_model(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  auto magic = in.take(kMagicSize, "magic");
  if (std::memcmp(magic.data(), kModelMagic, kMagicSize) != 0) throw LoadError("bad magic");
  const std::uint32_t version = in.u32("version");
  if (version != kModelVersion)
    throw LoadError("unsupported model version " + std::to_string(version));
  const std::uint32_t dim_count = in.u32("layer count");
  if (dim_count < 2 || dim_count > kMaxDims)
    throw LoadError("implausible layer count " + std::to_string(dim_count));
  std::vector<int> dims;
  std::size_t expected_doubles = 0;
  for (std::uint32_t i = 0; i < dim_count; ++i) {
    const std::uint32_t d = in.u32("layer dims");
    if (d == 0 || d > kMaxDim) throw LoadError("implausible layer dim " + std::to_string(d));
    if (!dims.empty()) expected_doubles += static_cast<std::size_t>(d) * (static_cast<std::size_t>(dims.back()) + 1);
    dims.push_back(static_cast<int>(d));
  }
  if (in.remaining() != expected_doubles * 8 + 4)
    throw LoadError("payload size " + std::to_string(in.remaining()) + " does not match layer dims (expected " +
                    std::to_string(expected_doubles * 8 + 4) + ")");

  QNetwork net(dims);
  for (DenseLayer& layer : net.layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = in.f64("weights");
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = in.f64("biases");
  }
  const std::size_t body = in.position();
  const std::uint32_t stored = in.u32("checksum");
  if (stored != crc32(bytes.first(body))) throw LoadError("checksum mismatch");
  if (!net.all_finite()) throw LoadError("model contains non-finite parameters");
  return net;
}

void save_model(const QNetwork& net, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_model(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

QNetwork load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_model(bytes);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

}  // namespace sungka

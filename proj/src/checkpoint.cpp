#include "motionclass/nnet/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace motionclass::nn {
namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint32_t float_bits(float f) { return std::bit_cast<std::uint32_t>(f); }

}  // namespace

void save_checkpoint(const std::filesystem::path& path, Model<float>& model, const Json& metadata) {
  Json params = Json::array();
  for (auto* p : model.parameters()) params.push_back({{"name", p->name}, {"shape", p->value.shape()}});
  const Json header = {{"format", "motionclass-checkpoint"},
                       {"arch", to_json(model.arch())},
                       {"parameters", params},
                       {"metadata", metadata}};
  const std::string text = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out.write("MCNN", 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (auto* p : model.parameters())
    for (Eigen::Index i = 0; i < p->value.size(); ++i) put_u32(out, float_bits(p->value.data()[i]));
}

LoadedModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing checkpoint " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MCNN", 4) != 0) throw std::runtime_error("not a checkpoint: " + path.string());
  const auto version = get_u32(in);
  if (version != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  const auto length = get_u32(in);
  std::string text(length, '\0');
  in.read(text.data(), length);
  const Json header = Json::parse(text);
  LoadedModel loaded{Model<float>(arch_from_json(header.at("arch")), 0), header.value("metadata", Json::object())};
  const auto params = loaded.model.parameters();
  const auto& declared = header.at("parameters");
  if (declared.size() != params.size()) throw std::runtime_error("checkpoint parameter count mismatch");
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (declared[k].at("shape").get<Shape>() != params[k]->value.shape())
      throw std::runtime_error("checkpoint shape mismatch for parameter " + std::to_string(k));
    for (Eigen::Index i = 0; i < params[k]->value.size(); ++i)
      params[k]->value.data()[i] = std::bit_cast<float>(get_u32(in));
  }
  if (!in) throw std::runtime_error("truncated checkpoint " + path.string());
  return loaded;
}

}  // namespace motionclass::nn

#include "motionclass/png_io.hpp"

#include <cstring>
#include <stdexcept>

#include <png.h>

namespace motionclass {
namespace {

std::vector<std::uint8_t> read_raw(const std::filesystem::path& path, png_uint_32 format, int& w, int& h) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw std::runtime_error("cannot read PNG '" + path.string() + "': " + image.message);
  }
  image.format = format;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw std::runtime_error("corrupt PNG '" + path.string() + "': " + msg);
  }
  w = static_cast<int>(image.width);
  h = static_cast<int>(image.height);
  return buffer;
}

void write_raw(const std::filesystem::path& path, png_uint_32 format, int w, int h, const std::uint8_t* data) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, data, 0, nullptr)) {
    throw std::runtime_error("cannot write PNG '" + path.string() + "': " + image.message);
  }
}

}  // namespace

RgbImage read_png(const std::filesystem::path& path) {
  RgbImage out;
  out.pixels = read_raw(path, PNG_FORMAT_RGB, out.width, out.height);
  return out;
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  write_raw(path, PNG_FORMAT_RGB, image.width, image.height, image.pixels.data());
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
  std::vector<std::uint8_t> data(static_cast<std::size_t>(mask.size()));
  for (Eigen::Index i = 0; i < mask.size(); ++i) data[i] = mask.data()[i] ? 255 : 0;
  write_raw(path, PNG_FORMAT_GRAY, static_cast<int>(mask.cols()), static_cast<int>(mask.rows()), data.data());
}

Mask read_mask_png(const std::filesystem::path& path) {
  int w = 0, h = 0;
  auto data = read_raw(path, PNG_FORMAT_GRAY, w, h);
  Mask mask(h, w);
  for (Eigen::Index i = 0; i < mask.size(); ++i) mask.data()[i] = data[i] >= 128;
  return mask;
}

}  // namespace motionclass

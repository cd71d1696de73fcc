#include <png.h>

#include "render.hpp"

namespace zd {
namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void flush_nothing(png_structp) {}

}  // namespace

// RGBA8, no interlacing, no time/text chunks, fixed zlib level: the same tile
// always encodes to the same bytes.
std::vector<uint8_t> encode_png(const ImageTile& tile) {
  if (tile.px_w < 1 || tile.px_h < 1 ||
      tile.pixels.size() != static_cast<size_t>(tile.px_w) * static_cast<size_t>(tile.px_h) * 4) {
    fail(ErrorCode::InvalidArgument, "png: malformed tile");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(ErrorCode::Io, "png: out of memory");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::Io, "png: out of memory");
  }
  std::vector<uint8_t> out;
  std::vector<png_bytep> rows(static_cast<size_t>(tile.px_h));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::Io, "png: encoding failed");
  }
  png_set_write_fn(png, &out, append_bytes, flush_nothing);
  png_set_IHDR(png, info, static_cast<png_uint_32>(tile.px_w), static_cast<png_uint_32>(tile.px_h), 8,
               PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (int j = 0; j < tile.px_h; ++j) {
    rows[static_cast<size_t>(j)] =
        const_cast<png_bytep>(tile.pixels.data() + static_cast<size_t>(j) * static_cast<size_t>(tile.px_w) * 4);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace zd

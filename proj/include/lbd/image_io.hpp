#pragma once

#include <string>

#include "lbd/pipeline.hpp"

namespace lbd {

// 8-bit binary PGM (P5, maxval 255). Values map to [0, 1] as v / 255 on
// read and round(v * 255) on write.
GrayImage read_pgm(const std::string& path);
void write_pgm(const GrayImage& image, const std::string& path);

// Grayscale PNG; color inputs are converted with BT.601 luma weights.
GrayImage read_png(const std::string& path);

// Dispatches on the file's magic bytes (P5 or the PNG signature).
GrayImage load_image(const std::string& path);

} // namespace lbd

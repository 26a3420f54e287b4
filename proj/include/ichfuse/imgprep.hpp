#pragma once

// Slice preprocessing primitives: Otsu thresholding, binary masking,
// foreground cropping, and align-corners bilinear resize. All functions are
// pure; images are value types.

#include <string>
#include <vector>

namespace ichfuse::imgprep {

enum class IntensityRange { EightBit, Unit };  // [0,255] vs [0,1]

struct GrayImage {
    int width = 0;
    int height = 0;
    IntensityRange range = IntensityRange::EightBit;
    std::vector<double> data;  // row-major, height*width

    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
};

GrayImage make_image(int width, int height, IntensityRange range = IntensityRange::EightBit,
                     double fill = 0.0);

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;  // row-major

    bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
};

// Threshold maximizing between-class variance over the 256-bin histogram,
// lowest threshold on ties. A pixel belongs to the foreground when
// intensity >= T. Requires an 8-bit image with at least two distinct values.
int otsu_threshold(const GrayImage& img);

BinaryMask make_mask(const GrayImage& img, double threshold);

// Pixelwise product; masked-out pixels become exactly 0.
GrayImage apply_mask(const GrayImage& img, const BinaryMask& m);

struct Box {
    int x0 = 0, y0 = 0, width = 0, height = 0;
};

// Bounding box of the largest 4-connected mask component (size ties break to
// the component found first in row-major order). Throws on an empty mask.
Box largest_component_bbox(const BinaryMask& m);

GrayImage crop(const GrayImage& img, const Box& box);
GrayImage crop_foreground(const GrayImage& img, const BinaryMask& m);

// Align-corners sampling: corners map to corners exactly; resizing to the
// input size is the identity. An output dimension of 1 samples offset 0.
GrayImage bilinear_resize(const GrayImage& img, int out_w, int out_h);

// 8-bit binary PGM (P5), maxval 255.
GrayImage read_pgm(const std::string& path);
void write_pgm(const GrayImage& img, const std::string& path);
GrayImage pgm_from_bytes(const std::string& bytes);
std::string pgm_to_bytes(const GrayImage& img);

}  // namespace ichfuse::imgprep

/* Copyright 2026 The blurbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Image and annotation file I/O.
//
// Images: PNG (8-bit gray/RGB, non-interlaced; gray+alpha and RGBA are read
// with alpha dropped) and binary PGM/PPM. Annotations: one comma-separated
// "x,y,w,h" line per frame, 0-based pixel coordinates (OTB convention).

#ifndef BLURBENCH_IO_HPP_
#define BLURBENCH_IO_HPP_

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blurbench/core.hpp"

namespace blurbench {

namespace detail {

inline uint8_t quantize_byte(float v) {
    const double q = round_half_up(std::clamp(static_cast<double>(v), 0.0, 255.0));
    return static_cast<uint8_t>(q);
}

inline void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline uint32_t get_u32_be(const uint8_t* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

inline void append_png_chunk(std::vector<uint8_t>& out, const char type[4],
                             const std::vector<uint8_t>& data) {
    put_u32_be(out, static_cast<uint32_t>(data.size()));
    const size_t type_pos = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uLong crc = ::crc32(0L, Z_NULL, 0);
    crc = ::crc32(crc, out.data() + type_pos, static_cast<uInt>(4 + data.size()));
    put_u32_be(out, static_cast<uint32_t>(crc));
}

inline const uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

inline std::vector<uint8_t> encode_png(const Frame& f) {
    std::vector<uint8_t> out(kPngSignature, kPngSignature + 8);

    std::vector<uint8_t> ihdr;
    put_u32_be(ihdr, static_cast<uint32_t>(f.width));
    put_u32_be(ihdr, static_cast<uint32_t>(f.height));
    ihdr.push_back(8);                                    // bit depth
    ihdr.push_back(f.channels == 1 ? 0 : 2);              // color type
    ihdr.push_back(0);                                    // compression
    ihdr.push_back(0);                                    // filter method
    ihdr.push_back(0);                                    // no interlace
    append_png_chunk(out, "IHDR", ihdr);

    // filter type 0 (None) on every scanline
    const size_t row_bytes = static_cast<size_t>(f.width) * f.channels;
    std::vector<uint8_t> raw((row_bytes + 1) * f.height);
    size_t pos = 0;
    for (int y = 0; y < f.height; ++y) {
        raw[pos++] = 0;
        for (int x = 0; x < f.width; ++x)
            for (int c = 0; c < f.channels; ++c) raw[pos++] = quantize_byte(f.at(x, y, c));
    }

    uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> comp(comp_size);
    if (compress2(comp.data(), &comp_size, raw.data(), static_cast<uLong>(raw.size()),
                  Z_DEFAULT_COMPRESSION) != Z_OK)
        throw std::runtime_error("PNG encode: zlib compression failed");
    comp.resize(comp_size);
    append_png_chunk(out, "IDAT", comp);
    append_png_chunk(out, "IEND", {});
    return out;
}

inline int paeth_predictor(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

inline Frame decode_png(const std::vector<uint8_t>& bytes, const std::string& what) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0)
        throw std::runtime_error(what + ": not a PNG file");

    size_t pos = 8;
    uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = 0, interlace = 0;
    std::vector<uint8_t> idat;
    bool saw_ihdr = false, saw_iend = false;

    while (pos + 8 <= bytes.size() && !saw_iend) {
        const uint32_t len = get_u32_be(&bytes[pos]);
        if (pos + 12 + static_cast<size_t>(len) > bytes.size())
            throw std::runtime_error(what + ": truncated PNG chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const uint8_t* data = &bytes[pos + 8];

        uLong crc = ::crc32(0L, Z_NULL, 0);
        crc = ::crc32(crc, &bytes[pos + 4], 4 + len);
        if (static_cast<uint32_t>(crc) != get_u32_be(&bytes[pos + 8 + len]))
            throw std::runtime_error(what + ": PNG chunk CRC mismatch");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            width = get_u32_be(data);
            height = get_u32_be(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            interlace = data[12];
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || idat.empty()) throw std::runtime_error(what + ": malformed PNG");
    if (bit_depth != 8) throw std::runtime_error(what + ": only 8-bit PNG supported");
    if (interlace != 0) throw std::runtime_error(what + ": interlaced PNG not supported");

    int src_channels;
    switch (color_type) {
        case 0: src_channels = 1; break;  // gray
        case 2: src_channels = 3; break;  // RGB
        case 4: src_channels = 2; break;  // gray + alpha
        case 6: src_channels = 4; break;  // RGBA
        default: throw std::runtime_error(what + ": unsupported PNG color type");
    }
    if (width < 1 || height < 1) throw std::runtime_error(what + ": bad PNG dimensions");

    const size_t row_bytes = static_cast<size_t>(width) * src_channels;
    const size_t raw_size = (row_bytes + 1) * height;
    std::vector<uint8_t> raw(raw_size);
    uLongf dest_len = static_cast<uLongf>(raw_size);
    if (uncompress(raw.data(), &dest_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
        dest_len != raw_size)
        throw std::runtime_error(what + ": PNG inflate failed");

    // undo per-scanline filters in place
    const int bpp = src_channels;  // bytes per pixel at 8-bit depth
    std::vector<uint8_t> prev_row(row_bytes, 0);
    std::vector<uint8_t> cur(row_bytes);
    const int out_channels = (src_channels >= 3) ? 3 : 1;
    Frame out(static_cast<int>(width), static_cast<int>(height), out_channels);
    for (uint32_t y = 0; y < height; ++y) {
        const uint8_t* row = &raw[(row_bytes + 1) * y];
        const uint8_t filter = row[0];
        const uint8_t* src = row + 1;
        for (size_t i = 0; i < row_bytes; ++i) {
            const int a = (i >= static_cast<size_t>(bpp)) ? cur[i - bpp] : 0;
            const int b = prev_row[i];
            const int c = (i >= static_cast<size_t>(bpp)) ? prev_row[i - bpp] : 0;
            int v;
            switch (filter) {
                case 0: v = src[i]; break;
                case 1: v = src[i] + a; break;
                case 2: v = src[i] + b; break;
                case 3: v = src[i] + (a + b) / 2; break;
                case 4: v = src[i] + paeth_predictor(a, b, c); break;
                default: throw std::runtime_error(what + ": bad PNG filter type");
            }
            cur[i] = static_cast<uint8_t>(v & 0xFF);
        }
        for (uint32_t x = 0; x < width; ++x)
            for (int ch = 0; ch < out_channels; ++ch)
                out.at(static_cast<int>(x), static_cast<int>(y), ch) =
                    static_cast<float>(cur[x * src_channels + ch]);
        std::swap(prev_row, cur);
    }
    return out;
}

inline std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return bytes;
}

inline void write_file_bytes(const std::filesystem::path& path,
                             const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// PNM header token reader; skips whitespace and '#' comments.
inline int pnm_next_int(const std::vector<uint8_t>& b, size_t& pos, const std::string& what) {
    while (pos < b.size()) {
        if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else if (std::isspace(b[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    int v = 0;
    bool any = false;
    while (pos < b.size() && std::isdigit(b[pos])) {
        v = v * 10 + (b[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any) throw std::runtime_error(what + ": malformed PNM header");
    return v;
}

inline Frame decode_pnm(const std::vector<uint8_t>& bytes, const std::string& what) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw std::runtime_error(what + ": not a binary PGM/PPM file");
    const int channels = (bytes[1] == '5') ? 1 : 3;
    size_t pos = 2;
    const int w = pnm_next_int(bytes, pos, what);
    const int h = pnm_next_int(bytes, pos, what);
    const int maxval = pnm_next_int(bytes, pos, what);
    if (maxval != 255) throw std::runtime_error(what + ": only maxval 255 supported");
    ++pos;  // single whitespace after maxval
    const size_t need = static_cast<size_t>(w) * h * channels;
    if (pos + need > bytes.size()) throw std::runtime_error(what + ": truncated PNM data");
    Frame out(w, h, channels);
    for (size_t i = 0; i < need; ++i) out.pixels[i] = static_cast<float>(bytes[pos + i]);
    return out;
}

inline std::vector<uint8_t> encode_pnm(const Frame& f) {
    char header[64];
    std::snprintf(header, sizeof(header), "P%c\n%d %d\n255\n", f.channels == 1 ? '5' : '6',
                  f.width, f.height);
    std::vector<uint8_t> out(header, header + std::strlen(header));
    out.reserve(out.size() + f.pixels.size());
    for (float v : f.pixels) out.push_back(quantize_byte(v));
    return out;
}

}  // namespace detail

/// Reads a PNG/PGM/PPM image; the format is detected from the file contents.
inline Frame load_image(const std::filesystem::path& path) {
    const auto bytes = detail::read_file_bytes(path);
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), detail::kPngSignature, 8) == 0)
        return detail::decode_png(bytes, path.string());
    return detail::decode_pnm(bytes, path.string());
}

/// Writes an image; the format follows the file extension (.png/.pgm/.ppm).
/// Pixels are quantized to 8 bits here and nowhere else.
inline void save_image(const std::filesystem::path& path, const Frame& f) {
    const std::string ext = path.extension().string();
    if (ext == ".png") {
        detail::write_file_bytes(path, detail::encode_png(f));
    } else if (ext == ".pgm" || ext == ".ppm") {
        if ((ext == ".pgm") != (f.channels == 1))
            throw std::runtime_error("save_image: channel count does not match " + ext);
        detail::write_file_bytes(path, detail::encode_pnm(f));
    } else {
        throw std::runtime_error("save_image: unsupported extension " + ext);
    }
}

/// Parses one "x,y,w,h" line. Throws on malformed input.
inline BoundingBox parse_annotation_line(const std::string& line) {
    BoundingBox b;
    char extra;
    std::istringstream ss(line);
    char c1, c2, c3;
    if (!(ss >> b.x >> c1 >> b.y >> c2 >> b.w >> c3 >> b.h) || c1 != ',' || c2 != ',' ||
        c3 != ',' || (ss >> extra))
        throw std::runtime_error("unparsable annotation line: '" + line + "'");
    return b;
}

inline std::vector<BoundingBox> load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open annotation file: " + path.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    while (std::getline(in, line)) {
        // tolerate trailing CR and blank trailing lines
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        boxes.push_back(parse_annotation_line(line));
    }
    return boxes;
}

inline void save_annotations(const std::filesystem::path& path,
                             const std::vector<BoundingBox>& boxes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write annotation file: " + path.string());
    char buf[160];
    for (const BoundingBox& b : boxes) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g\n", b.x, b.y, b.w, b.h);
        out << buf;
    }
}

/// Lists the image files of a directory in lexicographic filename order.
inline std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".png" || ext == ".pgm" || ext == ".ppm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    return files;
}

/// Loads a sequence from a frame directory plus an annotation file, pairing
/// frames and boxes by index.
inline Sequence load_sequence(const std::filesystem::path& frame_dir,
                              const std::filesystem::path& annotation_file, double fps = 30.0) {
    const auto files = list_frame_files(frame_dir);
    const auto boxes = load_annotations(annotation_file);
    if (files.size() != boxes.size())
        throw std::runtime_error("annotation count mismatch: " + std::to_string(files.size()) +
                                 " frames vs " + std::to_string(boxes.size()) + " lines");
    if (files.empty()) throw std::runtime_error("empty sequence: " + frame_dir.string());
    Sequence seq;
    seq.fps = fps;
    seq.annotations = boxes;
    seq.frames.reserve(files.size());
    for (const auto& f : files) seq.frames.push_back(load_image(f));
    validate_sequence(seq);
    return seq;
}

/// Writes frames as zero-padded numbered images plus a groundtruth.txt file.
inline void save_sequence(const std::filesystem::path& dir, const Sequence& seq,
                          const std::string& ext = ".png") {
    std::filesystem::create_directories(dir);
    char name[32];
    for (size_t i = 0; i < seq.frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "%06zu%s", i, ext.c_str());
        save_image(dir / name, seq.frames[i]);
    }
    save_annotations(dir / "groundtruth.txt", seq.annotations);
}

}  // namespace blurbench

#endif  // BLURBENCH_IO_HPP_

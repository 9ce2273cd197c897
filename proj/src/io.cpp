#include "axiscope/io.hpp"

#include <array>
#include <streambuf>

#include <zlib.h>

#include "axiscope/ingest.hpp"

namespace axiscope {

namespace {

// gzread passes uncompressed files through unchanged.
class GzBuf : public std::streambuf {
public:
    explicit GzBuf(gzFile f) : f_(f) { gzbuffer(f_, 1 << 17); }
    ~GzBuf() override { gzclose(f_); }
    GzBuf(const GzBuf&) = delete;
    GzBuf& operator=(const GzBuf&) = delete;

protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        int n = gzread(f_, buf_.data(), static_cast<unsigned>(buf_.size()));
        if (n < 0) {
            int err = 0;
            const char* msg = gzerror(f_, &err);
            throw IoError(std::string("decompression failed: ") + (msg ? msg : "unknown error"));
        }
        if (n == 0) return traits_type::eof();
        setg(buf_.data(), buf_.data(), buf_.data() + n);
        return traits_type::to_int_type(*gptr());
    }

private:
    gzFile f_;
    std::array<char, 1 << 16> buf_{};
};

class GzStream : public std::istream {
public:
    explicit GzStream(gzFile f) : std::istream(nullptr), buf_(f) { rdbuf(&buf_); }

private:
    GzBuf buf_;
};

}  // namespace

std::unique_ptr<std::istream> open_input(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) throw IoError("cannot read " + path.string() + ": is a directory");
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open " + path.string());
    return std::make_unique<GzStream>(f);
}

}  // namespace axiscope

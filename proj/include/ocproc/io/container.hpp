#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "ocproc/common/error.hpp"

namespace ocproc::io {

// Little-endian section container:
//   magic "OCPC" | u32 format_version | sections...
//   section: u32 name_len | name | u64 payload_len | payload | u32 crc32
// Section order is preserved, so identical content writes identical bytes.
inline constexpr std::uint32_t kContainerVersion = 1;

std::uint32_t crc32(const std::uint8_t* data, std::size_t len);

class SectionWriter {
  public:
    explicit SectionWriter(std::uint32_t version = kContainerVersion);
    void add(const std::string& name, const void* data, std::size_t len);
    void add_string(const std::string& name, const std::string& text);
    template <class T>
    void add_vector(const std::string& name, const std::vector<T>& v) {
        add(name, v.data(), v.size() * sizeof(T));
    }
    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    void save(const std::string& path) const;

  private:
    std::vector<std::uint8_t> buf_;
};

class SectionReader {
  public:
    explicit SectionReader(std::vector<std::uint8_t> bytes,
                           std::uint32_t expected_version = kContainerVersion);
    static SectionReader load(const std::string& path,
                              std::uint32_t expected_version = kContainerVersion);

    std::uint32_t version() const { return version_; }
    bool has(const std::string& name) const;
    std::vector<std::string> names() const;
    const std::vector<std::uint8_t>& get(const std::string& name) const;
    std::string get_string(const std::string& name) const;
    template <class T>
    std::vector<T> get_vector(const std::string& name) const {
        const std::vector<std::uint8_t>& raw = get(name);
        if (raw.size() % sizeof(T) != 0)
            raise(ErrorKind::format, "section '" + name + "' has a truncated payload");
        std::vector<T> out(raw.size() / sizeof(T));
        std::memcpy(out.data(), raw.data(), raw.size());
        return out;
    }

  private:
    std::uint32_t version_ = 0;
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> sections_;
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace ocproc::io

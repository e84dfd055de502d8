#include "ocproc/io/container.hpp"

#include <cstring>
#include <fstream>

namespace ocproc::io {

namespace {

const char kMagic[4] = {'O', 'C', 'P', 'C'};

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(std::uint8_t(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(std::uint8_t(v >> (8 * i)));
}

struct Cursor {
    const std::uint8_t* p;
    std::size_t left;
    void need(std::size_t n) {
        if (left < n) raise(ErrorKind::format, "truncated container");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
        p += 4;
        left -= 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
        p += 8;
        left -= 8;
        return v;
    }
};

std::uint32_t crc_table_entry(std::uint32_t i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
    return c;
}

}  // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static std::uint32_t table[256];
    static bool init = [] {
        for (std::uint32_t i = 0; i < 256; ++i) table[i] = crc_table_entry(i);
        return true;
    }();
    (void)init;
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

SectionWriter::SectionWriter(std::uint32_t version) {
    buf_.insert(buf_.end(), kMagic, kMagic + 4);
    put_u32(buf_, version);
}

void SectionWriter::add(const std::string& name, const void* data, std::size_t len) {
    put_u32(buf_, std::uint32_t(name.size()));
    buf_.insert(buf_.end(), name.begin(), name.end());
    put_u64(buf_, len);
    const std::uint8_t* d = static_cast<const std::uint8_t*>(data);
    buf_.insert(buf_.end(), d, d + len);
    put_u32(buf_, crc32(d, len));
}

void SectionWriter::add_string(const std::string& name, const std::string& text) {
    add(name, text.data(), text.size());
}

void SectionWriter::save(const std::string& path) const { write_file_bytes(path, buf_); }

SectionReader::SectionReader(std::vector<std::uint8_t> bytes,
                             std::uint32_t expected_version) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        raise(ErrorKind::format, "not a product container (bad magic)");
    Cursor cur{bytes.data() + 4, bytes.size() - 4};
    version_ = cur.u32();
    if (version_ != expected_version)
        raise(ErrorKind::format, "container version " + std::to_string(version_) +
                                     " not supported (reader version " +
                                     std::to_string(expected_version) + ")");
    while (cur.left > 0) {
        std::uint32_t name_len = cur.u32();
        cur.need(name_len);
        std::string name(reinterpret_cast<const char*>(cur.p), name_len);
        cur.p += name_len;
        cur.left -= name_len;
        std::uint64_t payload_len = cur.u64();
        cur.need(payload_len);
        std::vector<std::uint8_t> payload(cur.p, cur.p + payload_len);
        cur.p += payload_len;
        cur.left -= payload_len;
        std::uint32_t stored = cur.u32();
        if (crc32(payload.data(), payload.size()) != stored)
            raise(ErrorKind::format, "checksum mismatch in section '" + name + "'");
        sections_.emplace_back(std::move(name), std::move(payload));
    }
}

SectionReader SectionReader::load(const std::string& path, std::uint32_t expected_version) {
    return SectionReader(read_file_bytes(path), expected_version);
}

bool SectionReader::has(const std::string& name) const {
    for (const auto& [n, v] : sections_)
        if (n == name) return true;
    return false;
}

std::vector<std::string> SectionReader::names() const {
    std::vector<std::string> out;
    for (const auto& [n, v] : sections_) out.push_back(n);
    return out;
}

const std::vector<std::uint8_t>& SectionReader::get(const std::string& name) const {
    for (const auto& [n, v] : sections_)
        if (n == name) return v;
    raise(ErrorKind::format, "container is missing section '" + name + "'");
}

std::string SectionReader::get_string(const std::string& name) const {
    const std::vector<std::uint8_t>& raw = get(name);
    return std::string(raw.begin(), raw.end());
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) raise(ErrorKind::missing_input, "cannot open '" + path + "'");
    f.seekg(0, std::ios::end);
    std::size_t len = std::size_t(f.tellg());
    f.seekg(0);
    std::vector<std::uint8_t> bytes(len);
    f.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!f) raise(ErrorKind::format, "failed reading '" + path + "'");
    return bytes;
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorKind::missing_input, "cannot create '" + path + "'");
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) raise(ErrorKind::format, "failed writing '" + path + "'");
}

}  // namespace ocproc::io

// SPDX-License-Identifier: Apache-2.0

#include "provstamp/bytes.hpp"

#include "provstamp/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace provstamp {

Bytes read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string(), path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(ErrorCode::IoError, "read failed for " + path.string(), path.string());
    return data;
}

void write_file_atomic(const std::filesystem::path& path, ByteView data)
{
    auto dir = path.parent_path();
    if (dir.empty())
        dir = ".";
    std::random_device rd;
    auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));

    auto fail = [&](const std::string& what) {
        std::string reason = std::strerror(errno);
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, what + " " + path.string() + ": " + reason,
                    path.string());
    };

    // Replacement keeps the permission bits of the file it replaces.
    mode_t mode = 0644;
    struct stat st {};
    if (::stat(path.c_str(), &st) == 0)
        mode = st.st_mode & 07777;

    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL, mode);
    if (fd < 0)
        fail("cannot create temporary file for");
    std::size_t written = 0;
    while (written < data.size()) {
        auto n = ::write(fd, data.data() + written, data.size() - written);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            ::close(fd);
            fail("write failed for");
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0) {
        ::close(fd);
        fail("fsync failed for");
    }
    if (::close(fd) != 0)
        fail("close failed for");
    ::chmod(tmp.c_str(), mode);
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail("cannot replace");
}

}  // namespace provstamp
